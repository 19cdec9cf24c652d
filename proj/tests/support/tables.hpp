#pragma once

#include <memory>
#include <random>

#include "sgc/components.hpp"
#include "sgc/expr.hpp"
#include "sgc/parser.hpp"

namespace sgc::testsupport {

// Superspace table with a generic even field Phi and a generic odd field Psi,
// both with 4-component expansions, plus a bare odd field H, formal constants
// c (even), eta (odd) and mu (even, invertible).
inline std::unique_ptr<SymbolTable> susy_table() {
    auto tab = std::make_unique<SymbolTable>();
    tab->declare_coord("xp", Parity::Even);
    tab->declare_coord("xm", Parity::Even);
    tab->declare_coord("tp", Parity::Odd);
    tab->declare_coord("tm", Parity::Odd);
    uint16_t all = tab->all_coords_mask();
    uint16_t bos = 0b0011;

    int Phi = tab->declare_field("Phi", Parity::Even, all);
    int p0 = tab->declare_field("phi0", Parity::Even, bos);
    int p1 = tab->declare_field("phi1", Parity::Odd, bos);
    int p2 = tab->declare_field("phi2", Parity::Odd, bos);
    int p3 = tab->declare_field("phi3", Parity::Even, bos);
    tab->set_components(Phi, {p0, p1, p2, p3});

    int Psi = tab->declare_field("Psi", Parity::Odd, all);
    int q0 = tab->declare_field("psi0", Parity::Odd, bos);
    int q1 = tab->declare_field("psi1", Parity::Even, bos);
    int q2 = tab->declare_field("psi2", Parity::Even, bos);
    int q3 = tab->declare_field("psi3", Parity::Odd, bos);
    tab->set_components(Psi, {q0, q1, q2, q3});

    tab->declare_field("H", Parity::Odd, all);
    tab->declare_const("c", Parity::Even);
    tab->declare_const("eta", Parity::Odd);
    tab->declare_const("mu", Parity::Even, true);
    return tab;
}

inline Expr rand_expr(std::mt19937_64& rng, const SymbolTable* tab, bool allow_funcs = true,
                      bool oracle_safe = false) {
    std::uniform_int_distribution<int> nterms(1, 3), nfact(1, 3), pick(0, 11), coefn(-3, 3),
        coefd(1, 3);
    Expr acc = Expr::zero(tab);
    int Phi = *tab->find("Phi"), Psi = *tab->find("Psi"), H = *tab->find("H");
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Expr term = Expr::constant(tab, Coef::frac(coefn(rng), coefd(rng)));
        int m = nfact(rng);
        for (int k = 0; k < m; ++k) {
            switch (pick(rng)) {
                case 0: term = term * Expr::symbol(tab, tab->require("xp")); break;
                case 1: term = term * Expr::symbol(tab, tab->require("tp")); break;
                case 2: term = term * Expr::symbol(tab, tab->require("tm")); break;
                case 3: term = term * Expr::derived(tab, Phi, {1, 0, 0, 0}); break;
                case 4: term = term * Expr::derived(tab, Phi, {0, 0, 1, 0}); break;
                case 5: term = term * Expr::derived(tab, Psi, {0, 0, 0, 0}); break;
                case 6: term = term * Expr::derived(tab, Psi, {0, 1, 0, 1}); break;
                case 7:
                    term = term * (oracle_safe ? Expr::derived(tab, Psi, {1, 0, 1, 0})
                                               : Expr::symbol(tab, H));
                    break;
                case 8: term = term * Expr::symbol(tab, tab->require("eta")); break;
                case 9:
                    if (allow_funcs) {
                        term = term * Expr::func(tab, FnSym::exp(), Expr::symbol(tab, Phi));
                        break;
                    }
                    [[fallthrough]];
                case 10: term = term * Expr::derived(tab, Phi, {0, 0, 1, 1}); break;
                default: term = term * Expr::symbol(tab, Phi); break;
            }
        }
        acc = acc + term;
    }
    return acc;
}

}  // namespace sgc::testsupport
