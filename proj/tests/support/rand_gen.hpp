#pragma once

// Deterministic random generators + the randomized Grassmann property suite,
// shared between the unit tests and the acceptance runner.

#include <optional>
#include <random>
#include <string>

#include "sgc/grassmann.hpp"

namespace sgc::testsupport {

inline Coef random_coef(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 4), im(0, 2);
    Coef c = Coef::frac(num(rng), den(rng));
    if (im(rng) == 0) c = c + Coef::frac(num(rng), den(rng)) * Coef::i();
    return c;
}

// parity: -1 any, 0 even terms only, 1 odd terms only
inline Supernumber random_supernumber(std::mt19937_64& rng, int k, int parity = -1,
                                      bool soul_only = false) {
    std::uniform_int_distribution<int> nterms(1, 4);
    std::uniform_int_distribution<uint64_t> maskd(0, (uint64_t(1) << k) - 1);
    Supernumber s(k);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        uint64_t m = maskd(rng);
        if (parity >= 0 && (std::popcount(m) & 1) != parity) continue;
        if (soul_only && m == 0) continue;
        s = s + Supernumber::term(k, m, random_coef(rng));
    }
    return s;
}

// Acceptance criterion 1 body: exact ring laws, graded commutativity,
// odd-square-zero, body multiplicativity, inverse laws. Returns a failure
// description or nullopt.
inline std::optional<std::string> grassmann_property_suite(int cases, int k, uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto sign_of = [](Grade g) { return g == Grade::Odd ? -1 : 1; };
    for (int it = 0; it < cases; ++it) {
        Supernumber a = random_supernumber(rng, k);
        Supernumber b = random_supernumber(rng, k);
        Supernumber c = random_supernumber(rng, k);

        if (!((a * b) * c == a * (b * c))) return "associativity failed";
        if (!(a * (b + c) == a * b + a * c)) return "left distributivity failed";
        if (!((a + b) * c == a * c + b * c)) return "right distributivity failed";

        Supernumber ae = random_supernumber(rng, k, it % 2);
        Supernumber be = random_supernumber(rng, k, (it / 2) % 2);
        Grade ga = ae.grade(), gb = be.grade();
        if (ga != Grade::Mixed && gb != Grade::Mixed) {
            int sg = (ga == Grade::Odd && gb == Grade::Odd) ? -1 : 1;
            Supernumber rhs = (be * ae).scaled(Coef(sg));
            if (!(ae * be == rhs)) return "graded commutativity failed";
        }

        Supernumber odd = random_supernumber(rng, k, 1);
        if (!(odd * odd).is_zero()) return "odd square not zero";

        // body is multiplicative
        {
            const Coef* pa = a.body_ptr();
            const Coef* pb = b.body_ptr();
            Coef ba = pa ? *pa : Coef::zero(), bb = pb ? *pb : Coef::zero();
            const Coef* pab = (a * b).body_ptr();
            Coef bab = pab ? *pab : Coef::zero();
            if (!(bab == ba * bb)) return "body not multiplicative";
        }

        // inverse laws whenever the body is nonzero
        if (a.body_ptr()) {
            Supernumber inv = invert(a);
            Supernumber one = Supernumber::scalar(k, Coef::one());
            if (!(a * inv == one)) return "right inverse failed";
            if (!(inv * a == one)) return "left inverse failed";
            if (!(invert(inv) == a)) return "invert not involutive";
        }

        // exp(s)*exp(-s) = 1 for even soul-only s
        Supernumber s = random_supernumber(rng, k, 0, true);
        Supernumber es = apply_even_function(FnSym::exp(), s);
        Supernumber ems = apply_even_function(FnSym::exp(), -s);
        if (!(es * ems == Supernumber::scalar(k, Coef::one()))) return "exp(s)exp(-s) != 1";

        (void)sign_of;
    }
    return std::nullopt;
}

}  // namespace sgc::testsupport
