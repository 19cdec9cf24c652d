#pragma once

#include "sgc/vectorfield.hpp"

namespace sgc {

// Closed-form one-parameter flow of an affine generator. Even generators
// combine coordinate translations, scalings, constant field shifts and 2x2
// linear mixing blocks; odd generators act to first order in a nilpotent odd
// parameter, which is exact.
struct FlowSpec {
    const SymbolTable* tab = nullptr;
    const SuperVectorField* gen = nullptr;
    bool odd = false;

    std::map<int, Rat> coord_scale;  // coordinate symbol -> weight
    std::map<int, Rat> field_scale;
    std::vector<int> coord_translation;  // even coordinates shifted by a constant
    std::map<int, Coef> field_shift;     // field -> amount (times _e)
    struct MixBlock {
        int t, u;      // paired fields (u = -1 for a nilpotent singleton)
        Coef p, q;     // d t = p u, d u = q t
        int pair = 0;  // formal (_C,_S) pair index
    };
    std::vector<MixBlock> mix;
    long denom = 1;  // common denominator of weights and shifts
};

// Reserved formal flow constants, appended to the table on first use:
// _s (unit; one step of the scaling), _x (unit; exp of one shift step),
// _e (even shift parameter), _n (odd parameter), _C0/_S0.. (mixing entries).
void ensure_flow_consts(SymbolTable& tab, int mix_pairs = 0);

FlowSpec derive_flow(const SymbolTable* tab, const SuperVectorField& X);

// The flowed equation expressed in the original symbols.
Expr transform_equation(const Expr& e, const FlowSpec& spec);

// Insertion rule for linear-problem potentials: inverse scale weights on
// coordinates and derived fields (parameter `unit`), forward constant shifts
// (parameter `odd_param`). The D+/D- prefactors are mu^-w(theta+/-) times the
// entries and are applied by the caller.
Expr transform_matrix_entry(const Expr& e, const FlowSpec& spec, int unit_sym, int odd_sym);

struct InvarianceCheck {
    std::string equation;
    std::string status;  // pass | fail | skip
    std::string detail;
};

// Verifies that every flowed equation is an exact linear combination of the
// originals (and, for nilpotent motions, of their first prolongations).
std::vector<InvarianceCheck> flow_invariance_check(
    SymbolTable& tab, const std::vector<std::pair<std::string, Expr>>& eqs,
    const SuperVectorField& X);

}  // namespace sgc
