#pragma once

#include "sgc/flow.hpp"
#include "sgc/frames.hpp"

namespace sgc {

struct ParamLinearProblem {
    LinearProblem base;
    LinearProblem family;
    SuperVectorField gen;
    int param_sym = -1;  // invertible even mu, or an odd constant
    bool odd = false;
};

// One-parameter family obtained by flowing the linear problem along X. X must
// be an L4 witness: inside the span of the nonlinear algebra and outside the
// span of the projected linear-problem algebra.
ParamLinearProblem insert_parameter(const LinearProblem& lp, const SuperVectorField& X,
                                    bool odd_kind, int param_sym,
                                    const std::vector<SuperVectorField>& nonlinear_basis,
                                    const std::vector<SuperVectorField>& projected_linear);

struct FamilyReport {
    std::vector<CertCheck> cert_checks;
    bool equations_parameter_free = false;
    bool degenerates = false;

    bool pass() const {
        if (!equations_parameter_free || !degenerates) return false;
        for (auto& ck : cert_checks)
            if (!ck.pass) return false;
        return true;
    }
};

// Certifies the family ZCC against the original system by pushing the base
// certificate through the insertion map, and checks the identity-parameter
// degeneration back to the base problem.
FamilyReport verify_family(const ParamLinearProblem& plp, const EquationSystem& sys,
                           const Certificate& base_cert);

struct GaugeOutcome {
    bool found = false;
    int ansatz_degree = 0;
    SuperMatrix S;
    std::string note;
};

// Bounded-ansatz elimination test: searches constant matrices S with entries
// polynomial in mu, mu^-1 (or 1, odd-lambda) up to the given degree solving
//   D(S) + [S, M] = d/dparam M
// for both potentials. An inconsistent system is evidence (not proof) that
// the parameter cannot be gauged away within the ansatz.
GaugeOutcome gauge_falsifier(ParamLinearProblem& plp, SymbolTable& tab, int degree);

}  // namespace sgc
