#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "sgc/expr.hpp"

namespace sgc {

struct SuperMatrix {
    const SymbolTable* tab = nullptr;
    std::array<Expr, 9> e;

    static SuperMatrix zero(const SymbolTable* t) {
        SuperMatrix m;
        m.tab = t;
        for (auto& x : m.e) x = Expr::zero(t);
        return m;
    }

    Expr& at(int r, int c) { return e[r * 3 + c]; }
    const Expr& at(int r, int c) const { return e[r * 3 + c]; }

    SuperMatrix operator+(const SuperMatrix& o) const {
        SuperMatrix m = zero(tab);
        for (int j = 0; j < 9; ++j) m.e[j] = e[j] + o.e[j];
        return m;
    }
    SuperMatrix operator-(const SuperMatrix& o) const {
        SuperMatrix m = zero(tab);
        for (int j = 0; j < 9; ++j) m.e[j] = e[j] - o.e[j];
        return m;
    }
    SuperMatrix operator*(const SuperMatrix& o) const {
        SuperMatrix m = zero(tab);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                Expr s = Expr::zero(tab);
                for (int k = 0; k < 3; ++k) s = s + at(r, k) * o.at(k, c);
                m.at(r, c) = s;
            }
        return m;
    }
    SuperMatrix apply(SuperOp op) const {
        SuperMatrix m = zero(tab);
        for (int j = 0; j < 9; ++j) m.e[j] = apply_op(e[j], op);
        return m;
    }
    SuperMatrix row_signs(const std::array<int, 3>& s) const {
        SuperMatrix m = *this;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                if (s[r] < 0) m.at(r, c) = -m.at(r, c);
        return m;
    }
    bool strong_equal(const SuperMatrix& o) const {
        for (int j = 0; j < 9; ++j)
            if (!is_zero_strong(e[j] - o.e[j])) return false;
        return true;
    }
};

enum class ZccForm { Classical, BosonicE, Fermionic };

// The linear problem D+ W = M+ W, D- W = M- W over the frame vectors; the
// classical form pairs (dxp, dxm) with (V1, V2) instead.
struct LinearProblem {
    ZccForm form = ZccForm::Classical;
    std::array<Parity, 3> frame{Parity::Even, Parity::Even, Parity::Even};
    SuperMatrix Mp, Mm;
    std::vector<std::array<Expr, 3>> vectors;  // optional: the frame unknowns
};

// Entry parity forced by the product grading; entries must be zero or
// homogeneous of this parity.
inline Parity lp_entry_parity(const LinearProblem& lp, int r, int c) {
    Parity d = lp.form == ZccForm::Classical ? Parity::Even : Parity::Odd;
    return d ^ lp.frame[r] ^ lp.frame[c];
}

void validate_linear_problem(const LinearProblem& lp);

// Residual of the zero-curvature condition:
//   Classical:  dxm(M+) - dxp(M-) + [M+, M-]
//   BosonicE:   Dp(M-) + Dm(M+) - {EM+, EM-},  E = e_sign * diag(1,1,-1)
//   Fermionic:  Dp(M-) + Dm(M+) - {M+, M-}
SuperMatrix compute_zcc(const LinearProblem& lp, int e_sign = +1);

// The nonlinear system the residual is certified against. Equations flagged
// aux are consequences of the frame normalization carried along so that
// certificates can use them; they are not counted as main equations.
struct EquationSystem {
    std::vector<std::string> names;
    std::vector<Expr> eqs;
    std::vector<bool> aux;

    int index_of(const std::string& n) const {
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == n) return int(i);
        throw Error("unknown equation: " + n);
    }
    int main_count() const {
        int n = 0;
        for (bool a : aux) n += !a;
        return n;
    }
};

struct CertTerm {
    Expr mult;  // left multiplier
    int eq;
};
using EntryCert = std::vector<CertTerm>;

struct Certificate {
    std::map<std::pair<int, int>, EntryCert> entries;  // 0-based (row, col)
};

struct CertCheck {
    int r, c;
    bool pass;
    std::string leftover;  // rendering of the uncancelled part when failing
};

// Per-entry check that residual(r,c) - sum mult_k * eq_k is identically zero;
// entries without a certificate line must vanish on their own.
std::vector<CertCheck> verify_certificate(const SuperMatrix& residual, const EquationSystem& sys,
                                          const Certificate& cert);

// Same, throwing CertificateMismatch at the first failing entry.
void require_certificate(const SuperMatrix& residual, const EquationSystem& sys,
                         const Certificate& cert);

// Capture-free substitution into both potential matrices and frame vectors.
LinearProblem substitute(const LinearProblem& lp, const std::map<int, Expr>& bindings);

// The scalar equations D(v_r) - sum_c M(r,c) v_c for every frame vector.
std::vector<std::pair<std::string, Expr>> linear_problem_equations(const LinearProblem& lp);

}  // namespace sgc
