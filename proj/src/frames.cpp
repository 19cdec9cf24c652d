#include "sgc/frames.hpp"

namespace sgc {

void validate_linear_problem(const LinearProblem& lp) {
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            Parity want = lp_entry_parity(lp, r, c);
            for (const SuperMatrix* m : {&lp.Mp, &lp.Mm}) {
                const Expr& e = m->at(r, c);
                if (e.is_structural_zero()) continue;
                auto p = e.homogeneous_parity();
                if (!p || *p != want)
                    throw ParityError("matrix entry (" + std::to_string(r + 1) + "," +
                                      std::to_string(c + 1) + ") violates the parity pattern");
            }
        }
    // a frame vector may carry the declared row parities or their global flip;
    // the entry pattern 1 + p_r + p_c is the same for both assignments
    for (auto& v : lp.vectors) {
        bool plain = true, flipped = true;
        for (int r = 0; r < 3; ++r) {
            if (v[r].is_structural_zero()) continue;
            auto p = v[r].homogeneous_parity();
            if (!p) throw ParityError("frame vector entry is not parity-homogeneous");
            plain = plain && *p == lp.frame[r];
            flipped = flipped && *p == (lp.frame[r] ^ Parity::Odd);
        }
        if (!plain && !flipped)
            throw ParityError("frame vector entries do not match the declared row parities");
    }
}

SuperMatrix compute_zcc(const LinearProblem& lp, int e_sign) {
    switch (lp.form) {
        case ZccForm::Classical: {
            SuperMatrix comm = lp.Mp * lp.Mm - lp.Mm * lp.Mp;
            return lp.Mp.apply(SuperOp::Dxm) - lp.Mm.apply(SuperOp::Dxp) + comm;
        }
        case ZccForm::BosonicE: {
            std::array<int, 3> s{e_sign, e_sign, -e_sign};
            SuperMatrix ep = lp.Mp.row_signs(s), em = lp.Mm.row_signs(s);
            SuperMatrix anti = ep * em + em * ep;
            return lp.Mm.apply(SuperOp::Dp) + lp.Mp.apply(SuperOp::Dm) - anti;
        }
        default: {
            SuperMatrix anti = lp.Mp * lp.Mm + lp.Mm * lp.Mp;
            return lp.Mm.apply(SuperOp::Dp) + lp.Mp.apply(SuperOp::Dm) - anti;
        }
    }
}

std::vector<CertCheck> verify_certificate(const SuperMatrix& residual, const EquationSystem& sys,
                                          const Certificate& cert) {
    std::vector<CertCheck> out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            Expr left = residual.at(r, c);
            auto it = cert.entries.find({r, c});
            if (it != cert.entries.end())
                for (const CertTerm& t : it->second) left = left - t.mult * sys.eqs.at(t.eq);
            bool ok = is_zero_strong(left);
            out.push_back({r, c, ok, ok ? "" : left.str()});
        }
    return out;
}

void require_certificate(const SuperMatrix& residual, const EquationSystem& sys,
                         const Certificate& cert) {
    for (const CertCheck& ck : verify_certificate(residual, sys, cert))
        if (!ck.pass)
            throw CertificateMismatch(
                "(" + std::to_string(ck.r + 1) + "," + std::to_string(ck.c + 1) + ")",
                ck.leftover);
}

LinearProblem substitute(const LinearProblem& lp, const std::map<int, Expr>& bindings) {
    LinearProblem out = lp;
    for (int j = 0; j < 9; ++j) {
        out.Mp.e[j] = sgc::substitute(lp.Mp.e[j], bindings);
        out.Mm.e[j] = sgc::substitute(lp.Mm.e[j], bindings);
    }
    for (auto& v : out.vectors)
        for (auto& x : v) x = sgc::substitute(x, bindings);
    validate_linear_problem(out);
    return out;
}

std::vector<std::pair<std::string, Expr>> linear_problem_equations(const LinearProblem& lp) {
    bool classical = lp.form == ZccForm::Classical;
    SuperOp dp = classical ? SuperOp::Dxp : SuperOp::Dp;
    SuperOp dm = classical ? SuperOp::Dxm : SuperOp::Dm;
    std::vector<std::pair<std::string, Expr>> eqs;
    for (size_t k = 0; k < lp.vectors.size(); ++k) {
        const auto& v = lp.vectors[k];
        for (int r = 0; r < 3; ++r) {
            Expr plus = apply_op(v[r], dp);
            Expr minus = apply_op(v[r], dm);
            for (int c = 0; c < 3; ++c) {
                plus = plus - lp.Mp.at(r, c) * v[c];
                minus = minus - lp.Mm.at(r, c) * v[c];
            }
            std::string base = "v" + std::to_string(k + 1) + ".r" + std::to_string(r + 1);
            eqs.emplace_back("lp+." + base, plus);
            eqs.emplace_back("lp-." + base, minus);
        }
    }
    return eqs;
}

}  // namespace sgc
