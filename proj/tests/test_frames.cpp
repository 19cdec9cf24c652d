#include "sgc/frames.hpp"

#include <compare>

#include "doctest.h"
#include "sgc/parser.hpp"
#include "support/plain_oracle.hpp"

using namespace sgc;

namespace {

struct ClassicalSetup {
    std::unique_ptr<SymbolTable> tab;
    LinearProblem lp;
    EquationSystem sys;
    Certificate cert;
};

ClassicalSetup classical_setup() {
    ClassicalSetup s;
    s.tab = std::make_unique<SymbolTable>();
    auto* tab = s.tab.get();
    tab->declare_coord("xp", Parity::Even);
    tab->declare_coord("xm", Parity::Even);
    uint16_t dep = tab->all_coords_mask();
    for (const char* n : {"u", "Q", "Qb", "H"}) tab->declare_field(n, Parity::Even, dep);
    auto E = [&](const char* t) { return parse_expr(t, tab); };

    s.lp.form = ZccForm::Classical;
    s.lp.frame = {Parity::Even, Parity::Even, Parity::Even};
    s.lp.Mp = SuperMatrix::zero(tab);
    s.lp.Mm = SuperMatrix::zero(tab);
    const char* v1[9] = {"dxp(u)", "0", "Q",
                         "0",      "0", "1/2*H*exp(u)",
                         "-H",     "-2*exp(-u)*Q", "0"};
    const char* v2[9] = {"0",             "0",      "1/2*H*exp(u)",
                         "0",             "dxm(u)", "Qb",
                         "-2*exp(-u)*Qb", "-H",     "0"};
    for (int j = 0; j < 9; ++j) {
        s.lp.Mp.e[j] = E(v1[j]);
        s.lp.Mm.e[j] = E(v2[j]);
    }
    validate_linear_problem(s.lp);

    s.sys.names = {"gauss", "cod1", "cod2"};
    s.sys.eqs = {E("dxp(dxm(u)) + 1/2*H^2*exp(u) - 2*Q*Qb*exp(-u)"),
                 E("dxp(Qb) - 1/2*exp(u)*dxm(H)"), E("dxm(Q) - 1/2*exp(u)*dxp(H)")};
    s.sys.aux = {false, false, false};

    auto one = Expr::one(tab);
    s.cert.entries[{0, 0}] = {{one, 0}};
    s.cert.entries[{1, 1}] = {{-one, 0}};
    s.cert.entries[{0, 2}] = {{one, 2}};
    s.cert.entries[{1, 2}] = {{-one, 1}};
    s.cert.entries[{2, 0}] = {{E("2*exp(-u)"), 1}};
    s.cert.entries[{2, 1}] = {{E("-2*exp(-u)"), 2}};
    return s;
}



}  // namespace

TEST_CASE("zero matrices give a zero residual in every form") {
    auto s = classical_setup();
    LinearProblem lp;
    lp.Mp = SuperMatrix::zero(s.tab.get());
    lp.Mm = SuperMatrix::zero(s.tab.get());
    for (ZccForm f : {ZccForm::Classical}) {
        lp.form = f;
        SuperMatrix r = compute_zcc(lp);
        for (auto& e : r.e) CHECK(e.is_structural_zero());
    }
}

TEST_CASE("classical ZCC certifies against the three GC equations") {
    auto s = classical_setup();
    SuperMatrix r = compute_zcc(s.lp);
    auto checks = verify_certificate(r, s.sys, s.cert);
    for (auto& ck : checks) {
        INFO("entry (", ck.r + 1, ",", ck.c + 1, ") leftover: ", ck.leftover);
        CHECK(ck.pass);
    }
    // the Gauss equation sits in entry (1,1) with unit multiplier
    CHECK(equal_strong(r.at(0, 0), s.sys.eqs[0]));
}

TEST_CASE("classical ZCC agrees with the plain commutative oracle entrywise") {
    auto s = classical_setup();
    SuperMatrix r = compute_zcc(s.lp);

    // independent computation: plain matrices, plain derivative, plain product
    using testsupport::plain::PExpr;
    std::array<PExpr, 9> V1, V2;
    auto pe = [&](int r_, int c_, const SuperMatrix& M) {
        return testsupport::plain::from_engine(M.at(r_, c_));
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            V1[i * 3 + j] = pe(i, j, s.lp.Mp);
            V2[i * 3 + j] = pe(i, j, s.lp.Mm);
        }
    auto mul = [](const std::array<PExpr, 9>& A, const std::array<PExpr, 9>& B) {
        std::array<PExpr, 9> C;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                PExpr acc;
                for (int k = 0; k < 3; ++k) acc = acc + A[i * 3 + k] * B[k * 3 + j];
                C[i * 3 + j] = acc;
            }
        return C;
    };
    std::array<PExpr, 9> prod1 = mul(V1, V2), prod2 = mul(V2, V1);
    for (int j = 0; j < 9; ++j) {
        PExpr oracle = V1[j].d(1) - V2[j].d(0) + prod1[j] - prod2[j];
        PExpr engine = testsupport::plain::from_engine(r.e[j]);
        CHECK((oracle - engine).is_zero());
    }
}

TEST_CASE("certificate against the wrong system reports a mismatch") {
    auto s = classical_setup();
    SuperMatrix r = compute_zcc(s.lp);
    Certificate wrong;
    wrong.entries[{0, 0}] = {{Expr::one(s.tab.get()), 1}};  // cod1 instead of gauss
    auto checks = verify_certificate(r, s.sys, wrong);
    bool all = true;
    for (auto& ck : checks) all = all && ck.pass;
    CHECK(!all);
    CHECK_THROWS_AS(require_certificate(r, s.sys, wrong), CertificateMismatch);
}

TEST_CASE("linear problem equations expand the frame") {
    auto s = classical_setup();
    auto* tab = s.tab.get();
    uint16_t dep = tab->all_coords_mask();
    int F1 = tab->declare_field("F1", Parity::Even, dep);
    int N1 = tab->declare_field("N1", Parity::Even, dep);
    s.lp.vectors.push_back({apply_op(Expr::symbol(tab, F1), SuperOp::Dxp),
                            apply_op(Expr::symbol(tab, F1), SuperOp::Dxm),
                            Expr::symbol(tab, N1)});
    validate_linear_problem(s.lp);
    auto eqs = linear_problem_equations(s.lp);
    CHECK(eqs.size() == 6);
    // first: dxp(dxp F1) - du dxp F1 - Q N1
    Expr want = parse_expr("dxp(dxp(F1)) - dxp(u)*dxp(F1) - Q*N1", tab);
    CHECK(eqs[0].second == want);
}

namespace {

struct SusySetup {
    std::unique_ptr<SymbolTable> tab;
    LinearProblem lp;
    EquationSystem sys;
    Certificate cert;
};

// Bosonic extension: Gamma's odd, H/Q/f even, frame rows (odd, odd, even).
SusySetup bosonic_setup() {
    SusySetup s;
    s.tab = std::make_unique<SymbolTable>();
    auto* tab = s.tab.get();
    tab->declare_coord("xp", Parity::Even);
    tab->declare_coord("xm", Parity::Even);
    tab->declare_coord("tp", Parity::Odd);
    tab->declare_coord("tm", Parity::Odd);
    uint16_t all = tab->all_coords_mask();
    for (const char* n : {"phi", "H", "Qp", "Qm"}) tab->declare_field(n, Parity::Even, all);
    tab->declare_field("f", Parity::Even, 0b0011);
    for (const char* n : {"Rp", "Rm", "Sp", "Sm", "Tp", "Tm"})
        tab->declare_field(n, Parity::Odd, all);
    auto E = [&](const char* t) { return parse_expr(t, tab); };

    s.lp.form = ZccForm::BosonicE;
    s.lp.frame = {Parity::Odd, Parity::Odd, Parity::Even};
    s.lp.Mp = SuperMatrix::zero(tab);
    s.lp.Mm = SuperMatrix::zero(tab);
    const char* ap[9] = {"Rp",  "Rm",  "Qp*f",
                         "-Sp", "-Sm", "-1/2*exp(phi)*H*f",
                         "H",   "2*exp(-phi)*Qp", "0"};
    const char* am[9] = {"Sp", "Sm", "1/2*exp(phi)*H*f",
                         "Tp", "Tm", "Qm*f",
                         "-2*exp(-phi)*Qm", "H", "0"};
    for (int j = 0; j < 9; ++j) {
        s.lp.Mp.e[j] = E(ap[j]);
        s.lp.Mm.e[j] = E(am[j]);
    }
    validate_linear_problem(s.lp);

    s.sys.names = {"i", "ii", "iii", "iv", "v", "vi", "dfp", "dfm"};
    s.sys.eqs = {
        E("Dm(Rp) + Dp(Tm) + Dp(Sp) - Dm(Sm)"),
        E("Dm(Rp) - Rm*Tp + Dp(Sp) + Sm*Sp + 1/2*H^2*exp(phi)*f - 2*Qp*Qm*exp(-phi)*f"),
        E("Qp*Tm - Rm*Qm + Dm(Qp) - Qp*Dm(phi) + 1/2*exp(phi)*Dp(H)"),
        E("Qm*Rp - Tp*Qp + Dp(Qm) - Qm*Dp(phi) - 1/2*exp(phi)*Dm(H)"),
        E("Dm(Rm) - Sp*Rm - Rm*Tm - Rp*Sm + Dp(Sm) + 2*Qp*H*f"),
        E("Dp(Tp) + Sm*Tp - Tp*Rp + Tm*Sp - Dm(Sp) + 2*Qm*H*f"),
        E("Dp(f) - (Rp - Sm - Dp(phi))*f"),
        E("Dm(f) - (Sp + Tm - Dm(phi))*f"),
    };
    s.sys.aux = {false, false, false, false, false, false, true, true};

    auto one = Expr::one(tab);
    s.cert.entries[{0, 0}] = {{one, 1}};
    s.cert.entries[{0, 1}] = {{one, 4}};
    s.cert.entries[{1, 0}] = {{one, 5}};
    s.cert.entries[{1, 1}] = {{one, 0}, {-one, 1}};
    s.cert.entries[{0, 2}] = {{E("f"), 2}, {E("1/2*exp(phi)*H"), 6}, {E("Qp"), 7}};
    s.cert.entries[{1, 2}] = {{E("f"), 3}, {E("Qm"), 6}, {E("-1/2*exp(phi)*H"), 7}};
    s.cert.entries[{2, 0}] = {{E("-2*exp(-phi)"), 3}};
    s.cert.entries[{2, 1}] = {{E("2*exp(-phi)"), 2}};
    return s;
}

// Fermionic extension: H/Q/Gamma odd, frame all even.
SusySetup fermionic_setup() {
    SusySetup s;
    s.tab = std::make_unique<SymbolTable>();
    auto* tab = s.tab.get();
    tab->declare_coord("xp", Parity::Even);
    tab->declare_coord("xm", Parity::Even);
    tab->declare_coord("tp", Parity::Odd);
    tab->declare_coord("tm", Parity::Odd);
    uint16_t all = tab->all_coords_mask();
    tab->declare_field("phi", Parity::Even, all);
    tab->declare_field("f", Parity::Even, 0b0011);
    for (const char* n : {"H", "Qp", "Qm", "Rp", "Tm"}) tab->declare_field(n, Parity::Odd, all);
    auto E = [&](const char* t) { return parse_expr(t, tab); };

    s.lp.form = ZccForm::Fermionic;
    s.lp.frame = {Parity::Even, Parity::Even, Parity::Even};
    s.lp.Mp = SuperMatrix::zero(tab);
    s.lp.Mm = SuperMatrix::zero(tab);
    const char* ap[9] = {"Rp", "0", "Qp*f",
                         "0",  "0", "-1/2*exp(phi)*H*f",
                         "H",  "-2*exp(-phi)*Qp", "0"};
    const char* am[9] = {"0", "0",  "1/2*exp(phi)*H*f",
                         "0", "Tm", "Qm*f",
                         "-2*exp(-phi)*Qm", "-H", "0"};
    for (int j = 0; j < 9; ++j) {
        s.lp.Mp.e[j] = E(ap[j]);
        s.lp.Mm.e[j] = E(am[j]);
    }
    validate_linear_problem(s.lp);

    s.sys.names = {"i", "ii", "iii", "iv", "dfp", "dfm"};
    s.sys.eqs = {
        E("Dp(Tm) + Dm(Rp)"),
        E("Dm(Rp) + 2*exp(-phi)*Qp*Qm*f"),
        E("Dp(Qm) - 1/2*exp(phi)*Dm(H) + Qm*(Dp(phi) - Rp)"),
        E("Dm(Qp) + 1/2*exp(phi)*Dp(H) + Qp*(Dm(phi) - Tm)"),
        E("Dp(f) - (Rp - Dp(phi))*f"),
        E("Dm(f) - (Tm - Dm(phi))*f"),
    };
    s.sys.aux = {false, false, false, false, true, true};

    auto one = Expr::one(tab);
    s.cert.entries[{0, 0}] = {{one, 1}};
    s.cert.entries[{1, 1}] = {{one, 0}, {-one, 1}};
    s.cert.entries[{2, 0}] = {{E("-2*exp(-phi)"), 2}};
    s.cert.entries[{2, 1}] = {{E("-2*exp(-phi)"), 3}};
    s.cert.entries[{0, 2}] = {{E("f"), 3}, {E("-1/2*exp(phi)*H"), 4}, {E("-Qp"), 5}};
    s.cert.entries[{1, 2}] = {{E("f"), 2}, {E("-Qm"), 4}, {E("1/2*exp(phi)*H"), 5}};
    return s;
}

}  // namespace

TEST_CASE("bosonic SUSY ZCC certifies against the six GC equations, both E signs") {
    auto s = bosonic_setup();
    SuperMatrix rp = compute_zcc(s.lp, +1);
    SuperMatrix rm = compute_zcc(s.lp, -1);
    CHECK(rp.strong_equal(rm));  // the anticommutator absorbs the sign of E
    for (auto& ck : verify_certificate(rp, s.sys, s.cert)) {
        INFO("entry (", ck.r + 1, ",", ck.c + 1, ") leftover: ", ck.leftover);
        CHECK(ck.pass);
    }
    // residual entry parity: the odd derivative flips the odd matrix-entry parity
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            const Expr& e = rp.at(r, c);
            if (e.is_structural_zero()) continue;
            CHECK(e.homogeneous_parity() == std::optional<Parity>(s.lp.frame[r] ^ s.lp.frame[c]));
        }
}

TEST_CASE("fermionic SUSY ZCC certifies against the four GC equations") {
    auto s = fermionic_setup();
    SuperMatrix r = compute_zcc(s.lp);
    for (auto& ck : verify_certificate(r, s.sys, s.cert)) {
        INFO("entry (", ck.r + 1, ",", ck.c + 1, ") leftover: ", ck.leftover);
        CHECK(ck.pass);
    }
    // dropping the normalization relations breaks exactly the f-column entries
    Certificate nocert = s.cert;
    nocert.entries[{0, 2}] = {{parse_expr("f", s.tab.get()), 3}};
    auto checks = verify_certificate(r, s.sys, nocert);
    bool col_fails = false;
    for (auto& ck : checks)
        if (ck.r == 0 && ck.c == 2) col_fails = !ck.pass;
    CHECK(col_fails);
}

TEST_CASE("fermionic ZCC against the bosonic system mismatches") {
    auto sf = fermionic_setup();
    SuperMatrix r = compute_zcc(sf.lp);
    Certificate wrong;
    wrong.entries[{0, 0}] = {{Expr::one(sf.tab.get()), 0}};  // (i) instead of (ii)
    auto checks = verify_certificate(r, sf.sys, wrong);
    bool ok00 = false;
    for (auto& ck : checks)
        if (ck.r == 0 && ck.c == 0) ok00 = ck.pass;
    CHECK(!ok00);
}

TEST_CASE("linear-problem substitution respects parities") {
    auto s = fermionic_setup();
    auto* tab = s.tab.get();
    int H = tab->require("H");
    int lam = tab->declare_const("lam", Parity::Odd, false);
    std::map<int, Expr> shift{{H, Expr::symbol(tab, H) + Expr::symbol(tab, lam)}};
    LinearProblem shifted = substitute(s.lp, shift);
    CHECK(shifted.Mp.at(2, 0) == parse_expr("H + lam", tab));
    CHECK(shifted.Mp.at(0, 0) == s.lp.Mp.at(0, 0));

    std::map<int, Expr> bad{{H, parse_expr("exp(phi)", tab)}};
    CHECK_THROWS_AS(substitute(s.lp, bad), ParityMismatch);
}
