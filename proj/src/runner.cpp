#include <sstream>

#include "sgc/scenario.hpp"

#include "json.hpp"

namespace sgc {

namespace {

std::string entry_name(int r, int c) {
    return "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
}

void run_table_checks(const Scenario& s, VerificationReport& rep) {
    for (const AlgebraPresentation* alg : {&s.nonlinear, &s.linear}) {
        std::string id = std::string("table.") +
                         (alg == &s.nonlinear ? "nonlinear" : "linear");
        auto checks = verify_table(*alg);
        int bad = 0, listed = 0;
        std::string first;
        for (auto& ck : checks) {
            listed += ck.listed;
            if (!ck.pass && ++bad == 1) first = ck.detail;
        }
        std::ostringstream d;
        if (bad == 0)
            d << checks.size() << " pairs recomputed, " << listed << " listed relations";
        else
            d << bad << " mismatching pairs, first: " << first;
        rep.checks.push_back({id, "table", bad == 0 ? "pass" : "fail", d.str()});
    }
}

void run_invariance_checks(Scenario& s, VerificationReport& rep) {
    std::vector<std::pair<std::string, Expr>> sys_eqs;
    for (size_t k = 0; k < s.sys.eqs.size(); ++k)
        sys_eqs.emplace_back(s.sys.names[k], s.sys.eqs[k]);
    auto lp_eqs = linear_problem_equations(s.lp);

    struct Job {
        const char* side;
        const AlgebraPresentation* alg;
        const std::vector<std::pair<std::string, Expr>>* eqs;
    };
    for (const Job& job : {Job{"nonlinear", &s.nonlinear, &sys_eqs},
                           Job{"linear", &s.linear, &lp_eqs}}) {
        for (const SuperVectorField& X : job.alg->basis) {
            auto checks = flow_invariance_check(*s.tab, *job.eqs, X);
            std::string status = "pass", detail;
            int passed = 0;
            for (auto& ck : checks) {
                if (ck.status == "fail") {
                    status = "fail";
                    detail = ck.equation + ": " + ck.detail;
                    break;
                }
                if (ck.status == "skip") {
                    status = "skip";
                    detail = ck.detail;
                } else {
                    ++passed;
                }
            }
            if (status == "pass")
                detail = std::to_string(passed) + " equations carried onto the system span";
            rep.checks.push_back({std::string("invariance.") + job.side + "." + X.name,
                                  "invariance", status, detail});
        }
    }
}

void summarize_cert(const std::string& id, const std::vector<CertCheck>& checks,
                    VerificationReport& rep) {
    int bad = 0;
    std::string first;
    for (auto& ck : checks)
        if (!ck.pass && ++bad == 1)
            first = entry_name(ck.r, ck.c) + " leftover " + ck.leftover;
    std::string detail = bad == 0 ? "all 9 entries reduce to the certified combinations"
                                  : std::to_string(bad) + " entries fail, first: " + first;
    rep.checks.push_back({id, "zcc", bad == 0 ? "pass" : "fail", detail});
}

void run_zcc_checks(const Scenario& s, VerificationReport& rep) {
    if (s.lp.form == ZccForm::BosonicE) {
        SuperMatrix rp = compute_zcc(s.lp, +1);
        SuperMatrix rm = compute_zcc(s.lp, -1);
        rep.checks.push_back({"zcc.e-signs", "zcc",
                              rp.strong_equal(rm) ? "pass" : "fail",
                              "residuals for E and -E coincide"});
        summarize_cert("zcc.certificate(+E)", verify_certificate(rp, s.sys, s.cert), rep);
        summarize_cert("zcc.certificate(-E)", verify_certificate(rm, s.sys, s.cert), rep);
    } else {
        SuperMatrix r = compute_zcc(s.lp);
        summarize_cert("zcc.certificate", verify_certificate(r, s.sys, s.cert), rep);
    }
}

std::vector<SuperVectorField> project_linear(const Scenario& s, VerificationReport& rep) {
    std::vector<SuperVectorField> projected;
    std::string status = "pass", detail;
    for (const SuperVectorField& X : s.linear.basis) {
        try {
            SuperVectorField p = project(X, s.omega);
            if (!p.is_zero()) projected.push_back(std::move(p));
        } catch (const NonProjectable& ex) {
            status = "fail";
            detail = ex.what();
            break;
        }
    }
    if (status == "pass")
        detail = std::to_string(projected.size()) + " nonzero projected generators";
    rep.checks.push_back({"classify.projection", "classify", status, detail});
    return projected;
}

void run_classify(const Scenario& s, VerificationReport& rep) {
    auto projected = project_linear(s, rep);
    if (!rep.checks.empty() && rep.checks.back().status == "fail") {
        rep.verdict = "Error";
        return;
    }
    SpanResult res = span_compare(s.nonlinear.basis, projected);
    std::string detail;
    switch (res.kind) {
        case SpanResult::Equal:
            rep.verdict = "NotIntegrable";
            detail = "nonlinear symmetries equal the projected linear ones";
            break;
        case SpanResult::SecondInFirst: {
            rep.verdict = "CandidateIntegrable";
            rep.witnesses = res.only_first;
            detail = "projected linear symmetries are a proper subset; witnesses:";
            for (auto& w : rep.witnesses) detail += " " + w;
            break;
        }
        case SpanResult::FirstInSecond:
            rep.verdict = "Inconclusive";
            detail = "nonlinear symmetries sit strictly inside the projected linear ones";
            break;
        default:
            rep.verdict = "Inconclusive";
            detail = "spans are incomparable";
    }
    rep.checks.push_back({"classify.span", "classify", "pass", detail});
}

void run_spectral(Scenario& s, VerificationReport& rep) {
    if (!s.spectral) return;
    const SpectralSpec& sp = *s.spectral;
    auto projected = project_linear(s, rep);
    if (!rep.checks.empty() && rep.checks.back().status == "fail") return;

    int param = s.tab->require(sp.param);
    const SuperVectorField& X = s.nonlinear.basis[s.nonlinear.index_of(sp.gen)];
    ParamLinearProblem plp;
    try {
        plp = insert_parameter(s.lp, X, sp.odd, param, s.nonlinear.basis, projected);
        std::ostringstream d;
        d << "parameter " << sp.param << " inserted along " << sp.gen << "; ";
        auto rows = [&d](const char* nm, const SuperMatrix& M) {
            d << nm << " = [";
            for (int r = 0; r < 3; ++r) {
                d << (r ? "; " : "") << M.at(r, 0).str() << ", " << M.at(r, 1).str() << ", "
                  << M.at(r, 2).str();
            }
            d << "] ";
        };
        rows("M+", plp.family.Mp);
        rows("M-", plp.family.Mm);
        rep.checks.push_back({"spectral.insert", "spectral", "pass", d.str()});
    } catch (const Error& ex) {
        rep.checks.push_back({"spectral.insert", "spectral", "fail", ex.what()});
        return;
    }

    if (sp.has_expected) {
        int bad = 0;
        std::string first;
        for (int j = 0; j < 9; ++j) {
            if (!is_zero_strong(plp.family.Mp.e[j] - sp.exp_Mp.e[j]) && ++bad == 1)
                first = "M+" + entry_name(j / 3, j % 3) + " = " + plp.family.Mp.e[j].str();
            if (!is_zero_strong(plp.family.Mm.e[j] - sp.exp_Mm.e[j]) && ++bad == 1)
                first = "M-" + entry_name(j / 3, j % 3) + " = " + plp.family.Mm.e[j].str();
        }
        rep.checks.push_back({"spectral.expected-matrices", "spectral",
                              bad == 0 ? "pass" : "fail",
                              bad == 0 ? "family matrices match the displayed ones"
                                       : "mismatch at " + first});
    }

    FamilyReport fr = verify_family(plp, s.sys, s.cert);
    {
        int bad = 0;
        std::string first;
        for (auto& ck : fr.cert_checks)
            if (!ck.pass && ++bad == 1) first = entry_name(ck.r, ck.c);
        std::ostringstream d;
        if (!fr.equations_parameter_free)
            d << "reduction uses parameter-dependent equations; ";
        if (!fr.degenerates) d << "identity-parameter degeneration failed; ";
        if (bad) d << bad << " certificate entries fail, first " << first;
        if (fr.pass()) d << "family ZCC certifies against the parameter-free system";
        rep.checks.push_back(
            {"spectral.family", "spectral", fr.pass() ? "pass" : "fail", d.str()});
    }

    GaugeOutcome g = gauge_falsifier(plp, *s.tab, sp.gauge_degree);
    bool ok = g.found == sp.expect_gauge;
    std::ostringstream d;
    if (g.found)
        d << "gauge generator found within ansatz degree " << sp.gauge_degree;
    else
        d << "no gauge within ansatz degree " << sp.gauge_degree
          << " (evidence of non-removability, not proof)";
    rep.checks.push_back({"spectral.gauge", "spectral", ok ? "pass" : "fail", d.str()});
}

}  // namespace

VerificationReport run_scenario(Scenario& s, const RunOptions& opt) {
    VerificationReport rep;
    rep.scenario = s.name;
    rep.generators_k = opt.generators_k;
    if (opt.tables) run_table_checks(s, rep);
    if (opt.invariance) run_invariance_checks(s, rep);
    if (opt.zcc) run_zcc_checks(s, rep);
    if (opt.classify) run_classify(s, rep);
    if (opt.spectral) run_spectral(s, rep);
    return rep;
}

std::string report_text(const VerificationReport& r) {
    std::ostringstream o;
    o << "scenario " << r.scenario << " (generators k=" << r.generators_k << ")\n";
    for (auto& c : r.checks) {
        std::string tag = c.status == "pass" ? "PASS" : (c.status == "skip" ? "SKIP" : "FAIL");
        o << "  [" << tag << "] " << c.id;
        if (!c.detail.empty()) o << "  -- " << c.detail;
        o << "\n";
    }
    if (!r.verdict.empty()) {
        o << "verdict: " << r.verdict;
        if (!r.witnesses.empty()) {
            o << " (witnesses:";
            for (auto& w : r.witnesses) o << " " << w;
            o << ")";
        }
        o << "\n";
    }
    o << "overall: " << (r.overall() ? "PASS" : "FAIL") << "\n";
    return o.str();
}

std::string report_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["scenario"] = r.scenario;
    j["generators"] = r.generators_k;
    j["overall"] = r.overall() ? "pass" : "fail";
    if (!r.verdict.empty()) j["verdict"] = r.verdict;
    j["witnesses"] = r.witnesses;
    j["checks"] = nlohmann::ordered_json::array();
    for (auto& c : r.checks) {
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["kind"] = c.kind;
        jc["status"] = c.status;
        jc["detail"] = c.detail;
        j["checks"].push_back(std::move(jc));
    }
    return j.dump(2) + "\n";
}

}  // namespace sgc
