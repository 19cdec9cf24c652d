#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sgc/flow.hpp"
#include "sgc/frames.hpp"
#include "sgc/spectral.hpp"
#include "sgc/vectorfield.hpp"

namespace sgc {

struct SpectralSpec {
    std::string gen;
    bool odd = false;
    std::string param;
    bool has_expected = false;
    SuperMatrix exp_Mp, exp_Mm;
    int gauge_degree = 2;
    bool expect_gauge = false;  // built-ins expect non-removability evidence
};

struct Scenario {
    std::string name;
    std::unique_ptr<SymbolTable> tab;
    EquationSystem sys;
    LinearProblem lp;
    AlgebraPresentation nonlinear, linear;
    OmegaSet omega;
    Certificate cert;
    std::optional<SpectralSpec> spectral;
};

Scenario parse_scenario(const std::string& text);
std::string render_scenario(const Scenario& s);

// registry of the built-in case studies (shipped under scenarios/)
std::vector<std::string> builtin_scenario_names();
const std::string& builtin_scenario_text(const std::string& name);  // UnknownScenario
Scenario load_scenario(const std::string& name_or_path);

struct CheckResult {
    std::string id;
    std::string kind;    // table | invariance | zcc | classify | spectral
    std::string status;  // pass | fail | skip
    std::string detail;
};

struct VerificationReport {
    std::string scenario;
    int generators_k = 8;
    std::vector<CheckResult> checks;
    std::string verdict;  // classifier outcome when run
    std::vector<std::string> witnesses;

    bool overall() const {
        for (auto& c : checks)
            if (c.status == "fail") return false;
        return true;
    }
};

struct RunOptions {
    bool tables = false, invariance = false, zcc = false, classify = false, spectral = false;
    int generators_k = 8;

    static RunOptions all() { return {true, true, true, true, true, 8}; }
};

VerificationReport run_scenario(Scenario& s, const RunOptions& opt);

std::string report_text(const VerificationReport& r);
std::string report_json(const VerificationReport& r);

}  // namespace sgc
