#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "sgc/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"supergc: graded superfield calculus and structural-equation verifier"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "list built-in scenarios");

    std::string scenario, format = "text";
    int generators = 8;
    if (const char* env = std::getenv("SGC_GENERATORS")) generators = std::atoi(env);
    bool all = false, tables = false, zcc = false, invariance = false, classify = false,
         spectral = false;
    auto* verify = app.add_subcommand("verify", "run verification checks on a scenario");
    verify->add_option("scenario", scenario, "built-in name or path to a .scn file")->required();
    verify->add_flag("--all", all, "run every check (default when none selected)");
    verify->add_flag("--tables", tables, "commutator table checks");
    verify->add_flag("--zcc", zcc, "zero-curvature certificates");
    verify->add_flag("--invariance", invariance, "flow invariance checks");
    verify->add_flag("--classify", classify, "projection comparison and verdict");
    verify->add_flag("--spectral", spectral, "spectral insertion checks");
    verify->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--generators", generators, "Grassmann generator count recorded in reports");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list) {
            for (auto& n : sgc::builtin_scenario_names()) std::cout << n << "\n";
            return 0;
        }
        sgc::RunOptions opt;
        if (!tables && !zcc && !invariance && !classify && !spectral) all = true;
        if (all) opt = sgc::RunOptions::all();
        opt.tables |= tables;
        opt.zcc |= zcc;
        opt.invariance |= invariance;
        opt.classify |= classify;
        opt.spectral |= spectral;
        opt.generators_k = generators;

        sgc::Scenario s = sgc::load_scenario(scenario);
        sgc::VerificationReport rep = sgc::run_scenario(s, opt);
        std::cout << (format == "json" ? sgc::report_json(rep) : sgc::report_text(rep));
        return rep.overall() ? 0 : 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
