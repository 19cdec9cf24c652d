#include <map>

#include "sgc/scenario.hpp"

namespace sgc {

namespace {

struct Builtin {
    const char* name;
    const char* text;
};

const Builtin kBuiltins[] = {
#include "builtin_scenarios.inc"
};

}  // namespace

std::vector<std::string> builtin_scenario_names() {
    std::vector<std::string> out;
    for (auto& b : kBuiltins) out.push_back(b.name);
    return out;
}

const std::string& builtin_scenario_text(const std::string& name) {
    static std::map<std::string, std::string> cache;
    if (cache.empty())
        for (auto& b : kBuiltins) cache.emplace(b.name, b.text);
    auto it = cache.find(name);
    if (it == cache.end()) throw UnknownScenario("unknown scenario: " + name);
    return it->second;
}

}  // namespace sgc
