#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace adscausal {

struct Check {
    std::string name;
    bool pass = true;
    std::string counterexample;
};

struct Report {
    std::vector<Check> checks;

    void add(std::string name, bool pass, std::string counterexample = {}) {
        checks.push_back({std::move(name), pass, std::move(counterexample)});
    }
    void append(const Report& o, const std::string& prefix = {}) {
        for (const auto& c : o.checks) checks.push_back({prefix + c.name, c.pass, c.counterexample});
    }
    std::size_t failures() const {
        std::size_t f = 0;
        for (const auto& c : checks) f += !c.pass;
        return f;
    }
    bool ok() const { return failures() == 0; }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json e{{"name", c.name}, {"pass", c.pass}};
            if (!c.pass) e["counterexample"] = c.counterexample;
            j["checks"].push_back(e);
        }
        j["total"] = checks.size();
        j["failures"] = failures();
        return j;
    }
};

}  // namespace adscausal
