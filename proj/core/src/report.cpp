#include <algorithm>
#include <cmath>

#include "hqft/suites.hpp"

namespace hqft::maxwell {

void Report::add(std::string name, std::string ref, bool pass, double residual, nlohmann::json witness) {
    if (!pass && witness.is_null()) witness = "check returned false";
    checks.push_back({std::move(name), std::move(ref), pass, residual, std::move(witness)});
}

void Report::within(std::string name, std::string ref, double residual, double tol, nlohmann::json witness) {
    bool ok = std::isfinite(residual) && residual < tol;
    if (!ok && witness.is_null()) witness = {{"residual", residual}, {"tolerance", tol}};
    add(std::move(name), std::move(ref), ok, residual, std::move(witness));
}

void Report::merge(const Report& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }

bool Report::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

const CheckRecord* Report::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

nlohmann::json Report::to_json() const {
    auto sorted = checks;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : sorted) {
        nlohmann::json j{{"name", c.name}, {"ref", c.ref}, {"status", c.pass ? "pass" : "fail"}, {"residual", c.residual}};
        j["witness"] = c.witness;
        arr.push_back(j);
    }
    return {{"checks", arr}, {"status", pass() ? "pass" : "fail"}};
}

std::vector<std::string> suite_names() {
    return {"small-model", "two-point", "causality", "timeslice", "gns", "kg", "ccr", "net", "categorical"};
}

Report run_suite(const std::string& name, const Config& cfg) {
    if (name == "small-model") return run_small_model(cfg);
    if (name == "two-point") return run_two_point(cfg);
    if (name == "causality") return run_causality(cfg);
    if (name == "timeslice") return run_timeslice(cfg);
    if (name == "gns") return run_gns(cfg);
    if (name == "kg") return run_kg(cfg);
    if (name == "ccr") return run_ccr(cfg);
    if (name == "net") return run_net(cfg);
    if (name == "categorical") return run_categorical(cfg);
    throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace hqft::maxwell
