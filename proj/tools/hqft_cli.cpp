// hqft_cli: build the Maxwell model from a config, run verification suites, export JSON artifacts.
// Exit codes: 0 all checks pass, 1 some check failed, 2 configuration or build error.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include <CLI11.hpp>

#include "hqft/json_io.hpp"
#include "hqft/suites.hpp"

using namespace hqft;
using namespace hqft::maxwell;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string config, out, what, format = "json";
    std::vector<std::string> suites, tolerances;
    int jobs = 1;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Config load_config(const Options& o) {
    Config cfg = default_config();
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) throw ConfigError("cannot read config file '" + o.config + "'");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(o.config + ": " + e.what());
        }
        cfg = config_from_json(j);
    }
    for (const auto& t : o.tolerances) apply_tolerance_override(cfg, t);
    return cfg;
}

// written next to the target and renamed, so readers never see a partial file
void emit(const Options& o, const std::string& text, const std::string& default_name) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    fs::path target = o.out;
    if (fs::is_directory(target)) target /= default_name;
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw ConfigError("cannot write '" + tmp.string() + "'");
        f << text;
    }
    fs::rename(tmp, target);
}

std::vector<std::string> expand_suites(const std::vector<std::string>& requested) {
    std::vector<std::string> out;
    auto known = suite_names();
    for (const auto& s : requested) {
        if (s == "all") {
            out.insert(out.end(), known.begin(), known.end());
        } else if (std::find(known.begin(), known.end(), s) == known.end()) {
            throw ConfigError("unknown suite '" + s + "'");
        } else {
            out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// merged report of the suites; suites run concurrently up to `jobs`
Report run_suites(const std::vector<std::string>& names, const Config& cfg, int jobs) {
    std::vector<Report> parts(names.size());
    std::size_t next = 0;
    while (next < names.size()) {
        std::vector<std::future<Report>> batch;
        for (int j = 0; j < std::max(1, jobs) && next < names.size(); ++j, ++next)
            batch.push_back(std::async(std::launch::async, [&cfg, name = names[next]] { return run_suite(name, cfg); }));
        for (std::size_t i = 0; i < batch.size(); ++i) parts[next - batch.size() + i] = batch[i].get();
    }
    Report all;
    for (const auto& p : parts) all.merge(p);
    return all;
}

nlohmann::json report_json(const std::vector<std::string>& names, const Report& r) {
    auto j = r.to_json();
    j["suites"] = names;
    return j;
}

int cmd_build(const Options& o) {
    Config cfg = load_config(o);
    SmallModel sm = build_small_model(cfg);
    nlohmann::json j;
    j["config"] = config_to_json(cfg);
    j["complex"] = complex_to_json(sm.L);
    nlohmann::json dims = nlohmann::json::object();
    for (const auto& [n, d] : cohomology(sm.L).dims) dims[std::to_string(n)] = d;
    j["cohomology"] = dims;
    j["tau"] = tau_table_json(sm);
    j["tau_rounding_residual"] = sm.tau_rounding_residual;
    j["algebra"] = algebra_to_json(*sm.A);
    emit(o, canonical_dump(j), "model.json");
    return 0;
}

int cmd_verify(const Options& o) {
    Config cfg = load_config(o);
    auto names = expand_suites(o.suites);
    Report r = run_suites(names, cfg, o.jobs);
    emit(o, canonical_dump(report_json(names, r)), "report.json");
    return r.pass() ? 0 : 1;
}

int cmd_verify_net(const Options& o) {
    Config cfg = load_config(o);
    std::vector<std::string> names{"categorical", "kg", "net"};
    Report r = run_suites(names, cfg, o.jobs);
    emit(o, canonical_dump(report_json(names, r)), "net_report.json");
    return r.pass() ? 0 : 1;
}

nlohmann::json rep_json(const MaxwellNet& mn, const GNSModel& g) {
    nlohmann::json j;
    const Site& S = mn.net.site;
    j["objects"] = S.objects;
    nlohmann::json arrows = nlohmann::json::array();
    for (const auto& a : S.arrows) arrows.push_back({{"name", a.name}, {"source", S.objects[a.source]}, {"target", S.objects[a.target]}});
    j["arrows"] = arrows;
    nlohmann::json mods = nlohmann::json::object();
    for (std::size_t c = 0; c < g.rep.module.size(); ++c) mods[S.objects[c]] = complex_to_json(*g.rep.module[c]->complex);
    j["modules"] = mods;
    nlohmann::json q = nlohmann::json::object();
    for (const auto& [n, d] : g.data.quotient_dim) q[std::to_string(n)] = d;
    j["gns_quotient_dims"] = q;
    j["cutoff"] = g.data.cutoff;
    j["algebra"] = algebra_to_json(*mn.global);
    return j;
}

int cmd_export(const Options& o) {
    if (o.format != "json") throw UsageError("unsupported format '" + o.format + "' (only json)");
    Config cfg = load_config(o);
    nlohmann::json j;
    if (o.what == "complex" || o.what == "cohomology") {
        auto L = small_complex();
        nlohmann::json dims = nlohmann::json::object();
        for (const auto& [n, d] : cohomology(L).dims) dims[std::to_string(n)] = d;
        j = o.what == "complex" ? nlohmann::json{{"complex", complex_to_json(L)}, {"cohomology", dims}} : dims;
    } else if (o.what == "algebra") {
        j = algebra_to_json(*build_small_model(cfg).A);
    } else if (o.what == "tau") {
        j = tau_table_json(build_small_model(cfg));
    } else if (o.what == "rep") {
        MaxwellNet mn = build_maxwell_net(cfg);
        j = rep_json(mn, build_gns(mn, std::min(cfg.gns_cutoff, 2)));
    } else if (o.what == "report") {
        auto names = expand_suites(o.suites.empty() ? std::vector<std::string>{"all"} : o.suites);
        Report r = run_suites(names, cfg, o.jobs);
        emit(o, canonical_dump(report_json(names, r)), "report.json");
        return r.pass() ? 0 : 1;
    } else {
        throw UsageError("unknown artifact '" + o.what + "'");
    }
    emit(o, canonical_dump(j), o.what + ".json");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nets of CCR algebras and the Maxwell model on the Lorentz cylinder"};
    app.require_subcommand(1);
    Options o;
    auto common = [&o](CLI::App* c) {
        c->add_option("--config", o.config, "model config (JSON)")->check(CLI::ExistingFile);
        c->add_option("--out", o.out, "output file or directory (default: stdout)");
        c->add_option("--jobs", o.jobs, "suites run concurrently")->check(CLI::PositiveNumber);
        c->add_option("--tolerance", o.tolerances, "override a tolerance, KEY=VAL (repeatable)");
    };
    auto* build = app.add_subcommand("build-model", "build the small model and its Poisson table");
    common(build);
    auto* verify = app.add_subcommand("verify", "run verification suites");
    common(verify);
    verify->add_option("--suite", o.suites, "suite name (repeatable; 'all' for every suite)");
    auto* exp = app.add_subcommand("export", "export a JSON artifact");
    common(exp);
    exp->add_option("--what", o.what, "complex | cohomology | algebra | tau | rep | report")->required();
    exp->add_option("--format", o.format, "output format (json)");
    exp->add_option("--suite", o.suites, "suites for --what report");
    auto* vnet = app.add_subcommand("verify-net", "check net, representation and adjunction axioms");
    common(vnet);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (build->parsed()) return cmd_build(o);
        if (verify->parsed()) return cmd_verify(o);
        if (exp->parsed()) return cmd_export(o);
        if (vnet->parsed()) return cmd_verify_net(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "build error: " << e.what() << "\n";
    }
    return 2;
}
