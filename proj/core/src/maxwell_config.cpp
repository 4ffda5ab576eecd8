#include <set>

#include "hqft/maxwell.hpp"

namespace hqft::maxwell {

using nlohmann::json;

namespace {

mpq_class parse_q(const json& v, const std::string& what) {
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    if (v.is_string()) {
        mpq_class q;
        if (v.get<std::string>().empty() || q.set_str(v.get<std::string>(), 10) != 0)
            throw ConfigError(what + ": cannot parse rational '" + v.get<std::string>() + "'");
        if (q.get_den() == 0) throw ConfigError(what + ": zero denominator");
        q.canonicalize();
        return q;
    }
    throw ConfigError(what + ": expected a rational as a string \"p/q\" or an integer");
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

double parse_d(const json& v, const std::string& what) {
    if (!v.is_number()) throw ConfigError(what + ": expected a number");
    return v.get<double>();
}

int parse_i(const json& v, const std::string& what) {
    if (!v.is_number_integer()) throw ConfigError(what + ": expected an integer");
    return v.get<int>();
}

Knots parse_knots(const json& v, const std::string& what) {
    if (!v.is_array()) throw ConfigError(what + ": expected an array of rationals");
    Knots k;
    for (const auto& x : v) k.push_back(parse_q(x, what));
    return k;
}

void validate(const Config& c) {
    if (c.knots.size() < 4) throw ConfigError("grid: at least three intervals are needed");
    for (std::size_t i = 0; i + 1 < c.knots.size(); ++i)
        if (!(c.knots[i] < c.knots[i + 1])) throw ConfigError("grid: knots must be strictly increasing");
    for (std::size_t i = 0; i < c.knots.size(); ++i)
        if (c.knots[i] != -c.knots[c.knots.size() - 1 - i])
            throw ConfigError("grid: knots must be symmetric about t = 0 (the bump profile must be even)");
    if (c.modes < 0) throw ConfigError("modes must be >= 0");
    if (c.kappa <= 0) throw ConfigError("kappa must be positive");
    if (c.causality_modes < 1) throw ConfigError("causality_modes must be >= 1");
    if (c.word_cutoff < 2 || c.gns_cutoff < 1) throw ConfigError("cutoffs out of range");
    for (const auto& [k, v] : c.tol)
        if (!(v > 0)) throw ConfigError("tolerance '" + k + "' must be positive");
    for (const auto& d : c.diamonds)
        if (!(d.r > 0) || d.t - d.r < -1 || d.t + d.r > 1)
            throw ConfigError("diamond '" + d.name + "' must have r > 0 and lie in -1 < t < 1");
    check_spline_typing(c);
    try {
        Knots slab = sub_knots(c.knots, c.slab_lo, c.slab_hi);
        PiecewisePoly f = bump_profile(c.knots);
        f.restricted(slab);
    } catch (const SplineError& e) {
        throw ConfigError(std::string("slab: ") + e.what() + " (the slab must consist of knots and contain the bump)");
    }
    if (c.kg_knots.size() < 4) throw ConfigError("kg_knots: at least three intervals are needed");
}

}  // namespace

double Config::tolerance(const std::string& key) const {
    auto it = tol.find(key);
    if (it == tol.end()) throw ConfigError("unknown tolerance '" + key + "'");
    return it->second;
}

Config default_config() {
    Config c;
    validate(c);
    return c;
}

Config config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known{"grid",        "knots",           "modes",       "kappa",
                                             "spline_spaces", "slab",          "harmonic_a",  "causality_modes",
                                             "word_cutoff", "gns_cutoff",      "tolerances",  "diamonds",
                                             "kg_knots"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
    Config c;
    try {
        if (j.contains("grid") && j.contains("knots")) throw ConfigError("give either 'grid' or 'knots', not both");
        if (j.contains("grid")) {
            const auto& g = j["grid"];
            if (!g.is_object()) throw ConfigError("grid: expected {min, max, intervals}");
            c.knots = uniform_knots(parse_q(g.value("min", json(-1)), "grid.min"),
                                    parse_q(g.value("max", json(1)), "grid.max"),
                                    parse_i(g.value("intervals", json(15)), "grid.intervals"));
        }
        if (j.contains("knots")) c.knots = parse_knots(j["knots"], "knots");
        if (j.contains("modes")) c.modes = parse_i(j["modes"], "modes");
        if (j.contains("kappa")) c.kappa = parse_q(j["kappa"], "kappa");
        if (j.contains("spline_spaces")) {
            const auto& s = j["spline_spaces"];
            if (!s.is_object()) throw ConfigError("spline_spaces: expected an object keyed by component");
            for (auto it = s.begin(); it != s.end(); ++it) {
                int leg = -1;
                for (int l = 0; l < 6; ++l)
                    if (it.key() == leg_names[l]) leg = l;
                if (leg < 0) throw ConfigError("spline_spaces: unknown component '" + it.key() + "'");
                const auto& v = it.value();
                if (!v.is_array() || v.size() != 2)
                    throw ConfigError("spline_spaces." + it.key() + ": expected [degree, smoothness]");
                c.spaces[leg] = {parse_i(v[0], "degree"), parse_i(v[1], "smoothness")};
            }
        }
        if (j.contains("slab")) {
            const auto& s = j["slab"];
            if (!s.is_array() || s.size() != 2) throw ConfigError("slab: expected [lo, hi]");
            c.slab_lo = parse_q(s[0], "slab");
            c.slab_hi = parse_q(s[1], "slab");
        }
        if (j.contains("harmonic_a")) c.harmonic_a = parse_d(j["harmonic_a"], "harmonic_a");
        if (j.contains("causality_modes")) c.causality_modes = parse_i(j["causality_modes"], "causality_modes");
        if (j.contains("word_cutoff")) c.word_cutoff = parse_i(j["word_cutoff"], "word_cutoff");
        if (j.contains("gns_cutoff")) c.gns_cutoff = parse_i(j["gns_cutoff"], "gns_cutoff");
        if (j.contains("tolerances")) {
            const auto& t = j["tolerances"];
            if (!t.is_object()) throw ConfigError("tolerances: expected an object");
            for (auto it = t.begin(); it != t.end(); ++it) {
                if (!c.tol.count(it.key())) throw ConfigError("unknown tolerance '" + it.key() + "'");
                c.tol[it.key()] = parse_d(it.value(), "tolerances." + it.key());
            }
        }
        if (j.contains("diamonds")) {
            c.diamonds.clear();
            for (const auto& d : j["diamonds"]) {
                Diamond x;
                x.name = d.value("name", "D" + std::to_string(c.diamonds.size() + 1));
                x.t = parse_d(d.value("t", json(0.0)), "diamond.t");
                x.theta = parse_d(d.value("theta", json(0.0)), "diamond.theta");
                x.r = parse_d(d.value("r", json(0.1)), "diamond.r");
                c.diamonds.push_back(x);
            }
        }
        if (j.contains("kg_knots")) c.kg_knots = parse_knots(j["kg_knots"], "kg_knots");
    } catch (const SplineError& e) {
        throw ConfigError(e.what());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    validate(c);
    return c;
}

json config_to_json(const Config& c) {
    json j;
    json k = json::array();
    for (const auto& t : c.knots) k.push_back(q_str(t));
    j["knots"] = k;
    j["modes"] = c.modes;
    j["kappa"] = q_str(c.kappa);
    json s;
    for (int l = 0; l < 6; ++l) s[leg_names[l]] = {c.spaces[l].first, c.spaces[l].second};
    j["spline_spaces"] = s;
    j["slab"] = {q_str(c.slab_lo), q_str(c.slab_hi)};
    j["harmonic_a"] = c.harmonic_a;
    j["causality_modes"] = c.causality_modes;
    j["word_cutoff"] = c.word_cutoff;
    j["gns_cutoff"] = c.gns_cutoff;
    j["tolerances"] = c.tol;
    json d = json::array();
    for (const auto& x : c.diamonds) d.push_back({{"name", x.name}, {"t", x.t}, {"theta", x.theta}, {"r", x.r}});
    j["diamonds"] = d;
    json kg = json::array();
    for (const auto& t : c.kg_knots) kg.push_back(q_str(t));
    j["kg_knots"] = kg;
    return j;
}

void apply_tolerance_override(Config& c, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("tolerance override must look like KEY=VALUE");
    std::string key = assignment.substr(0, eq);
    if (!c.tol.count(key)) throw ConfigError("unknown tolerance '" + key + "'");
    double v = 0;
    try {
        std::size_t used = 0;
        v = std::stod(assignment.substr(eq + 1), &used);
        if (used != assignment.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw ConfigError("tolerance '" + key + "': value is not a number");
    }
    if (!(v > 0)) throw ConfigError("tolerance '" + key + "' must be positive");
    c.tol[key] = v;
}

}  // namespace hqft::maxwell
