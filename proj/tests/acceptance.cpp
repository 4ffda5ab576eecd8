// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <iostream>

#include "hqft/suites.hpp"

using namespace hqft::maxwell;

namespace {

struct Timed {
    Report report;
    double seconds = 0;
};

Timed timed(const std::string& suite, const Config& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    Report r = run_suite(suite, cfg);
    return {r, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

struct Criterion {
    int id;
    std::string title;
    bool pass = true;
    std::vector<std::string> notes;

    void need(const Report& r, const std::string& name) {
        const CheckRecord* c = r.find(name);
        if (!c) {
            pass = false;
            notes.push_back(name + ": missing");
        } else if (!c->pass) {
            pass = false;
            notes.push_back(name + ": " + c->witness.dump());
        }
    }
    void need_all(const Report& r) {
        for (const auto& c : r.checks) need(r, c.name);
    }
    void within(const std::string& what, double seconds, double limit) {
        if (seconds >= limit) {
            pass = false;
            notes.push_back(what + " took " + std::to_string(seconds) + " s (limit " + std::to_string(limit) + " s)");
        }
    }
};

}  // namespace

int main() {
    const Config cfg = default_config();
    std::vector<Criterion> out;

    auto small = timed("small-model", cfg);
    auto slice = timed("timeslice", cfg);
    {
        Criterion c{1, "exact small model"};
        for (auto n : {"small.ct_c_identity", "small.cohomology_L", "small.tau_rounding", "small.tau_table"})
            c.need(small.report, n);
        c.within("small-model suite", small.seconds, 10);
        out.push_back(c);
    }
    {
        Criterion c{2, "quasi-isomorphisms and time-slice"};
        for (auto n : {"small.c_quasi_iso", "small.cohomology_truncated", "small.q_weak_equivalence"})
            c.need(small.report, n);
        for (auto n : {"timeslice.data_lambda_quasi_iso", "timeslice.slab_quasi_iso", "timeslice.triangle"})
            c.need(slice.report, n);
        c.within("small-model + timeslice suites", small.seconds + slice.seconds, 60);
        out.push_back(c);
    }
    {
        Criterion c{3, "two-point function"};
        auto r = timed("two-point", cfg).report;
        for (int i = 1; i <= 6; ++i) c.need(r, "two_point.condition" + std::to_string(i));
        c.need(r, "two_point.antisymmetry");
        c.need(r, "two_point.small_antisymmetry");
        c.need(r, "two_point.box_probe");
        out.push_back(c);
    }
    {
        Criterion c{4, "CCR algebra"};
        c.need_all(timed("ccr", cfg).report);
        out.push_back(c);
    }
    {
        Criterion c{5, "GNS construction"};
        c.need_all(timed("gns", cfg).report);
        out.push_back(c);
    }
    {
        Criterion c{6, "categorical structure"};
        c.need_all(timed("categorical", cfg).report);
        c.need(timed("net", cfg).report, "net.validate_rep");
        out.push_back(c);
    }
    {
        Criterion c{7, "Klein-Gordon comparison"};
        auto r = timed("kg", cfg).report;
        for (auto n : {"kg.weak_equivalence", "kg.phi_dagger_regular", "kg.phi_dagger_restricted", "kg.quillen_unit"})
            c.need(r, n);
        out.push_back(c);
    }
    {
        Criterion c{8, "causality"};
        auto r = timed("causality", cfg).report;
        c.need(r, "causality.disjoint");
        c.need(r, "causality.overlapping");
        out.push_back(c);
    }

    bool all = true;
    for (const auto& c : out) {
        std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << "\n";
        for (const auto& n : c.notes) std::cout << "    " << n << "\n";
        all = all && c.pass;
    }
    return all ? 0 : 1;
}
