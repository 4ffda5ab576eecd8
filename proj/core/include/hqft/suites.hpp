#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hqft/maxwell.hpp"
#include "hqft/nets.hpp"
#include "hqft/state.hpp"

namespace hqft::maxwell {

struct CheckRecord {
    std::string name;
    std::string ref;  // short statement of the property being checked
    bool pass = false;
    double residual = 0;
    nlohmann::json witness;  // always set on failure
};

struct Report {
    std::vector<CheckRecord> checks;

    void add(std::string name, std::string ref, bool pass, double residual = 0, nlohmann::json witness = nullptr);
    // residual check against a tolerance
    void within(std::string name, std::string ref, double residual, double tol, nlohmann::json witness = nullptr);
    void merge(const Report& o);
    bool pass() const;
    const CheckRecord* find(const std::string& name) const;
    nlohmann::json to_json() const;  // sorted by name
};

// Small model: L, the maps c and c~, the exact Poisson table obtained by rounding the numeric one,
// the CCR algebra A and the exact (snapped) two-point table on its generators.
struct SmallModel {
    std::shared_ptr<ExactModel> model;
    CochainComplex L, L0;
    CochainMap c, ct;
    std::vector<std::pair<std::string, FormData>> images;  // numeric c(x) per generator name
    std::map<std::pair<std::string, std::string>, double> tau_numeric;
    double tau_rounding_residual = 0;
    std::vector<TauEntry> tau;
    AlgebraPtr A;
    Matrix two_point;  // PBW generator indices
    std::vector<std::vector<std::complex<double>>> two_point_numeric;
};
SmallModel build_small_model(const Config& cfg);
// key "(x,y)" -> exact value, the integer table exported by the CLI
nlohmann::json tau_table_json(const SmallModel& s);

// Finite Maxwell net on the poset {D1, D2, D3} <= M: one co-exact degree-0 generator per diamond,
// the small-model generators at M, Poisson values snapped to rationals.
struct MaxwellNet {
    Net net;
    int top = 0;  // object index of M
    AlgebraPtr global;
    std::vector<std::string> names;                          // generator names at M (declaration order)
    std::vector<std::vector<FormData>> modes;                // per generator, by declaration order
    std::vector<std::vector<std::complex<double>>> w2_numeric;  // PBW index order
    Matrix w2_exact;                                            // PBW index order
    double max_snap_error = 0;
};
MaxwellNet build_maxwell_net(const Config& cfg);
SpacetimeForm diamond_generator(const Diamond& d);
// local test forms of every degree supported in the inscribed box of the diamond
std::vector<std::pair<std::string, SpacetimeForm>> diamond_test_forms(const Diamond& d);

struct GNSModel {
    GNSData data;
    RealizedPtr module;
    NetRep rep;  // constant net representation at M
};
GNSModel build_gns(const MaxwellNet& mn, int cutoff);

// Klein-Gordon comparison (massless, spatially constant sector) on the chain of slabs
// [-1/2,1/2] <= [-1,1/2] <= [-1,1].
// Held by pointer: phi refers to the two nets.
struct KGModel {
    Net tilde, reduced;  // BV-type net (phi_dagger -> phi) and the CCR net on the two moments
    NetMorphism phi;
    std::vector<Knots> grids;  // per object
};
std::unique_ptr<KGModel> build_kg(const Config& cfg);

// Suites. Each is deterministic; names are unique within a suite.
Report run_small_model(const Config& cfg);
Report run_two_point(const Config& cfg);
Report run_timeslice(const Config& cfg);
Report run_causality(const Config& cfg);
Report run_ccr(const Config& cfg, unsigned seed = 7);
Report run_gns(const Config& cfg);
Report run_kg(const Config& cfg);
Report run_net(const Config& cfg);
Report run_categorical(const Config& cfg, unsigned seed = 11);

std::vector<std::string> suite_names();
Report run_suite(const std::string& name, const Config& cfg);  // throws ConfigError for unknown names

}  // namespace hqft::maxwell
