#include "doctest.h"

#include <cmath>
#include <functional>

#include "hqft/json_io.hpp"
#include "hqft/suites.hpp"

using namespace hqft;
using namespace hqft::maxwell;
using cd = std::complex<double>;

namespace {

// 5-point Gauss-Legendre on `pieces` subintervals of every knot interval; never evaluates at a knot,
// so discontinuous profiles are integrated correctly.
double quad(const std::function<double(double)>& f, const std::vector<double>& cuts, int pieces = 16) {
    static const double x[5] = {0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
    static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                                0.2369268850561891};
    double acc = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        for (int p = 0; p < pieces; ++p) {
            double a = cuts[i] + (cuts[i + 1] - cuts[i]) * p / pieces;
            double b = cuts[i] + (cuts[i + 1] - cuts[i]) * (p + 1) / pieces;
            for (int k = 0; k < 5; ++k) acc += 0.5 * (b - a) * w[k] * f(0.5 * (a + b) + 0.5 * (b - a) * x[k]);
        }
    return acc;
}

double quad(const NumProfile& p, const std::function<double(double)>& weight, int pieces = 16) {
    return quad([&](double t) { return p.eval(t) * weight(t); }, p.knots, pieces);
}

double moment(const NumProfile& p, int j) {
    return quad(p, [j](double t) { return std::pow(t, j); });
}

// W on sector-0 profiles from the moment formula, moments by quadrature
cd w_harmonic(const NumProfile& p, const NumProfile& q) {
    return cd(0, 0.5) * (moment(p, 1) * moment(q, 0) - moment(p, 0) * moment(q, 1));
}

const Sector kS0{0, 0};

}  // namespace

TEST_CASE("bump and box profiles have unit mass and are even") {
    auto K = default_config().knots;
    for (const auto& p : {bump_profile(K), box_profile(K)}) {
        CHECK(p.moment(0) == 1);
        CHECK(p.moment(1) == 0);
        NumProfile n = NumProfile::from(p);
        CHECK(moment(n, 0) == doctest::Approx(1).epsilon(1e-12));
        CHECK(std::abs(moment(n, 1)) < 1e-13);
    }
    CHECK(SplineSpace(3, 1, K).contains(bump_profile(K)));
    CHECK(SplineSpace(1, -1, K).contains(box_profile(K)));
}

TEST_CASE("small model: c~ c = id and H(L)") {
    auto sm = build_small_model(default_config());
    auto Lp = std::make_shared<CochainComplex>(sm.L);
    CHECK(maps_equal(compose(sm.ct, sm.c), identity_map(Lp)));
    CHECK(is_chain_map(sm.c));
    CHECK(is_chain_map(sm.ct));
    CHECK(is_quasi_iso(sm.c));
    auto H = cohomology(sm.L);
    CHECK(H.dims == std::map<int, std::size_t>{{-1, 1}, {0, 2}, {1, 1}});
}

TEST_CASE("Poisson table of the small model") {
    auto sm = build_small_model(default_config());
    const auto& A = *sm.A;
    auto tau = [&](const char* x, const char* y) { return A.tau(A.index(x), A.index(y)); };
    CHECK(tau("e", "e_dagger") == Scalar(1));
    CHECK(tau("a2", "a1") == Scalar(1));
    for (const char* a : {"a1", "a2"})
        for (const char* e : {"e", "e_dagger"}) {
            CHECK(tau(a, e) == Scalar(0));
            CHECK(tau(e, a) == Scalar(0));
        }
    CHECK(sm.tau_rounding_residual < 1e-9);
    auto j = tau_table_json(sm);
    CHECK(j["(e,e_dagger)"] == 1);
    CHECK(j["(a2,a1)"] == 1);
    CHECK(j["(a1,a2)"] == -1);
    CHECK(j["(a1,e)"] == 0);
}

TEST_CASE("two-point values of the small model against quadrature moments") {
    auto cfg = default_config();
    auto sm = build_small_model(cfg);
    std::map<std::string, FormData> img(sm.images.begin(), sm.images.end());
    NumProfile f = NumProfile::from(bump_profile(cfg.knots)), g = NumProfile::from(box_profile(cfg.knots));
    // a1 = (g, 0), a2 = (-f', 0) as 1-forms; e_dagger = (0, f) with codifferential f'; e = g
    NumProfile mf1 = f.derivative().scaled(-1);
    cd a1a2 = w_harmonic(g, mf1);
    cd a2a1 = w_harmonic(mf1, g);
    cd e_ed = w_harmonic(g, f.derivative());
    CHECK(std::abs(a1a2 - cd(0, -0.5)) < 1e-12);
    CHECK(std::abs(a2a1 - cd(0, 0.5)) < 1e-12);
    CHECK(std::abs(e_ed - cd(0, 0.5)) < 1e-12);
    CHECK(std::abs(omega2(img["a1"], img["a2"], 0) - a1a2) < 1e-9);
    CHECK(std::abs(omega2(img["a2"], img["a1"], 0) - a2a1) < 1e-9);
    CHECK(std::abs(omega2(img["e"], img["e_dagger"], 0) - e_ed) < 1e-9);
    CHECK(std::abs(omega2(img["e_dagger"], img["e"], 0) - e_ed) < 1e-9);
    CHECK(std::abs(omega2(img["a1"], img["a1"], 0)) < 1e-12);
}

TEST_CASE("Green pairing against a product-to-sum quadrature") {
    auto cfg = default_config();
    SplineSpace F(3, 1, cfg.knots), G(1, -1, cfg.knots);
    for (const Sector& s : {Sector{0, 0}, Sector{1, 1}, Sector{3, 2}}) {
        double w = num_mu(s);
        for (auto [i, j] : {std::pair{0, 5}, std::pair{7, 3}, std::pair{12, 12}}) {
            NumProfile p = NumProfile::from(F.basis(i)), q = NumProfile::from(G.basis(j));
            double want;
            if (s.k == 0) {
                // kernel t - s
                want = moment(q, 1) * moment(p, 0) - moment(q, 0) * moment(p, 1);
            } else {
                // kernel sin(w (t - s)) / w = (sin wt cos ws - cos wt sin ws) / w
                auto sn = [w](double t) { return std::sin(w * t); };
                auto cs = [w](double t) { return std::cos(w * t); };
                want = (quad(q, sn) * quad(p, cs) - quad(q, cs) * quad(p, sn)) / w;
            }
            double got = green_pair(s, leg_transform(p, w), leg_transform(q, w));
            CHECK(got == doctest::Approx(want).epsilon(1e-10).scale(1));
        }
    }
}

TEST_CASE("retarded and advanced Green operators against direct quadrature") {
    auto cfg = default_config();
    SplineSpace F(3, 1, cfg.knots);
    NumProfile p = NumProfile::from(F.basis(9)) + NumProfile::from(F.basis(14)).scaled(-2);
    for (const Sector& s : {Sector{0, 0}, Sector{2, 1}}) {
        double w = num_mu(s);
        auto kernel = [&](double u) { return s.k == 0 ? u : std::sin(w * u) / w; };
        for (double t : {-0.8, -0.05, 0.3, 0.95}) {
            std::vector<double> lo, hi;
            for (double k : p.knots) {
                if (k < t) lo.push_back(k);
                if (k > t) hi.push_back(k);
            }
            lo.push_back(t);
            hi.insert(hi.begin(), t);
            auto integrand = [&](double u) { return kernel(t - u) * p.eval(u); };
            double ret = lo.size() > 1 ? quad(integrand, lo) : 0;
            double adv = hi.size() > 1 ? -quad(integrand, hi) : 0;
            CHECK(green_retarded(s, p, t) == doctest::Approx(ret).epsilon(1e-10).scale(1));
            CHECK(green_advanced(s, p, t) == doctest::Approx(adv).epsilon(1e-10).scale(1));
        }
    }
}

TEST_CASE("exact and numeric Poisson pairings agree on the harmonic sector") {
    auto cfg = default_config();
    cfg.knots = uniform_knots(-1, 1, 5);
    ExactModel m(cfg, cfg.knots);
    double worst = 0;
    for (int n : {-1, 0, 1})
        for (std::size_t i = 0; i < m.dim(n); ++i)
            for (std::size_t j = 0; j < m.dim(-n); ++j) {
                auto x = m.basis_form(kS0, n, i), y = m.basis_form(kS0, -n, j);
                double exact = exact_poisson_sector0(x, y).get_d();
                double num = poisson(form_data(to_numeric(x)), form_data(to_numeric(y)));
                worst = std::max(worst, std::abs(exact - num));
            }
    CHECK(worst < 1e-12);
}

TEST_CASE("angular coefficients of a product form") {
    NumProfile rho = NumProfile::from(quadratic_bspline(uniform_knots(-1, 1, 3), 0));
    NumProfile sigma = NumProfile::from(quadratic_bspline(uniform_knots(mpq_class(-1, 5), mpq_class(2, 5), 3), 0));
    SpacetimeForm x{1, {{rho, sigma}}, {}};
    auto modes = mode_decomposition(x, 3);
    auto sectors_ = sectors(3);
    REQUIRE(modes.size() == sectors_.size());
    double m0 = moment(rho, 0);
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const Sector& s = sectors_[i];
        double w = num_mu(s);
        auto u = [&](double th) { return s.k == 0 ? 1.0 : s.type == 1 ? std::sin(w * th) : std::cos(w * th); };
        double c = quad(sigma, u) / sector_norm(s);
        CHECK(modes[i].S.m0 == doctest::Approx(m0 * c).epsilon(1e-12).scale(1));
    }
}

TEST_CASE("configuration parsing and validation") {
    auto cfg = default_config();
    auto j = config_to_json(cfg);
    auto back = config_from_json(j);
    CHECK(config_to_json(back) == j);
    CHECK_THROWS_AS(config_from_json({{"bogus", 1}}), ConfigError);
    CHECK_THROWS_AS(config_from_json({{"knots", {"-1", "0", "1/2"}}}), ConfigError);
    CHECK_THROWS_AS(config_from_json({{"tolerances", {{"pairing", -1}}}}), ConfigError);
    apply_tolerance_override(cfg, "pairing=1e-12");
    CHECK(cfg.tolerance("pairing") == 1e-12);
    CHECK_THROWS_AS(apply_tolerance_override(cfg, "nope=1"), ConfigError);
    CHECK_THROWS_AS(apply_tolerance_override(cfg, "pairing"), ConfigError);
}

TEST_CASE("reports are sorted, deterministic and carry witnesses") {
    auto cfg = default_config();
    auto a = run_suite("ccr", cfg).to_json(), b = run_suite("ccr", cfg).to_json();
    CHECK(a.dump() == b.dump());
    std::vector<std::string> names;
    for (const auto& c : a["checks"]) names.push_back(c["name"]);
    CHECK(std::is_sorted(names.begin(), names.end()));
    CHECK_THROWS_AS(run_suite("nonsense", cfg), ConfigError);

    cfg.tol["pairing"] = 1e-30;
    auto r = run_two_point(cfg);
    CHECK_FALSE(r.pass());
    for (const auto& c : r.checks)
        if (!c.pass) CHECK_FALSE(c.witness.is_null());
}

TEST_CASE("degree-0 Gram matrix of the harmonic state") {
    auto sm = build_small_model(default_config());
    const auto& A = *sm.A;
    auto w = exact_state(A, sm.two_point);
    int a1 = A.index("a1"), a2 = A.index("a2");
    auto G = star_gram(A, w, {{}, {a1}, {a2}});
    // omega(1) = 1, omega(a_i) = 0, omega(a_i a_i) = 0, omega(a1 a2) = -i/2 = -omega(a2 a1)
    Scalar h(mpq_class(0), mpq_class(1, 2));
    Matrix want(3, 3);
    want(0, 0) = Scalar(1);
    want(1, 2) = -h;
    want(2, 1) = h;
    CHECK(G == want);
    CHECK(min_eigenvalue(G) == doctest::Approx(-0.5));
}

TEST_CASE("causality of the diamond pairings") {
    auto r = run_causality(default_config());
    CHECK(r.find("causality.disjoint")->pass);
    CHECK(r.find("causality.overlapping")->pass);
    CHECK(r.find("causality.disjoint")->residual < 1e-9);
}

TEST_CASE("Klein-Gordon comparison") {
    auto r = run_kg(default_config());
    for (const auto& c : r.checks) CHECK_MESSAGE(c.pass, c.name);
}

TEST_CASE("exported algebra round-trips") {
    auto sm = build_small_model(default_config());
    auto j = algebra_to_json(*sm.A);
    auto back = algebra_from_json(j);
    CHECK(algebra_to_json(*back) == j);
    CHECK(back->tau_matrix() == sm.A->tau_matrix());
}
