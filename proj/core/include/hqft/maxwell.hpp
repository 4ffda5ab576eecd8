#pragma once

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hqft/complex.hpp"
#include "hqft/spline.hpp"

namespace hqft::maxwell {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Components of the observable complex: F (0-forms in degree -2), A = A_S dtheta + dt A_T (degree -1),
// B = B_S dtheta + dt B_T (degree 0), G (0-forms in degree 1).
enum Leg { LegF = 0, LegAS, LegAT, LegBS, LegBT, LegG };
inline constexpr std::array<const char*, 6> leg_names{"F", "A_S", "A_T", "B_S", "B_T", "G"};

struct Diamond {
    std::string name;
    double t = 0, theta = 0, r = 0.1;
};

struct Config {
    Knots knots = uniform_knots(-1, 1, 15);
    int modes = 8;                                  // sectors k = 0..modes
    mpq_class kappa = mpq_class(710, 113);          // rational frequency scale of the exact layer
    std::array<std::pair<int, int>, 6> spaces{{{3, 1}, {3, 1}, {2, 0}, {1, -1}, {2, 0}, {1, -1}}};
    mpq_class slab_lo = mpq_class(-1, 3), slab_hi = mpq_class(1, 3);
    double harmonic_a = 0;  // symmetric part added to the harmonic two-point function
    int causality_modes = 128;
    int word_cutoff = 6;
    int gns_cutoff = 3;
    std::map<std::string, double> tol{{"pairing", 1e-9}, {"snap", 1e-10}, {"gns_gap", 1e-7},
                                      {"causality", 1e-9}, {"green", 1e-9}};
    std::vector<Diamond> diamonds{{"D1", 0, 0, 0.1}, {"D2", 0, 0.5, 0.1}, {"D3", 0, 0.05, 0.1}};
    Knots kg_knots{mpq_class(-1), mpq_class(-1, 2), mpq_class(0), mpq_class(1, 2), mpq_class(1)};

    double tolerance(const std::string& key) const;
};

Config default_config();
Config config_from_json(const nlohmann::json& j);  // throws ConfigError
nlohmann::json config_to_json(const Config& c);
// "key=value" override; unknown keys are an error
void apply_tolerance_override(Config& c, const std::string& assignment);

// Real angular sector: k = 0, or k >= 1 with type 1 (u = sin, v = cos) or type 2 (u = cos, v = -sin).
// Forms in a sector are f(t) u(theta) for 0-forms and a_S(t) v(theta) dtheta + a_T(t) u(theta) dt,
// so that u' = mu v and v' = -mu u.
struct Sector {
    int k = 0;
    int type = 0;
    bool operator==(const Sector& o) const { return k == o.k && type == o.type; }
    bool operator<(const Sector& o) const { return k != o.k ? k < o.k : type < o.type; }
    std::string name() const;
};
std::vector<Sector> sectors(int modes);
double sector_norm(const Sector& s);  // integral of u^2 over the circle
double num_mu(const Sector& s);       // 2 pi k

template <class P>
struct Form {
    Sector sector;
    int degree = 0;  // degree in the observable complex, -2..1
    P S, T;          // 0-forms use S only (T is zero)
};
using ExactForm = Form<PiecewisePoly>;
using NumForm = Form<NumProfile>;

inline bool is_function_degree(int degree) { return degree == -2 || degree == 1; }

// Differential of the observable complex in one sector:
//   -2: f -> -(mu f, f'),  -1: (a_S, a_T) -> (-a_S'' + mu a_T', mu a_S' - mu^2 a_T),  0: b -> -(b_T' + mu b_S)
template <class P, class R>
Form<P> apply_d(const Form<P>& x, const R& mu) {
    Form<P> y{x.sector, x.degree + 1, x.S.scaled(0), x.S.scaled(0)};
    switch (x.degree) {
        case -2:
            y.S = x.S.scaled(-mu);
            y.T = x.S.derivative().scaled(-1);
            break;
        case -1:
            y.S = x.S.derivative().derivative().scaled(-1) + x.T.derivative().scaled(mu);
            y.T = x.S.derivative().scaled(mu) + x.T.scaled(-mu * mu);
            break;
        case 0:
            y.S = (x.T.derivative() + x.S.scaled(mu)).scaled(-1);
            y.T = y.S.scaled(0);
            break;
        default:
            y.S = x.S.scaled(0);
            y.T = y.S;
            break;
    }
    return y;
}

// codifferential of a 1-form: b_T' + mu b_S
template <class P, class R>
P codiff(const Form<P>& x, const R& mu) {
    return x.T.derivative() + x.S.scaled(mu);
}

// ---- exact layer ----

class ExactModel {
public:
    ExactModel(const Config& c, Knots knots);

    const Knots& knots() const { return knots_; }
    const SplineSpace& space(Leg l) const { return spaces_[l]; }
    mpq_class mu(const Sector& s) const { return kappa_ * s.k; }
    std::size_t dim(int degree) const;
    std::vector<int> degrees() const { return {-2, -1, 0, 1}; }

    ExactForm form(const Sector& s, int degree, const std::vector<mpq_class>& coords) const;
    ExactForm basis_form(const Sector& s, int degree, std::size_t j) const;
    std::vector<mpq_class> coords(const ExactForm& x) const;  // throws SplineError if not in the spaces
    ExactForm zero_form(const Sector& s, int degree) const;

    CochainComplex sector_complex(const Sector& s) const;
    std::vector<std::string> labels(int degree) const;

private:
    Knots knots_;
    mpq_class kappa_;
    std::array<SplineSpace, 6> spaces_;
};

// Throws ConfigError when the differentials do not map the chosen spline spaces into each other.
void check_spline_typing(const Config& c);

// Even profile f with integral one used by the small model maps.
PiecewisePoly bump_profile(const Knots& knots);
// Normalized indicator of the central interval(s): even, integral one, piecewise constant.
PiecewisePoly box_profile(const Knots& knots);

// Small model: degree -1 {e_dagger}, degree 0 {a1, a2}, degree 1 {e}, zero differential.
CochainComplex small_complex();
CochainMap small_to_sector0(const ExactModel& m, const CochainComplex& L, const CochainComplex& L0);    // c
CochainMap sector0_to_small(const ExactModel& m, const CochainComplex& L0, const CochainComplex& L);    // c~

// Truncated solution complexes: sector 0 on polynomials, sector k on span{cos mu t, sin mu t}.
CochainComplex solution_complex(const Sector& s, const mpq_class& mu);
CochainComplex data_complex(const Sector& s, const mpq_class& mu);
CochainMap data_map(const Sector& s, const mpq_class& mu, const CochainComplex& sol, const CochainComplex& data);
// The retarded-minus-advanced propagator on sector 0 (exact: rational moments only).
CochainMap lambda_sector0(const ExactModel& m, const CochainComplex& L0, const CochainComplex& sol0);
// Poisson pairing on sector 0, exact (only moments enter).
mpq_class exact_poisson_sector0(const ExactForm& x, const ExactForm& y);
// Pushforward along a slab inclusion (extension by zero), sector s.
CochainMap extension_map(const ExactModel& slab, const ExactModel& full, const Sector& s, const CochainComplex& src,
                         const CochainComplex& tgt);

// ---- numeric layer (frequencies 2 pi k) ----

NumForm to_numeric(const ExactForm& x);
NumForm numeric_d(const NumForm& x);

struct LegTransform {
    double m0 = 0, m1 = 0;
    std::complex<double> E;  // integral of p e^{i omega t}
};
LegTransform leg_transform(const NumProfile& p, double omega);

// Precomputed transforms of a form; pairings below are O(1) in these.
struct FormData {
    Sector sector;
    int degree = 0;
    LegTransform S, T, delta;  // delta: codifferential of a 1-form
};
FormData form_data(const NumForm& x);

// W on time profiles of one sector (harmonic part for k = 0)
std::complex<double> w_leg(const Sector& s, const LegTransform& p, const LegTransform& q, double harmonic_a);
// integral of (G p) q and of (G p)' q, G the retarded-minus-advanced Green operator of d^2/dt^2 + omega^2
double green_pair(const Sector& s, const LegTransform& p, const LegTransform& q);
double green_derivative_pair(const Sector& s, const LegTransform& p, const LegTransform& q);

std::complex<double> omega2(const FormData& x, const FormData& y, double harmonic_a);
double poisson(const FormData& x, const FormData& y);  // tau = -(-1)^{floor(k/2)} <Lambda x, y>

// Pointwise retarded / advanced Green operators on a profile.
double green_retarded(const Sector& s, const NumProfile& p, double t);
double green_advanced(const Sector& s, const NumProfile& p, double t);
// integral of h(t) (G_pm p)(t), h on a knot grid on which G_pm p is smooth piecewise
double green_pm_pair(const Sector& s, const NumProfile& p, const NumProfile& h, bool retarded);
NumProfile box_op(const NumProfile& p, double mu);  // p'' + mu^2 p

// Space-time forms as finite mode sums: products rho(t) sigma(theta) per leg.
struct ProductTerm {
    NumProfile time, space;  // space profile on a theta-interval, read periodically
};
struct SpacetimeForm {
    int degree = 0;
    std::vector<ProductTerm> S, T;
};
// sector decomposition up to `modes`
std::vector<FormData> mode_decomposition(const SpacetimeForm& x, int modes);
double poisson_modes(const std::vector<FormData>& x, const std::vector<FormData>& y);
std::complex<double> omega2_modes(const std::vector<FormData>& x, const std::vector<FormData>& y, double harmonic_a);

}  // namespace hqft::maxwell
