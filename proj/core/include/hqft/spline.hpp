#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hqft {

class SplineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Knots = std::vector<mpq_class>;

// Piecewise polynomial on a knot grid, zero outside [knots.front(), knots.back()].
// Interval i carries coefficients in the local variable s = t - knots[i].
struct PiecewisePoly {
    Knots knots;
    std::vector<std::vector<mpq_class>> coef;

    static PiecewisePoly zero(const Knots& knots);
    std::size_t intervals() const { return coef.size(); }
    int degree() const;  // -1 for the zero function

    PiecewisePoly derivative() const;
    PiecewisePoly operator+(const PiecewisePoly& o) const;
    PiecewisePoly operator-(const PiecewisePoly& o) const;
    PiecewisePoly scaled(const mpq_class& s) const;
    // multiply by (a + b t)
    PiecewisePoly times_linear(const mpq_class& a, const mpq_class& b) const;

    mpq_class left_value(std::size_t i) const;   // limit at knots[i] from the right
    mpq_class right_value(std::size_t i) const;  // limit at knots[i+1] from the left
    mpq_class eval(std::size_t i, const mpq_class& t) const;
    mpq_class moment(int j) const;  // integral of t^j p
    bool is_zero() const;
    bool operator==(const PiecewisePoly& o) const { return knots == o.knots && trimmed() == o.trimmed(); }

    // Same function on a finer grid that contains this grid as a contiguous block.
    PiecewisePoly extended(const Knots& full) const;
    // Restriction to a contiguous sub-grid; throws if the function does not vanish outside it.
    PiecewisePoly restricted(const Knots& sub) const;
    PiecewisePoly reflected() const;  // t -> -t on a symmetric grid

private:
    std::vector<std::vector<mpq_class>> trimmed() const;
};

// Compactly supported spline spaces S(r, s): degree r, smoothness C^s (s = -1 means discontinuous),
// vanishing to order s at both ends of the grid. Supported: S(3,1), S(2,0), S(1,-1).
class SplineSpace {
public:
    SplineSpace() = default;
    SplineSpace(int degree, int smoothness, Knots knots);

    int degree() const { return degree_; }
    int smoothness() const { return smoothness_; }
    const Knots& knots() const { return knots_; }
    std::size_t dim() const { return basis_.size(); }
    const PiecewisePoly& basis(std::size_t j) const { return basis_[j]; }
    std::string name() const;

    bool contains(const PiecewisePoly& p) const;
    // coordinates in this basis; throws SplineError if p is not in the space
    std::vector<mpq_class> coords(const PiecewisePoly& p) const;
    PiecewisePoly combine(const std::vector<mpq_class>& c) const;

private:
    int degree_ = 0, smoothness_ = 0;
    Knots knots_;
    std::vector<PiecewisePoly> basis_;
};

// S(r,s) is contained in S(r',s') and maps onto derivatives in S(r-1,s-1)
bool spline_space_included(int r, int s, int r2, int s2);

// Quadratic B-spline on knots[a..a+3], scaled to integral one.
PiecewisePoly quadratic_bspline(const Knots& knots, std::size_t a);
Knots uniform_knots(const mpq_class& lo, const mpq_class& hi, int intervals);
// Contiguous sub-grid of knots lying in [lo, hi].
Knots sub_knots(const Knots& knots, const mpq_class& lo, const mpq_class& hi);

// Double-precision copy used by the numeric layer.
struct NumProfile {
    std::vector<double> knots;
    std::vector<std::vector<double>> coef;  // local coefficients as in PiecewisePoly

    static NumProfile from(const PiecewisePoly& p);
    static NumProfile zero();
    bool is_zero() const { return coef.empty(); }
    NumProfile derivative() const;
    NumProfile scaled(double s) const;
    NumProfile operator+(const NumProfile& o) const;  // same grid or one side zero
    double eval(double t) const;
    double moment(int j) const;
    // integral of t^j p over (-inf, t]
    double partial_moment(int j, double t) const;
    // integral of p(t) e^{i w t}
    std::complex<double> fourier(double w) const;
    // integral of p(t') e^{i w t'} over (-inf, t]
    std::complex<double> partial_fourier(double w, double t) const;
    // integral of p * q on the common grid
    double inner(const NumProfile& q) const;
};

// Integral of q(s) e^{i w s} over [0, h] for a polynomial in s (ascending coefficients).
std::complex<double> poly_exp_integral(const std::vector<double>& q, double w, double h);

}  // namespace hqft
