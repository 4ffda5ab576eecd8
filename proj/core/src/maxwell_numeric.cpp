#include <algorithm>
#include <cmath>

#include "hqft/maxwell.hpp"

namespace hqft::maxwell {

using cd = std::complex<double>;

NumForm to_numeric(const ExactForm& x) {
    return {x.sector, x.degree, NumProfile::from(x.S), NumProfile::from(x.T)};
}

NumForm numeric_d(const NumForm& x) { return apply_d(x, num_mu(x.sector)); }

LegTransform leg_transform(const NumProfile& p, double omega) {
    if (p.is_zero()) return {};
    return {p.moment(0), p.moment(1), p.fourier(omega)};
}

FormData form_data(const NumForm& x) {
    double w = num_mu(x.sector);
    FormData d{x.sector, x.degree, leg_transform(x.S, w), leg_transform(x.T, w), {}};
    if (x.degree == -1 || x.degree == 0) d.delta = leg_transform(codiff(x, w), w);
    return d;
}

cd w_leg(const Sector& s, const LegTransform& p, const LegTransform& q, double harmonic_a) {
    if (s.k == 0) return cd(0, 0.5) * (p.m1 * q.m0 - p.m0 * q.m1) + 0.5 * harmonic_a * p.m0 * q.m0;
    return p.E * std::conj(q.E) / (2 * num_mu(s));
}

double green_pair(const Sector& s, const LegTransform& p, const LegTransform& q) {
    if (s.k == 0) return p.m0 * q.m1 - p.m1 * q.m0;
    return (p.E.real() * q.E.imag() - p.E.imag() * q.E.real()) / num_mu(s);
}

double green_derivative_pair(const Sector& s, const LegTransform& p, const LegTransform& q) {
    if (s.k == 0) return p.m0 * q.m0;
    return p.E.real() * q.E.real() + p.E.imag() * q.E.imag();
}

cd omega2(const FormData& x, const FormData& y, double harmonic_a) {
    if (!(x.sector == y.sector)) return 0;
    const Sector& s = x.sector;
    double n = sector_norm(s);
    if (x.degree == -1 && y.degree == 1) return -n * w_leg(s, x.delta, y.S, harmonic_a);
    if (x.degree == 0 && y.degree == 0) return n * (w_leg(s, x.S, y.S, harmonic_a) - w_leg(s, x.T, y.T, harmonic_a));
    if (x.degree == 1 && y.degree == -1) return n * w_leg(s, x.S, y.delta, harmonic_a);
    return 0;
}

double poisson(const FormData& x, const FormData& y) {
    if (!(x.sector == y.sector) || x.degree + y.degree != 0) return 0;
    const Sector& s = x.sector;
    double n = sector_norm(s);
    switch (x.degree) {
        case -1:  // Lambda x = G(delta x), paired with a 0-form; sign -(-1)^{-1} = +1
            return n * green_pair(s, x.delta, y.S);
        case 0:
            return -n * (green_pair(s, x.S, y.S) - green_pair(s, x.T, y.T));
        case 1:  // Lambda x = (mu G x, (G x)')
            return -n * (num_mu(s) * green_pair(s, x.S, y.S) - green_derivative_pair(s, x.S, y.T));
        default:
            return 0;
    }
}

double green_retarded(const Sector& s, const NumProfile& p, double t) {
    if (s.k == 0) return t * p.partial_moment(0, t) - p.partial_moment(1, t);
    double w = num_mu(s);
    cd e = p.partial_fourier(w, t);
    return (std::sin(w * t) * e.real() - std::cos(w * t) * e.imag()) / w;
}

double green_advanced(const Sector& s, const NumProfile& p, double t) {
    if (p.is_zero()) return 0;
    double full;
    if (s.k == 0) {
        full = t * p.moment(0) - p.moment(1);
    } else {
        double w = num_mu(s);
        cd e = p.fourier(w);
        full = (std::sin(w * t) * e.real() - std::cos(w * t) * e.imag()) / w;
    }
    return green_retarded(s, p, t) - full;
}

double green_pm_pair(const Sector& s, const NumProfile& p, const NumProfile& h, bool retarded) {
    if (p.is_zero() || h.is_zero()) return 0;
    std::vector<double> cuts = h.knots;
    for (double t : p.knots)
        if (t > h.knots.front() && t < h.knots.back()) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    // 20-point Gauss-Legendre nodes on [-1, 1]
    static const std::vector<std::pair<double, double>> nodes = [] {
        std::vector<std::pair<double, double>> out;
        const int n = 20;
        for (int i = 0; i < n; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5)), pp = 0;
            for (int it = 0; it < 100; ++it) {
                double p1 = 1, p2 = 0;
                for (int j = 1; j <= n; ++j) {
                    double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j - 1) * z * p2 - (j - 1.0) * p3) / j;
                }
                pp = n * (z * p1 - p2) / (z * z - 1);
                double dz = p1 / pp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            out.emplace_back(z, 2 / ((1 - z * z) * pp * pp));
        }
        return out;
    }();
    double acc = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        if (b - a <= 0) continue;
        for (auto [x, w] : nodes) {
            double t = 0.5 * (a + b) + 0.5 * (b - a) * x;
            double g = retarded ? green_retarded(s, p, t) : green_advanced(s, p, t);
            acc += 0.5 * (b - a) * w * h.eval(t) * g;
        }
    }
    return acc;
}

NumProfile box_op(const NumProfile& p, double mu) { return p.derivative().derivative() + p.scaled(mu * mu); }

namespace {

LegTransform combine(const LegTransform& a, const LegTransform& b, double c) {
    return {a.m0 + c * b.m0, a.m1 + c * b.m1, a.E + c * b.E};
}

// coefficients of sigma on the real angular basis: u-basis (T legs, 0-forms) or v-basis (dtheta legs)
double angular_coefficient(const NumProfile& sigma, const Sector& s, bool v_basis) {
    if (s.k == 0) return sigma.moment(0);
    cd F = sigma.fourier(num_mu(s));  // (cos, sin) moments
    double c;
    if (v_basis)
        c = s.type == 1 ? F.real() : -F.imag();
    else
        c = s.type == 1 ? F.imag() : F.real();
    return c / sector_norm(s);
}

}  // namespace

std::vector<FormData> mode_decomposition(const SpacetimeForm& x, int modes) {
    std::vector<FormData> out;
    bool one_form = x.degree == -1 || x.degree == 0;
    for (const Sector& s : sectors(modes)) {
        double w = num_mu(s);
        FormData d{s, x.degree, {}, {}, {}};
        for (const auto& t : x.S)
            d.S = combine(d.S, leg_transform(t.time, w), angular_coefficient(t.space, s, one_form));
        for (const auto& t : x.T) d.T = combine(d.T, leg_transform(t.time, w), angular_coefficient(t.space, s, false));
        if (one_form) {
            // transform of T' + mu S, using m0(T') = 0, m1(T') = -m0(T), E(T') = -i w E(T)
            d.delta = {w * d.S.m0, -d.T.m0 + w * d.S.m1, cd(0, -w) * d.T.E + w * d.S.E};
        }
        out.push_back(d);
    }
    return out;
}

double poisson_modes(const std::vector<FormData>& x, const std::vector<FormData>& y) {
    double acc = 0;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) acc += poisson(x[i], y[i]);
    return acc;
}

cd omega2_modes(const std::vector<FormData>& x, const std::vector<FormData>& y, double harmonic_a) {
    cd acc = 0;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) acc += omega2(x[i], y[i], harmonic_a);
    return acc;
}

}  // namespace hqft::maxwell
