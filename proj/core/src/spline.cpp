#include "hqft/spline.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hqft {

namespace {

mpq_class binom(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return mpq_class(r);
}

mpq_class qpow(const mpq_class& x, int n) {
    mpq_class r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// integral over s in [0, u] of s^k (t0 + s)^j
mpq_class local_moment(const mpq_class& t0, const mpq_class& u, int k, int j) {
    mpq_class acc = 0;
    for (int l = 0; l <= j; ++l) acc += binom(j, l) * qpow(t0, j - l) * qpow(u, k + l + 1) / (k + l + 1);
    return acc;
}

double local_moment(double t0, double u, int k, int j) {
    double acc = 0;
    for (int l = 0; l <= j; ++l) {
        double b = 1;
        for (int m = 0; m < l; ++m) b = b * (j - m) / (m + 1);
        acc += b * std::pow(t0, j - l) * std::pow(u, k + l + 1) / (k + l + 1);
    }
    return acc;
}

void trim(std::vector<mpq_class>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

std::size_t find_offset(const Knots& full, const Knots& sub) {
    for (std::size_t off = 0; off + sub.size() <= full.size(); ++off)
        if (std::equal(sub.begin(), sub.end(), full.begin() + off)) return off;
    throw SplineError("grid is not a contiguous block of the ambient grid");
}

}  // namespace

PiecewisePoly PiecewisePoly::zero(const Knots& knots) {
    if (knots.size() < 2) throw SplineError("grid needs at least two knots");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        if (!(knots[i] < knots[i + 1])) throw SplineError("knots must be strictly increasing");
    PiecewisePoly p;
    p.knots = knots;
    p.coef.assign(knots.size() - 1, {});
    return p;
}

int PiecewisePoly::degree() const {
    int d = -1;
    for (auto c : coef) {
        trim(c);
        d = std::max(d, static_cast<int>(c.size()) - 1);
    }
    return d;
}

std::vector<std::vector<mpq_class>> PiecewisePoly::trimmed() const {
    auto out = coef;
    for (auto& c : out) trim(c);
    return out;
}

bool PiecewisePoly::is_zero() const { return degree() < 0; }

PiecewisePoly PiecewisePoly::derivative() const {
    PiecewisePoly r = *this;
    for (auto& c : r.coef) {
        if (c.empty()) continue;
        for (std::size_t k = 1; k < c.size(); ++k) c[k - 1] = c[k] * static_cast<long>(k);
        c.pop_back();
    }
    return r;
}

PiecewisePoly PiecewisePoly::operator+(const PiecewisePoly& o) const {
    if (knots != o.knots) throw SplineError("adding piecewise polynomials on different grids");
    PiecewisePoly r = *this;
    for (std::size_t i = 0; i < coef.size(); ++i) {
        auto& c = r.coef[i];
        if (c.size() < o.coef[i].size()) c.resize(o.coef[i].size(), 0);
        for (std::size_t k = 0; k < o.coef[i].size(); ++k) c[k] += o.coef[i][k];
    }
    return r;
}

PiecewisePoly PiecewisePoly::operator-(const PiecewisePoly& o) const { return *this + o.scaled(-1); }

PiecewisePoly PiecewisePoly::scaled(const mpq_class& s) const {
    PiecewisePoly r = *this;
    for (auto& c : r.coef)
        for (auto& x : c) x *= s;
    return r;
}

PiecewisePoly PiecewisePoly::times_linear(const mpq_class& a, const mpq_class& b) const {
    PiecewisePoly r = *this;
    for (std::size_t i = 0; i < coef.size(); ++i) {
        const auto& c = coef[i];
        if (c.empty()) continue;
        mpq_class a0 = a + b * knots[i];
        std::vector<mpq_class> out(c.size() + 1, 0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            out[k] += a0 * c[k];
            out[k + 1] += b * c[k];
        }
        r.coef[i] = std::move(out);
    }
    return r;
}

mpq_class PiecewisePoly::left_value(std::size_t i) const { return coef[i].empty() ? mpq_class(0) : coef[i][0]; }

mpq_class PiecewisePoly::right_value(std::size_t i) const {
    mpq_class h = knots[i + 1] - knots[i], acc = 0, p = 1;
    for (const auto& c : coef[i]) {
        acc += c * p;
        p *= h;
    }
    return acc;
}

mpq_class PiecewisePoly::eval(std::size_t i, const mpq_class& t) const {
    mpq_class s = t - knots[i], acc = 0, p = 1;
    for (const auto& c : coef[i]) {
        acc += c * p;
        p *= s;
    }
    return acc;
}

mpq_class PiecewisePoly::moment(int j) const {
    mpq_class acc = 0;
    for (std::size_t i = 0; i < coef.size(); ++i) {
        mpq_class h = knots[i + 1] - knots[i];
        for (std::size_t k = 0; k < coef[i].size(); ++k)
            if (coef[i][k] != 0) acc += coef[i][k] * local_moment(knots[i], h, static_cast<int>(k), j);
    }
    return acc;
}

PiecewisePoly PiecewisePoly::extended(const Knots& full) const {
    std::size_t off = find_offset(full, knots);
    PiecewisePoly r = zero(full);
    for (std::size_t i = 0; i < coef.size(); ++i) r.coef[off + i] = coef[i];
    return r;
}

PiecewisePoly PiecewisePoly::restricted(const Knots& sub) const {
    std::size_t off = find_offset(knots, sub);
    PiecewisePoly r = zero(sub);
    auto t = trimmed();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i >= off && i < off + r.coef.size())
            r.coef[i - off] = t[i];
        else if (!t[i].empty())
            throw SplineError("function does not vanish outside the sub-grid");
    }
    return r;
}

PiecewisePoly PiecewisePoly::reflected() const {
    std::size_t n = knots.size();
    for (std::size_t i = 0; i < n; ++i)
        if (knots[i] != -knots[n - 1 - i]) throw SplineError("reflection needs a symmetric grid");
    PiecewisePoly r = zero(knots);
    std::size_t K = coef.size();
    for (std::size_t i = 0; i < K; ++i) {
        const auto& c = coef[K - 1 - i];
        mpq_class h = knots[i + 1] - knots[i];
        std::vector<mpq_class> out(c.size(), 0);
        // sum_k c_k (h - s)^k
        for (std::size_t k = 0; k < c.size(); ++k)
            for (std::size_t l = 0; l <= k; ++l) {
                mpq_class term = c[k] * binom(static_cast<int>(k), static_cast<int>(l)) *
                                 qpow(h, static_cast<int>(k - l));
                if (l % 2) term = -term;
                out[l] += term;
            }
        r.coef[i] = std::move(out);
    }
    return r;
}

bool spline_space_included(int r, int s, int r2, int s2) { return r <= r2 && s >= s2; }

SplineSpace::SplineSpace(int degree, int smoothness, Knots knots)
    : degree_(degree), smoothness_(smoothness), knots_(std::move(knots)) {
    PiecewisePoly z = PiecewisePoly::zero(knots_);
    std::size_t K = z.intervals();
    auto h = [&](std::size_t i) { return mpq_class(knots_[i + 1] - knots_[i]); };
    if (degree == 1 && smoothness == -1) {
        for (std::size_t i = 0; i < K; ++i) {
            PiecewisePoly a = z, b = z;
            a.coef[i] = {1, -1 / h(i)};
            b.coef[i] = {0, 1 / h(i)};
            basis_.push_back(a);
            basis_.push_back(b);
        }
    } else if (degree == 2 && smoothness == 0) {
        for (std::size_t j = 1; j < K; ++j) {
            PiecewisePoly p = z;
            p.coef[j - 1] = {0, 1 / h(j - 1)};
            p.coef[j] = {1, -1 / h(j)};
            basis_.push_back(p);
        }
        for (std::size_t i = 0; i < K; ++i) {
            PiecewisePoly p = z;
            mpq_class hh = h(i);
            p.coef[i] = {0, 4 / hh, -4 / (hh * hh)};
            basis_.push_back(p);
        }
    } else if (degree == 3 && smoothness == 1) {
        for (std::size_t j = 1; j < K; ++j) {
            mpq_class hl = h(j - 1), hr = h(j);
            PiecewisePoly v = z, d = z;
            v.coef[j - 1] = {0, 0, 3 / (hl * hl), -2 / (hl * hl * hl)};
            v.coef[j] = {1, 0, -3 / (hr * hr), 2 / (hr * hr * hr)};
            d.coef[j - 1] = {0, 0, -1 / hl, 1 / (hl * hl)};
            d.coef[j] = {0, 1, -2 / hr, 1 / (hr * hr)};
            basis_.push_back(v);
            basis_.push_back(d);
        }
    } else {
        throw SplineError("unsupported spline space S(" + std::to_string(degree) + "," + std::to_string(smoothness) +
                          ")");
    }
    if (basis_.empty()) throw SplineError("grid too coarse for " + name());
}

std::string SplineSpace::name() const {
    return "S(" + std::to_string(degree_) + "," + std::to_string(smoothness_) + ")";
}

std::vector<mpq_class> SplineSpace::coords(const PiecewisePoly& p) const {
    if (p.knots != knots_) throw SplineError(name() + ": function lives on a different grid");
    std::size_t K = p.intervals();
    std::vector<mpq_class> c;
    if (degree_ == 1) {
        for (std::size_t i = 0; i < K; ++i) {
            c.push_back(p.left_value(i));
            c.push_back(p.right_value(i));
        }
    } else if (degree_ == 2) {
        for (std::size_t j = 1; j < K; ++j) c.push_back(p.left_value(j));
        for (std::size_t i = 0; i < K; ++i) {
            mpq_class mid = (knots_[i] + knots_[i + 1]) / 2;
            c.push_back(p.eval(i, mid) - (p.left_value(i) + p.right_value(i)) / 2);
        }
    } else {
        PiecewisePoly dp = p.derivative();
        for (std::size_t j = 1; j < K; ++j) {
            c.push_back(p.left_value(j));
            c.push_back(dp.left_value(j));
        }
    }
    if (!(combine(c) == p)) throw SplineError("function is not in " + name());
    return c;
}

bool SplineSpace::contains(const PiecewisePoly& p) const {
    try {
        coords(p);
        return true;
    } catch (const SplineError&) {
        return false;
    }
}

PiecewisePoly SplineSpace::combine(const std::vector<mpq_class>& c) const {
    PiecewisePoly r = PiecewisePoly::zero(knots_);
    for (std::size_t j = 0; j < c.size(); ++j)
        if (c[j] != 0) r = r + basis_[j].scaled(c[j]);
    return r;
}

PiecewisePoly quadratic_bspline(const Knots& knots, std::size_t a) {
    if (a + 3 >= knots.size()) throw SplineError("B-spline support exceeds the grid");
    PiecewisePoly z = PiecewisePoly::zero(knots);
    std::vector<PiecewisePoly> B;
    for (std::size_t i = a; i < a + 3; ++i) {
        PiecewisePoly p = z;
        p.coef[i] = {1};
        B.push_back(p);
    }
    for (std::size_t k = 1; k <= 2; ++k) {
        std::vector<PiecewisePoly> next;
        for (std::size_t m = 0; m + 1 < B.size(); ++m) {
            std::size_t i = a + m;
            mpq_class l = knots[i + k] - knots[i], r = knots[i + k + 1] - knots[i + 1];
            next.push_back(B[m].times_linear(-knots[i] / l, 1 / l) + B[m + 1].times_linear(knots[i + k + 1] / r, -1 / r));
        }
        B = std::move(next);
    }
    return B[0].scaled(3 / (knots[a + 3] - knots[a]));
}

Knots uniform_knots(const mpq_class& lo, const mpq_class& hi, int intervals) {
    if (intervals < 1 || !(lo < hi)) throw SplineError("bad uniform grid");
    Knots k;
    for (int j = 0; j <= intervals; ++j) k.push_back(lo + (hi - lo) * j / intervals);
    return k;
}

Knots sub_knots(const Knots& knots, const mpq_class& lo, const mpq_class& hi) {
    Knots out;
    for (const auto& t : knots)
        if (t >= lo && t <= hi) out.push_back(t);
    if (out.size() < 2 || out.front() != lo || out.back() != hi)
        throw SplineError("sub-grid endpoints must be knots of the grid");
    return out;
}

// ---- double layer ----

namespace {

struct GaussLegendre {
    static constexpr int n = 20;
    std::array<double, n> x{}, w{};
    GaussLegendre() {
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
            x[i] = z;
            w[i] = 2 / ((1 - z * z) * pp * pp);
        }
    }
};

const GaussLegendre& gl() {
    static const GaussLegendre g;
    return g;
}

double poly_eval(const std::vector<double>& c, double s) {
    double acc = 0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * s + c[k];
    return acc;
}

std::size_t locate(const std::vector<double>& knots, double t) {
    auto it = std::upper_bound(knots.begin(), knots.end(), t);
    std::size_t i = static_cast<std::size_t>(it - knots.begin());
    if (i == 0) return 0;
    return std::min(i - 1, knots.size() - 2);
}

}  // namespace

std::complex<double> poly_exp_integral(const std::vector<double>& q, double w, double h) {
    using C = std::complex<double>;
    if (q.empty() || h <= 0) return 0;
    if (std::abs(w) * h < 0.5) {
        const auto& g = gl();
        C acc = 0;
        for (int i = 0; i < GaussLegendre::n; ++i) {
            double s = 0.5 * h * (g.x[i] + 1);
            acc += g.w[i] * poly_eval(q, s) * std::exp(C(0, w * s));
        }
        return 0.5 * h * acc;
    }
    // e^{iws} sum_m (-1)^m q^{(m)}(s) / (iw)^{m+1}
    auto antider = [&](double s) {
        std::vector<double> d = q;
        C acc = 0, iw = C(0, w), den = iw;
        double sign = 1;
        while (!d.empty()) {
            acc += sign * poly_eval(d, s) / den;
            for (std::size_t k = 1; k < d.size(); ++k) d[k - 1] = d[k] * static_cast<double>(k);
            d.pop_back();
            den *= iw;
            sign = -sign;
        }
        return acc * std::exp(C(0, w * s));
    };
    return antider(h) - antider(0);
}

NumProfile NumProfile::from(const PiecewisePoly& p) {
    if (p.is_zero()) return zero();
    NumProfile r;
    for (const auto& t : p.knots) r.knots.push_back(t.get_d());
    for (const auto& c : p.coef) {
        std::vector<double> d;
        for (const auto& x : c) d.push_back(x.get_d());
        r.coef.push_back(d);
    }
    return r;
}

NumProfile NumProfile::zero() { return {}; }

NumProfile NumProfile::derivative() const {
    NumProfile r = *this;
    for (auto& c : r.coef) {
        if (c.empty()) continue;
        for (std::size_t k = 1; k < c.size(); ++k) c[k - 1] = c[k] * static_cast<double>(k);
        c.pop_back();
    }
    return r;
}

NumProfile NumProfile::scaled(double s) const {
    NumProfile r = *this;
    for (auto& c : r.coef)
        for (auto& x : c) x *= s;
    return r;
}

NumProfile NumProfile::operator+(const NumProfile& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (knots != o.knots) throw SplineError("adding profiles on different grids");
    NumProfile r = *this;
    for (std::size_t i = 0; i < coef.size(); ++i) {
        auto& c = r.coef[i];
        if (c.size() < o.coef[i].size()) c.resize(o.coef[i].size(), 0.0);
        for (std::size_t k = 0; k < o.coef[i].size(); ++k) c[k] += o.coef[i][k];
    }
    return r;
}

double NumProfile::eval(double t) const {
    if (is_zero() || t < knots.front() || t > knots.back()) return 0;
    std::size_t i = locate(knots, t);
    return poly_eval(coef[i], t - knots[i]);
}

double NumProfile::moment(int j) const {
    if (is_zero()) return 0;
    return partial_moment(j, knots.back());
}

double NumProfile::partial_moment(int j, double t) const {
    if (is_zero() || t <= knots.front()) return 0;
    double acc = 0;
    for (std::size_t i = 0; i < coef.size() && knots[i] < t; ++i) {
        double u = std::min(t, knots[i + 1]) - knots[i];
        for (std::size_t k = 0; k < coef[i].size(); ++k)
            if (coef[i][k] != 0) acc += coef[i][k] * local_moment(knots[i], u, static_cast<int>(k), j);
    }
    return acc;
}

std::complex<double> NumProfile::fourier(double w) const {
    if (is_zero()) return 0;
    return partial_fourier(w, knots.back());
}

std::complex<double> NumProfile::partial_fourier(double w, double t) const {
    std::complex<double> acc = 0;
    if (is_zero() || t <= knots.front()) return acc;
    for (std::size_t i = 0; i < coef.size() && knots[i] < t; ++i) {
        double u = std::min(t, knots[i + 1]) - knots[i];
        acc += std::exp(std::complex<double>(0, w * knots[i])) * poly_exp_integral(coef[i], w, u);
    }
    return acc;
}

double NumProfile::inner(const NumProfile& q) const {
    if (is_zero() || q.is_zero()) return 0;
    if (knots != q.knots) throw SplineError("inner product of profiles on different grids");
    double acc = 0;
    for (std::size_t i = 0; i < coef.size(); ++i) {
        double h = knots[i + 1] - knots[i];
        for (std::size_t a = 0; a < coef[i].size(); ++a)
            for (std::size_t b = 0; b < q.coef[i].size(); ++b)
                acc += coef[i][a] * q.coef[i][b] * std::pow(h, static_cast<double>(a + b + 1)) / (a + b + 1);
    }
    return acc;
}

}  // namespace hqft
