#include <cmath>

#include "hqft/maxwell.hpp"

namespace hqft::maxwell {

namespace {

Vec to_vec(const std::vector<mpq_class>& c) {
    Vec v;
    v.reserve(c.size());
    for (const auto& x : c) v.emplace_back(x);
    return v;
}


std::pair<Leg, Leg> legs_of(int degree) {
    switch (degree) {
        case -2: return {LegF, LegF};
        case -1: return {LegAS, LegAT};
        case 0: return {LegBS, LegBT};
        case 1: return {LegG, LegG};
    }
    throw SplineError("observable complex has degrees -2..1 only");
}

std::vector<std::string> prefixed(const std::string& p, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(p + std::to_string(i));
    return out;
}

}  // namespace

std::string Sector::name() const {
    if (k == 0) return "k0";
    return "k" + std::to_string(k) + (type == 1 ? "s" : "c");
}

std::vector<Sector> sectors(int modes) {
    std::vector<Sector> out{{0, 0}};
    for (int k = 1; k <= modes; ++k) {
        out.push_back({k, 1});
        out.push_back({k, 2});
    }
    return out;
}

double sector_norm(const Sector& s) { return s.k == 0 ? 1.0 : 0.5; }
double num_mu(const Sector& s) { return 2 * M_PI * s.k; }

void check_spline_typing(const Config& c) {
    const auto& sp = c.spaces;
    auto name = [](int l) { return std::string(leg_names[l]); };
    auto need = [&](int from, int derivs, int to) {
        auto [r, s] = sp[from];
        if (s - derivs < -1 || r - derivs < 0 ||
            !spline_space_included(r - derivs, s - derivs, sp[to].first, sp[to].second))
            throw ConfigError("spline degree bookkeeping failure: " + std::string(derivs ? "derivative " : "") +
                              (derivs == 2 ? "(second) " : "") + "of " + name(from) + " does not land in " + name(to));
    };
    need(LegF, 0, LegAS);
    need(LegF, 1, LegAT);
    need(LegAS, 2, LegBS);
    need(LegAT, 1, LegBS);
    need(LegAS, 1, LegBT);
    need(LegAT, 0, LegBT);
    need(LegBT, 1, LegG);
    need(LegBS, 0, LegG);
    for (int l = 0; l < 6; ++l) {
        auto [r, s] = sp[l];
        bool ok = (r == 3 && s == 1) || (r == 2 && s == 0) || (r == 1 && s == -1);
        if (!ok) throw ConfigError("spline space for " + name(l) + " must be one of S(3,1), S(2,0), S(1,-1)");
    }
}

PiecewisePoly bump_profile(const Knots& knots) {
    std::size_t K = knots.size() - 1;
    if (K < 4) throw SplineError("grid too coarse for the bump profile");
    PiecewisePoly f;
    if (K % 2 == 1) {
        f = quadratic_bspline(knots, (K - 3) / 2);
    } else {
        f = (quadratic_bspline(knots, K / 2 - 2) + quadratic_bspline(knots, K / 2 - 1)).scaled(mpq_class(1, 2));
    }
    if (f.moment(0) != 1 || !(f.reflected() == f)) throw SplineError("moment conditions on f unsatisfied");
    return f;
}

PiecewisePoly box_profile(const Knots& knots) {
    std::size_t K = knots.size() - 1;
    PiecewisePoly g = PiecewisePoly::zero(knots);
    std::size_t lo = K % 2 ? K / 2 : K / 2 - 1, hi = K / 2;
    for (std::size_t i = lo; i <= hi; ++i) g.coef[i] = {1 / (knots[hi + 1] - knots[lo])};
    if (g.moment(0) != 1 || !(g.reflected() == g)) throw SplineError("moment conditions on the box profile unsatisfied");
    return g;
}

ExactModel::ExactModel(const Config& c, Knots knots) : knots_(std::move(knots)), kappa_(c.kappa) {
    for (int l = 0; l < 6; ++l) spaces_[l] = SplineSpace(c.spaces[l].first, c.spaces[l].second, knots_);
}

std::size_t ExactModel::dim(int degree) const {
    auto [a, b] = legs_of(degree);
    return a == b ? spaces_[a].dim() : spaces_[a].dim() + spaces_[b].dim();
}

ExactForm ExactModel::zero_form(const Sector& s, int degree) const {
    legs_of(degree);
    auto z = PiecewisePoly::zero(knots_);
    return {s, degree, z, z};
}

ExactForm ExactModel::form(const Sector& s, int degree, const std::vector<mpq_class>& c) const {
    auto [a, b] = legs_of(degree);
    ExactForm x = zero_form(s, degree);
    if (a == b) {
        x.S = spaces_[a].combine(c);
    } else {
        std::size_t na = spaces_[a].dim();
        x.S = spaces_[a].combine(std::vector<mpq_class>(c.begin(), c.begin() + na));
        x.T = spaces_[b].combine(std::vector<mpq_class>(c.begin() + na, c.end()));
    }
    return x;
}

ExactForm ExactModel::basis_form(const Sector& s, int degree, std::size_t j) const {
    std::vector<mpq_class> c(dim(degree), 0);
    c.at(j) = 1;
    return form(s, degree, c);
}

std::vector<mpq_class> ExactModel::coords(const ExactForm& x) const {
    auto [a, b] = legs_of(x.degree);
    auto c = spaces_[a].coords(x.S);
    if (a != b) {
        auto d = spaces_[b].coords(x.T);
        c.insert(c.end(), d.begin(), d.end());
    } else if (!x.T.is_zero()) {
        throw SplineError("0-form with a nonzero dt component");
    }
    return c;
}

std::vector<std::string> ExactModel::labels(int degree) const {
    auto [a, b] = legs_of(degree);
    auto out = prefixed(leg_names[a], spaces_[a].dim());
    if (a != b) {
        auto t = prefixed(leg_names[b], spaces_[b].dim());
        out.insert(out.end(), t.begin(), t.end());
    }
    return out;
}

CochainComplex ExactModel::sector_complex(const Sector& s) const {
    GradedSpace V;
    for (int n : degrees()) V.basis[n] = labels(n);
    std::map<int, Matrix> d;
    mpq_class m = mu(s);
    for (int n : {-2, -1, 0}) {
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < dim(n); ++j) cols.push_back(to_vec(coords(apply_d(basis_form(s, n, j), m))));
        d[n] = Matrix::from_columns(dim(n + 1), cols);
    }
    return CochainComplex(V, d);
}

CochainComplex small_complex() {
    GradedSpace V;
    V.basis[-1] = {"e_dagger"};
    V.basis[0] = {"a1", "a2"};
    V.basis[1] = {"e"};
    return CochainComplex(V, {});
}

CochainMap small_to_sector0(const ExactModel& m, const CochainComplex& L, const CochainComplex& L0) {
    Sector s0{0, 0};
    PiecewisePoly f = bump_profile(m.knots()), g = box_profile(m.knots());
    auto z = PiecewisePoly::zero(m.knots());
    CochainMap c;
    c.source = std::make_shared<CochainComplex>(L);
    c.target = std::make_shared<CochainComplex>(L0);
    auto col = [&](const ExactForm& x) { return to_vec(m.coords(x)); };
    c.comp[-1] = Matrix::from_columns(m.dim(-1), {col({s0, -1, z, f})});
    c.comp[0] = Matrix::from_columns(m.dim(0), {col({s0, 0, g, z}), col({s0, 0, f.derivative().scaled(-1), z})});
    c.comp[1] = Matrix::from_columns(m.dim(1), {col({s0, 1, g, z})});
    return c;
}

CochainMap sector0_to_small(const ExactModel& m, const CochainComplex& L0, const CochainComplex& L) {
    Sector s0{0, 0};
    CochainMap c;
    c.source = std::make_shared<CochainComplex>(L0);
    c.target = std::make_shared<CochainComplex>(L);
    c.comp[-2] = Matrix(0, m.dim(-2));
    for (int n : {-1, 0, 1}) {
        std::size_t rows = n == 0 ? 2 : 1;
        Matrix M(rows, m.dim(n));
        for (std::size_t j = 0; j < m.dim(n); ++j) {
            ExactForm x = m.basis_form(s0, n, j);
            if (n == -1) M(0, j) = Scalar(x.T.moment(0));
            if (n == 0) {
                M(0, j) = Scalar(x.S.moment(0));
                M(1, j) = Scalar(x.S.moment(1));
            }
            if (n == 1) M(0, j) = Scalar(x.S.moment(0));
        }
        c.comp[n] = M;
    }
    return c;
}

CochainComplex solution_complex(const Sector& s, const mpq_class& mu) {
    GradedSpace V;
    std::map<int, Matrix> d;
    if (s.k == 0) {
        V.basis[-1] = {"1", "t", "t^2"};
        V.basis[0] = {"S:1", "S:t", "T:1", "T:t"};
        V.basis[1] = {"T:1"};
        Matrix d1(4, 3);
        d1(2, 1) = 1;  // (t)' = 1 on the T leg
        d1(3, 2) = 2;
        d[-1] = d1;
        d[0] = Matrix(1, 4);
        return CochainComplex(V, d);
    }
    // basis (cos mu t, sin mu t); D = d/dt
    Matrix D(2, 2);
    D(1, 0) = Scalar(-mu);
    D(0, 1) = Scalar(mu);
    Matrix I = Matrix::identity(2);
    V.basis[-1] = {"cos", "sin"};
    V.basis[0] = {"S:cos", "S:sin", "T:cos", "T:sin"};
    V.basis[1] = {"S:cos", "S:sin", "T:cos", "T:sin"};
    V.basis[2] = {"cos", "sin"};
    Scalar m(mu);
    d[-1] = I.scaled(m).vstack(D);
    Matrix D2 = D * D;
    d[0] = D2.hstack(D.scaled(-m)).vstack(D.scaled(-m).hstack(I.scaled(m * m)));
    d[1] = I.scaled(m).hstack(D);
    return CochainComplex(V, d);
}

CochainComplex data_complex(const Sector& s, const mpq_class& mu) {
    GradedSpace V;
    V.basis[-1] = {"chi0"};
    V.basis[0] = {"x", "y"};
    V.basis[1] = {"z"};
    std::map<int, Matrix> d;
    if (s.k != 0) {
        Matrix a(2, 1), b(1, 2);
        a(0, 0) = Scalar(mu);
        b(0, 1) = Scalar(mu);
        d[-1] = a;
        d[0] = b;
    }
    return CochainComplex(V, d);
}

CochainMap data_map(const Sector& s, const mpq_class& mu, const CochainComplex& sol, const CochainComplex& data) {
    CochainMap c;
    c.source = std::make_shared<CochainComplex>(sol);
    c.target = std::make_shared<CochainComplex>(data);
    Scalar m(mu);
    if (s.k == 0) {
        Matrix a(1, 3), b(2, 4), g(1, 1);
        a(0, 0) = 1;
        b(0, 0) = 1;
        b(1, 1) = -1;
        g(0, 0) = 1;
        c.comp[-1] = a;
        c.comp[0] = b;
        c.comp[1] = g;
        return c;
    }
    // chi(0); (a_S(0), -a_S'(0) + mu a_T(0)); b_T(0)
    Matrix a(1, 2), b(2, 4), g(1, 4);
    a(0, 0) = 1;
    b(0, 0) = 1;
    b(1, 1) = -m;
    b(1, 2) = m;
    g(0, 2) = 1;
    c.comp[-1] = a;
    c.comp[0] = b;
    c.comp[1] = g;
    c.comp[2] = Matrix(0, 2);
    return c;
}

CochainMap lambda_sector0(const ExactModel& m, const CochainComplex& L0, const CochainComplex& sol0) {
    Sector s0{0, 0};
    CochainMap c;
    c.source = std::make_shared<CochainComplex>(L0);
    c.target = std::make_shared<CochainComplex>(sol0);
    // G b = m0(b) t - m1(b)
    Matrix a(3, m.dim(-1)), b(4, m.dim(0)), g(1, m.dim(1));
    for (std::size_t j = 0; j < m.dim(-1); ++j) {
        ExactForm x = m.basis_form(s0, -1, j);
        PiecewisePoly beta = codiff(x, m.mu(s0));
        a(0, j) = Scalar(mpq_class(-beta.moment(1)));
        a(1, j) = Scalar(beta.moment(0));
    }
    for (std::size_t j = 0; j < m.dim(0); ++j) {
        ExactForm x = m.basis_form(s0, 0, j);
        b(0, j) = Scalar(mpq_class(-x.S.moment(1)));
        b(1, j) = Scalar(x.S.moment(0));
        b(2, j) = Scalar(mpq_class(-x.T.moment(1)));
        b(3, j) = Scalar(x.T.moment(0));
    }
    for (std::size_t j = 0; j < m.dim(1); ++j) g(0, j) = Scalar(m.basis_form(s0, 1, j).S.moment(0));
    c.comp[-2] = Matrix(0, m.dim(-2));
    c.comp[-1] = a;
    c.comp[0] = b;
    c.comp[1] = g;
    return c;
}

mpq_class exact_poisson_sector0(const ExactForm& x, const ExactForm& y) {
    if (x.sector.k != 0 || y.sector.k != 0 || x.degree + y.degree != 0) return 0;
    auto gp = [](const PiecewisePoly& p, const PiecewisePoly& q) -> mpq_class {
        return p.moment(0) * q.moment(1) - p.moment(1) * q.moment(0);
    };
    switch (x.degree) {
        case -1: return gp(x.T.derivative(), y.S);
        case 0: return -(gp(x.S, y.S) - gp(x.T, y.T));
        case 1: return x.S.moment(0) * y.T.moment(0);
        default: return 0;
    }
}

CochainMap extension_map(const ExactModel& slab, const ExactModel& full, const Sector& s, const CochainComplex& src,
                         const CochainComplex& tgt) {
    CochainMap c;
    c.source = std::make_shared<CochainComplex>(src);
    c.target = std::make_shared<CochainComplex>(tgt);
    for (int n : slab.degrees()) {
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < slab.dim(n); ++j) {
            ExactForm x = slab.basis_form(s, n, j);
            ExactForm y{s, n, x.S.extended(full.knots()), x.T.extended(full.knots())};
            cols.push_back(to_vec(full.coords(y)));
        }
        c.comp[n] = Matrix::from_columns(full.dim(n), cols);
    }
    return c;
}

}  // namespace hqft::maxwell
