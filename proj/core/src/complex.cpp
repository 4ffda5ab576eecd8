#include "hqft/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hqft {

std::vector<int> GradedSpace::degrees() const {
    std::vector<int> out;
    for (const auto& [n, b] : basis)
        if (!b.empty()) out.push_back(n);
    return out;
}

std::size_t GradedSpace::total_dim() const {
    std::size_t s = 0;
    for (const auto& [n, b] : basis) s += b.size();
    return s;
}

CochainComplex::CochainComplex(GradedSpace space, std::map<int, Matrix> diffs) : space_(std::move(space)) {
    for (auto it = space_.basis.begin(); it != space_.basis.end();) {
        if (it->second.empty())
            it = space_.basis.erase(it);
        else
            ++it;
    }
    for (auto& [n, m] : diffs) {
        if (m.rows() != dim(n + 1) || m.cols() != dim(n)) {
            std::ostringstream os;
            os << "differential in degree " << n << " has shape " << m.rows() << "x" << m.cols() << ", expected "
               << dim(n + 1) << "x" << dim(n);
            throw ComplexError(os.str(), n);
        }
        if (m.rows() > 0 && m.cols() > 0 && !m.is_zero()) diffs_.emplace(n, std::move(m));
    }
}

const std::vector<std::string>& CochainComplex::labels(int n) const {
    static const std::vector<std::string> none;
    auto it = space_.basis.find(n);
    return it == space_.basis.end() ? none : it->second;
}

Matrix CochainComplex::diff(int n) const {
    auto it = diffs_.find(n);
    if (it != diffs_.end()) return it->second;
    return Matrix(dim(n + 1), dim(n));
}

int CochainComplex::min_degree() const { return space_.basis.empty() ? 0 : space_.basis.begin()->first; }
int CochainComplex::max_degree() const { return space_.basis.empty() ? 0 : space_.basis.rbegin()->first; }

void validate_complex(const CochainComplex& c) {
    for (int n : c.degrees()) {
        if (c.dim(n + 2) == 0 || c.dim(n + 1) == 0) continue;
        if (!(c.diff(n + 1) * c.diff(n)).is_zero()) {
            std::ostringstream os;
            os << "d^2 != 0 starting in degree " << n;
            throw ComplexError(os.str(), n);
        }
    }
}

Matrix CochainMap::component(int n) const {
    auto it = comp.find(n);
    if (it != comp.end()) return it->second;
    return Matrix(target->dim(n + degree), source->dim(n));
}

static std::set<int> degree_union(const CochainComplex& a, const CochainComplex& b, int shift_b) {
    std::set<int> s;
    for (int n : a.degrees()) s.insert(n);
    for (int n : b.degrees()) s.insert(n - shift_b);
    return s;
}

CochainMap identity_map(const ComplexPtr& c) {
    CochainMap f{c, c, 0, {}};
    for (int n : c->degrees()) f.comp[n] = Matrix::identity(c->dim(n));
    return f;
}

CochainMap compose(const CochainMap& g, const CochainMap& f) {
    if (f.target->space().basis != g.source->space().basis) throw std::invalid_argument("compose: incompatible maps");
    CochainMap h{f.source, g.target, f.degree + g.degree, {}};
    for (int n : f.source->degrees()) {
        if (h.target->dim(n + h.degree) == 0) continue;
        h.comp[n] = g.component(n + f.degree) * f.component(n);
    }
    return h;
}

CochainMap map_sum(const CochainMap& f, const CochainMap& g) {
    if (f.degree != g.degree) throw std::invalid_argument("map_sum: degree mismatch");
    CochainMap h{f.source, f.target, f.degree, {}};
    for (int n : f.source->degrees()) h.comp[n] = f.component(n) + g.component(n);
    return h;
}

CochainMap map_scaled(const CochainMap& f, const Scalar& s) {
    CochainMap h = f;
    for (auto& [n, m] : h.comp) m = m.scaled(s);
    return h;
}

bool maps_equal(const CochainMap& f, const CochainMap& g) {
    if (f.degree != g.degree) return false;
    for (int n : f.source->degrees())
        if (f.component(n) != g.component(n)) return false;
    return true;
}

std::optional<int> chain_map_defect(const CochainMap& f) {
    for (int n : degree_union(*f.source, *f.target, f.degree)) {
        Matrix lhs = f.target->diff(n + f.degree) * f.component(n);
        Matrix rhs = f.component(n + 1) * f.source->diff(n);
        if (f.degree % 2 != 0) rhs = rhs.scaled(Scalar(-1));
        if (lhs != rhs) return n;
    }
    return std::nullopt;
}

DegreeHomology degree_homology(const CochainComplex& c, int n) {
    DegreeHomology h;
    std::size_t dn = c.dim(n);
    if (dn == 0) return h;
    if (c.dim(n + 1) == 0) {
        for (std::size_t i = 0; i < dn; ++i) h.cocycles.push_back(unit_vec(dn, i));
    } else {
        h.cocycles = c.diff(n).nullspace();
    }
    if (c.dim(n - 1) > 0) {
        Matrix dprev = c.diff(n - 1);
        for (auto col : dprev.independent_columns()) h.coboundaries.push_back(dprev.column(col));
    }
    std::vector<Vec> cols = h.coboundaries;
    cols.insert(cols.end(), h.cocycles.begin(), h.cocycles.end());
    if (cols.empty()) return h;
    Matrix m = Matrix::from_columns(dn, cols);
    for (auto idx : m.independent_columns())
        if (idx >= h.coboundaries.size()) h.reps.push_back(cols[idx]);
    return h;
}

CohomologyReport cohomology(const CochainComplex& c) {
    CohomologyReport r;
    for (int n : c.degrees()) {
        auto h = degree_homology(c, n);
        if (!h.reps.empty()) {
            r.dims[n] = h.reps.size();
            r.reps[n] = std::move(h.reps);
        }
    }
    return r;
}

long euler_characteristic(const CochainComplex& c) {
    long chi = 0;
    for (int n : c.degrees()) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(c.dim(n));
    return chi;
}

bool is_coboundary(const CochainComplex& c, int n, const Vec& v) {
    if (vec_is_zero(v)) return true;
    if (c.dim(n - 1) == 0) return false;
    Matrix d = c.diff(n - 1);
    return d.solve(v).has_value();
}

bool is_quasi_iso(const CochainMap& f) {
    if (f.degree != 0) return false;
    for (int n : degree_union(*f.source, *f.target, 0)) {
        auto hs = degree_homology(*f.source, n);
        auto ht = degree_homology(*f.target, n);
        if (hs.reps.size() != ht.reps.size()) return false;
        if (ht.reps.empty()) continue;
        Matrix fn = f.component(n);
        std::vector<Vec> cols = ht.coboundaries;
        for (const auto& r : hs.reps) cols.push_back(fn * r);
        Matrix m = Matrix::from_columns(f.target->dim(n), cols);
        if (m.rank() != ht.cocycles.size()) return false;
    }
    return true;
}

bool is_degreewise_surjective(const CochainMap& f) {
    for (int n : f.target->degrees()) {
        if (f.component(n - f.degree).rank() != f.target->dim(n)) return false;
    }
    return true;
}

CochainComplex unit_complex() { return concentrated(0, {"1"}); }
CochainComplex zero_complex() { return CochainComplex(); }

CochainComplex concentrated(int degree, std::vector<std::string> labels) {
    GradedSpace s;
    s.basis[degree] = std::move(labels);
    return CochainComplex(std::move(s), {});
}

CochainComplex direct_sum(const CochainComplex& a, const CochainComplex& b) {
    GradedSpace s;
    std::set<int> degs = degree_union(a, b, 0);
    for (int n : degs) {
        auto la = a.labels(n);
        const auto& lb = b.labels(n);
        la.insert(la.end(), lb.begin(), lb.end());
        s.basis[n] = la;
    }
    std::map<int, Matrix> d;
    for (int n : degs) {
        Matrix m(s.dim(n + 1), s.dim(n));
        if (a.dim(n) && a.dim(n + 1)) m.set_block(0, 0, a.diff(n));
        if (b.dim(n) && b.dim(n + 1)) m.set_block(a.dim(n + 1), a.dim(n), b.diff(n));
        d[n] = m;
    }
    return CochainComplex(std::move(s), std::move(d));
}

std::size_t TensorIndex::offset(const CochainComplex& a, const CochainComplex& b, int n, int k) {
    std::size_t off = 0;
    for (int p : a.degrees()) {
        if (p >= k) break;
        off += a.dim(p) * b.dim(n - p);
    }
    return off;
}

CochainComplex tensor(const CochainComplex& a, const CochainComplex& b) {
    GradedSpace s;
    if (a.is_zero() || b.is_zero()) return CochainComplex();
    int lo = a.min_degree() + b.min_degree(), hi = a.max_degree() + b.max_degree();
    for (int n = lo; n <= hi; ++n) {
        std::vector<std::string> lab;
        for (int k : a.degrees())
            for (const auto& x : a.labels(k))
                for (const auto& y : b.labels(n - k)) lab.push_back(x + "*" + y);
        if (!lab.empty()) s.basis[n] = std::move(lab);
    }
    std::map<int, Matrix> d;
    for (int n = lo; n < hi; ++n) {
        if (s.dim(n) == 0 || s.dim(n + 1) == 0) continue;
        Matrix m(s.dim(n + 1), s.dim(n));
        for (int k : a.degrees()) {
            std::size_t da = a.dim(k), db = b.dim(n - k);
            if (db == 0) continue;
            std::size_t src = TensorIndex::offset(a, b, n, k);
            Scalar sg = sign_pow(k);
            // dx (x) y
            if (a.dim(k + 1)) {
                Matrix dA = a.diff(k);
                std::size_t tgt = TensorIndex::offset(a, b, n + 1, k + 1);
                for (std::size_t i = 0; i < da; ++i)
                    for (std::size_t i2 = 0; i2 < a.dim(k + 1); ++i2) {
                        if (dA(i2, i).is_zero()) continue;
                        for (std::size_t j = 0; j < db; ++j) m(tgt + i2 * db + j, src + i * db + j) += dA(i2, i);
                    }
            }
            // (-1)^k x (x) dy
            if (b.dim(n - k + 1)) {
                Matrix dB = b.diff(n - k);
                std::size_t db2 = b.dim(n - k + 1);
                std::size_t tgt = TensorIndex::offset(a, b, n + 1, k);
                for (std::size_t i = 0; i < da; ++i)
                    for (std::size_t j = 0; j < db; ++j)
                        for (std::size_t j2 = 0; j2 < db2; ++j2) {
                            if (dB(j2, j).is_zero()) continue;
                            m(tgt + i * db2 + j2, src + i * db + j) += sg * dB(j2, j);
                        }
            }
        }
        d[n] = std::move(m);
    }
    return CochainComplex(std::move(s), std::move(d));
}

std::size_t HomIndex::offset(const CochainComplex& a, const CochainComplex& b, int n, int k) {
    std::size_t off = 0;
    for (int p : a.degrees()) {
        if (p >= k) break;
        off += a.dim(p) * b.dim(n + p);
    }
    return off;
}

CochainComplex internal_hom(const CochainComplex& a, const CochainComplex& b) {
    if (a.is_zero() || b.is_zero()) return CochainComplex();
    GradedSpace s;
    int lo = b.min_degree() - a.max_degree(), hi = b.max_degree() - a.min_degree();
    for (int n = lo; n <= hi; ++n) {
        std::vector<std::string> lab;
        for (int k : a.degrees())
            for (const auto& y : b.labels(n + k))
                for (const auto& x : a.labels(k)) lab.push_back("[" + x + "->" + y + "]");
        if (!lab.empty()) s.basis[n] = std::move(lab);
    }
    std::map<int, Matrix> d;
    for (int n = lo; n < hi; ++n) {
        if (s.dim(n) == 0 || s.dim(n + 1) == 0) continue;
        Matrix m(s.dim(n + 1), s.dim(n));
        Scalar sg = -sign_pow(n);
        for (int k : a.degrees()) {
            std::size_t da = a.dim(k), db = b.dim(n + k);
            if (db == 0) continue;
            std::size_t src = HomIndex::offset(a, b, n, k);
            // d_b h_k lands in block k of degree n+1
            if (b.dim(n + k + 1)) {
                Matrix dB = b.diff(n + k);
                std::size_t db2 = b.dim(n + k + 1);
                std::size_t tgt = HomIndex::offset(a, b, n + 1, k);
                for (std::size_t j = 0; j < db; ++j)
                    for (std::size_t i = 0; i < da; ++i)
                        for (std::size_t j2 = 0; j2 < db2; ++j2) {
                            if (dB(j2, j).is_zero()) continue;
                            m(tgt + j2 * da + i, src + j * da + i) += dB(j2, j);
                        }
            }
            // -(-1)^n h_k d_a^{k-1} lands in block k-1 of degree n+1
            if (a.dim(k - 1)) {
                Matrix dA = a.diff(k - 1);
                std::size_t da0 = a.dim(k - 1);
                std::size_t tgt = HomIndex::offset(a, b, n + 1, k - 1);
                for (std::size_t j = 0; j < db; ++j)
                    for (std::size_t i = 0; i < da; ++i)
                        for (std::size_t i0 = 0; i0 < da0; ++i0) {
                            if (dA(i, i0).is_zero()) continue;
                            m(tgt + j * da0 + i0, src + j * da + i) += sg * dA(i, i0);
                        }
            }
        }
        d[n] = std::move(m);
    }
    return CochainComplex(std::move(s), std::move(d));
}

CochainComplex shift(const CochainComplex& c, int k) {
    GradedSpace s;
    for (int n : c.degrees()) s.basis[n - k] = c.labels(n);
    std::map<int, Matrix> d;
    Scalar sg = sign_pow(k);
    for (int n : c.degrees())
        if (c.dim(n + 1)) d[n - k] = c.diff(n).scaled(sg);
    return CochainComplex(std::move(s), std::move(d));
}

IntervalObject interval_object() {
    GradedSpace s;
    s.basis[-1] = {"t"};
    s.basis[0] = {"x0", "x1"};
    Matrix d(2, 1);
    d(0, 0) = Scalar(1);
    d(1, 0) = Scalar(-1);
    auto I = std::make_shared<const CochainComplex>(s, std::map<int, Matrix>{{-1, d}});
    auto E = std::make_shared<const CochainComplex>(concentrated(0, {"x0", "x1"}));
    auto K = std::make_shared<const CochainComplex>(unit_complex());
    IntervalObject io;
    io.interval = I;
    io.endpoints = E;
    io.b = CochainMap{E, I, 0, {{0, Matrix::identity(2)}}};
    Matrix r(1, 2);
    r(0, 0) = Scalar(1);
    r(0, 1) = Scalar(1);
    io.r = CochainMap{I, K, 0, {{0, r}}};
    return io;
}

CochainMap tensor_associator(const CochainComplex& a, const CochainComplex& b, const CochainComplex& c) {
    auto ab = std::make_shared<const CochainComplex>(tensor(a, b));
    auto bc = std::make_shared<const CochainComplex>(tensor(b, c));
    auto src = std::make_shared<const CochainComplex>(tensor(*ab, c));
    auto tgt = std::make_shared<const CochainComplex>(tensor(a, *bc));
    CochainMap f{src, tgt, 0, {}};
    for (int n : src->degrees()) {
        Matrix m(tgt->dim(n), src->dim(n));
        for (int p : a.degrees())
            for (int q : b.degrees()) {
                int r = n - p - q;
                if (c.dim(r) == 0) continue;
                std::size_t dab = ab->dim(p + q), dbc = bc->dim(q + r);
                (void)dab;
                for (std::size_t i = 0; i < a.dim(p); ++i)
                    for (std::size_t j = 0; j < b.dim(q); ++j)
                        for (std::size_t l = 0; l < c.dim(r); ++l) {
                            std::size_t iab = TensorIndex::offset(a, b, p + q, p) + i * b.dim(q) + j;
                            std::size_t is = TensorIndex::offset(*ab, c, n, p + q) + iab * c.dim(r) + l;
                            std::size_t ibc = TensorIndex::offset(b, c, q + r, q) + j * c.dim(r) + l;
                            std::size_t it = TensorIndex::offset(a, *bc, n, p) + i * dbc + ibc;
                            m(it, is) = Scalar(1);
                        }
            }
        f.comp[n] = m;
    }
    return f;
}

CochainMap left_unitor(const CochainComplex& a) {
    auto K = unit_complex();
    auto src = std::make_shared<const CochainComplex>(tensor(K, a));
    auto tgt = std::make_shared<const CochainComplex>(a);
    CochainMap f{src, tgt, 0, {}};
    for (int n : a.degrees()) f.comp[n] = Matrix::identity(a.dim(n));
    return f;
}

Vec hom_element_from_map(const CochainComplex& a, const CochainComplex& b, const CochainMap& f) {
    auto H = internal_hom(a, b);
    int n = f.degree;
    Vec h(H.dim(n));
    for (int k : a.degrees()) {
        std::size_t db = b.dim(n + k), da = a.dim(k);
        if (db == 0) continue;
        std::size_t off = HomIndex::offset(a, b, n, k);
        Matrix fk = f.component(k);
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t i = 0; i < da; ++i) h[off + j * da + i] = fk(j, i);
    }
    return h;
}

CochainMap hom_element_to_map(const ComplexPtr& a, const ComplexPtr& b, int n, const Vec& h) {
    CochainMap f{a, b, n, {}};
    for (int k : a->degrees()) {
        std::size_t db = b->dim(n + k), da = a->dim(k);
        if (db == 0) continue;
        std::size_t off = HomIndex::offset(*a, *b, n, k);
        Matrix fk(db, da);
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t i = 0; i < da; ++i) fk(j, i) = h[off + j * da + i];
        f.comp[k] = fk;
    }
    return f;
}

}  // namespace hqft
