#include "hqft/dga.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hqft {

// ---------------------------------------------------------------- elements

NCElement nc_scalar(const Scalar& s) {
    NCElement e;
    if (!s.is_zero()) e[Word{}] = s;
    return e;
}

NCElement nc_generator(int g, const Scalar& c) {
    NCElement e;
    if (!c.is_zero()) e[Word{g}] = c;
    return e;
}

static void add_term(NCElement& acc, const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = acc.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

void nc_add_to(NCElement& acc, const NCElement& x, const Scalar& c) {
    if (c.is_zero()) return;
    for (const auto& [w, v] : x) add_term(acc, w, c.is_one() ? v : v * c);
}

NCElement nc_add(const NCElement& a, const NCElement& b) {
    NCElement r = a;
    nc_add_to(r, b);
    return r;
}

NCElement nc_sub(const NCElement& a, const NCElement& b) {
    NCElement r = a;
    nc_add_to(r, b, Scalar(-1));
    return r;
}

NCElement nc_scale(const NCElement& a, const Scalar& s) {
    NCElement r;
    nc_add_to(r, a, s);
    return r;
}

bool nc_is_zero(const NCElement& a) { return a.empty(); }

std::size_t nc_max_length(const NCElement& a) {
    std::size_t m = 0;
    for (const auto& kv : a) m = std::max(m, kv.first.size());
    return m;
}

std::string nc_str(const PresentedDGA& A, const NCElement& x) {
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : x) {
        if (!first) os << " + ";
        first = false;
        if (w.empty()) {
            os << c.str();
        } else {
            if (!c.is_one()) os << "(" << c.str() << ")*";
            os << A.word_str(w);
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- algebra

PresentedDGA::PresentedDGA(std::vector<GeneratorSpec> gens, const std::vector<TauEntry>& tau, int cutoff)
    : cutoff_(cutoff) {
    if (cutoff < 1) throw AlgebraError("word cutoff must be positive");
    std::vector<std::size_t> order(gens.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gens[a].degree < gens[b].degree; });
    std::vector<int> pos(gens.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& g = gens[order[k]];
        if (by_name_.count(g.name)) throw AlgebraError("duplicate generator '" + g.name + "'");
        by_name_[g.name] = static_cast<int>(k);
        names_.push_back(g.name);
        degrees_.push_back(g.degree);
        pos[order[k]] = static_cast<int>(k);
    }
    for (std::size_t j = 0; j < gens.size(); ++j) decl_.push_back(pos[j]);

    const std::size_t n = names_.size();
    diffs_.resize(n);
    conj_.resize(n);
    for (std::size_t k = 0; k < n; ++k) conj_[k] = nc_generator(static_cast<int>(k));
    for (std::size_t k = 0; k < n; ++k) {
        const auto& g = gens[order[k]];
        for (const auto& [target, c] : g.diff) {
            int t = index(target);
            if (degrees_[t] != g.degree + 1)
                throw AlgebraError("differential of '" + g.name + "' has wrong degree term '" + target + "'");
            add_term(diffs_[k], Word{t}, c);
        }
    }

    tau_ = Matrix(n, n);
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    for (const auto& e : tau) {
        int a = index(e.g1), b = index(e.g2);
        if (given[a][b] && tau_(a, b) != e.value)
            throw AlgebraError("conflicting tau entries for (" + e.g1 + "," + e.g2 + ")");
        // graded antisymmetry fills the transposed entry
        Scalar mirrored = -Scalar(koszul(degrees_[a], degrees_[b])) * e.value;
        if (given[b][a] && tau_(b, a) != mirrored)
            throw AlgebraError("tau is not graded antisymmetric on (" + e.g1 + "," + e.g2 + ")");
        tau_(a, b) = e.value;
        tau_(b, a) = mirrored;
        given[a][b] = given[b][a] = true;
    }
}

int PresentedDGA::index(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw AlgebraError("unknown generator '" + name + "'");
    return it->second;
}

bool PresentedDGA::differential_is_zero() const {
    return std::all_of(diffs_.begin(), diffs_.end(), [](const NCElement& e) { return e.empty(); });
}

int PresentedDGA::word_degree(const Word& w) const {
    int d = 0;
    for (int g : w) d += degrees_[g];
    return d;
}

bool PresentedDGA::is_normal(const Word& w) const {
    for (std::size_t k = 1; k < w.size(); ++k) {
        if (w[k - 1] > w[k]) return false;
        if (w[k - 1] == w[k] && odd(w[k])) return false;
    }
    return true;
}

std::string PresentedDGA::word_str(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += "*";
        s += names_[w[k]];
    }
    return s;
}

Word PresentedDGA::parse_word(const std::string& text) const {
    Word w;
    if (text.empty() || text == "1") return w;
    std::size_t start = 0;
    while (true) {
        auto p = text.find('*', start);
        w.push_back(index(text.substr(start, p == std::string::npos ? std::string::npos : p - start)));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return w;
}

// x * m with m normal. For x > y = m[0]:
//   x y m' = (-1)^{|x||y|} y (x m') + i tau(x,y) m'.
// Every letter of x m' is >= y, so prepending y keeps words normal except for
// a repeated odd letter, which vanishes.
const NCElement& PresentedDGA::insert_left(int x, const Word& m) const {
    auto key = std::make_pair(x, m);
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = insert_cache_.find(key);
        if (it != insert_cache_.end()) return it->second;
    }
    NCElement out;
    if (m.empty() || x < m[0] || (x == m[0] && !odd(x))) {
        Word w;
        w.reserve(m.size() + 1);
        w.push_back(x);
        w.insert(w.end(), m.begin(), m.end());
        out[w] = Scalar(1);
    } else if (x == m[0]) {
        // odd square vanishes: tau(x,x) = 0 by the degree rule
    } else {
        int y = m[0];
        Word rest(m.begin() + 1, m.end());
        const NCElement& inner = insert_left(x, rest);
        Scalar sgn(koszul(degrees_[x], degrees_[y]));
        for (const auto& [w, c] : inner) {
            if (!w.empty() && w[0] == y && odd(y)) continue;
            Word nw;
            nw.reserve(w.size() + 1);
            nw.push_back(y);
            nw.insert(nw.end(), w.begin(), w.end());
            add_term(out, nw, sgn * c);
        }
        if (!tau_(x, y).is_zero()) add_term(out, rest, Scalar::i() * tau_(x, y));
    }
    std::lock_guard<std::mutex> lock(cache_mu_);
    return insert_cache_.emplace(std::move(key), std::move(out)).first->second;
}

void validate_algebra(const PresentedDGA& A) {
    const int n = static_cast<int>(A.num_generators());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Scalar& t = A.tau(a, b);
            if (t.is_zero()) continue;
            if (A.degree(a) + A.degree(b) != 0)
                throw AlgebraError("tau(" + A.name(a) + "," + A.name(b) + ") is nonzero but degrees do not sum to 0");
            Scalar mirrored = -Scalar(koszul(A.degree(a), A.degree(b))) * A.tau(b, a);
            if (t != mirrored)
                throw AlgebraError("tau is not graded antisymmetric on (" + A.name(a) + "," + A.name(b) + ")");
        }
    // d^2 = 0 on generators
    for (int a = 0; a < n; ++a) {
        NCElement dd;
        for (const auto& [w, c] : A.generator_diff(a)) nc_add_to(dd, A.generator_diff(w[0]), c);
        if (!dd.empty()) throw AlgebraError("d^2 != 0 on generator '" + A.name(a) + "'");
    }
    // d(relation) lies in the ideal: tau(dx,y) + (-1)^{|x|} tau(x,dy) = 0
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Scalar s(0);
            for (const auto& [w, c] : A.generator_diff(a)) s += c * A.tau(w[0], b);
            Scalar t(0);
            for (const auto& [w, c] : A.generator_diff(b)) t += c * A.tau(a, w[0]);
            s += Scalar(koszul(A.degree(a), 1)) * t;
            if (!s.is_zero())
                throw AlgebraError("tau is not compatible with d on (" + A.name(a) + "," + A.name(b) + ")");
        }
}

AlgebraPtr ccr_quantize(const CochainComplex& V, const std::vector<TauEntry>& tau, int cutoff) {
    std::vector<GeneratorSpec> gens;
    for (int n : V.degrees()) {
        const auto& labels = V.labels(n);
        Matrix d = V.diff(n);
        for (std::size_t j = 0; j < labels.size(); ++j) {
            GeneratorSpec g{labels[j], n, {}};
            if (V.dim(n + 1))
                for (std::size_t i = 0; i < d.rows(); ++i)
                    if (!d(i, j).is_zero()) g.diff.emplace_back(V.labels(n + 1)[i], d(i, j));
            gens.push_back(std::move(g));
        }
    }
    auto A = std::make_shared<PresentedDGA>(std::move(gens), tau, cutoff);
    validate_algebra(*A);
    return A;
}

// ---------------------------------------------------------------- products

static void check_cutoff(const PresentedDGA& A, std::size_t len) {
    if (len > static_cast<std::size_t>(A.cutoff()))
        throw CutoffExceeded("word length " + std::to_string(len) + " exceeds cutoff " + std::to_string(A.cutoff()));
}

NCElement multiply_generator_left(const PresentedDGA& A, int g, const NCElement& y) {
    NCElement out;
    for (const auto& [w, c] : y) nc_add_to(out, A.insert_left(g, w), c);
    return out;
}

static NCElement normal_form_unchecked(const PresentedDGA& A, const Word& raw) {
    NCElement acc = nc_scalar(Scalar(1));
    for (auto it = raw.rbegin(); it != raw.rend(); ++it) acc = multiply_generator_left(A, *it, acc);
    return acc;
}

NCElement normal_form_word(const PresentedDGA& A, const Word& raw) {
    check_cutoff(A, raw.size());
    return normal_form_unchecked(A, raw);
}

NCElement normal_form(const PresentedDGA& A, const NCElement& raw) {
    NCElement out;
    for (const auto& [w, c] : raw) nc_add_to(out, normal_form_word(A, w), c);
    return out;
}

NCElement normal_form_rewrite(const PresentedDGA& A, const Word& raw, RewriteStrategy s) {
    check_cutoff(A, raw.size());
    NCElement done, todo;
    todo[raw] = Scalar(1);
    while (!todo.empty()) {
        auto node = todo.extract(todo.begin());
        const Word& w = node.key();
        const Scalar c = node.mapped();
        long hit = -1;
        const long len = static_cast<long>(w.size());
        auto bad = [&](long k) { return w[k] > w[k + 1] || (w[k] == w[k + 1] && A.odd(w[k])); };
        if (s == RewriteStrategy::Leftmost) {
            for (long k = 0; k + 1 < len && hit < 0; ++k)
                if (bad(k)) hit = k;
        } else {
            for (long k = len - 2; k >= 0 && hit < 0; --k)
                if (bad(k)) hit = k;
        }
        if (hit < 0) {
            add_term(done, w, c);
            continue;
        }
        int x = w[hit], y = w[hit + 1];
        if (x == y) continue;  // odd square
        Word swapped = w;
        std::swap(swapped[hit], swapped[hit + 1]);
        add_term(todo, swapped, c * Scalar(koszul(A.degree(x), A.degree(y))));
        if (!A.tau(x, y).is_zero()) {
            Word shorter;
            shorter.insert(shorter.end(), w.begin(), w.begin() + hit);
            shorter.insert(shorter.end(), w.begin() + hit + 2, w.end());
            add_term(todo, shorter, c * Scalar::i() * A.tau(x, y));
        }
    }
    return done;
}

NCElement multiply_unchecked(const PresentedDGA& A, const NCElement& x, const NCElement& y) {
    NCElement out;
    for (const auto& [wx, cx] : x) {
        NCElement acc = y;
        for (auto it = wx.rbegin(); it != wx.rend(); ++it) acc = multiply_generator_left(A, *it, acc);
        nc_add_to(out, acc, cx);
    }
    return out;
}

NCElement multiply(const PresentedDGA& A, const NCElement& x, const NCElement& y) {
    if (!x.empty() && !y.empty()) check_cutoff(A, nc_max_length(x) + nc_max_length(y));
    return multiply_unchecked(A, x, y);
}

NCElement differential(const PresentedDGA& A, const NCElement& x) {
    NCElement out;
    for (const auto& [w, c] : x) {
        int before = 0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            Scalar sgn = sign_pow(before);
            for (const auto& [dw, dc] : A.generator_diff(w[k])) {
                Word raw = w;
                raw[k] = dw[0];
                nc_add_to(out, normal_form_unchecked(A, raw), c * dc * sgn);
            }
            before += A.degree(w[k]);
        }
    }
    return out;
}

int element_degree(const PresentedDGA& A, const NCElement& x) {
    if (x.empty()) return 0;
    int d = A.word_degree(x.begin()->first);
    for (const auto& kv : x)
        if (A.word_degree(kv.first) != d) throw AlgebraError("element is not homogeneous: " + nc_str(A, x));
    return d;
}

static std::map<int, NCElement> split_by_degree(const PresentedDGA& A, const NCElement& x) {
    std::map<int, NCElement> parts;
    for (const auto& [w, c] : x) parts[A.word_degree(w)][w] = c;
    return parts;
}

NCElement graded_commutator(const PresentedDGA& A, const NCElement& x, const NCElement& y) {
    NCElement out;
    for (const auto& [dx, px] : split_by_degree(A, x))
        for (const auto& [dy, py] : split_by_degree(A, y)) {
            nc_add_to(out, multiply(A, px, py));
            nc_add_to(out, multiply(A, py, px), -Scalar(koszul(dx, dy)));
        }
    return out;
}

// Antilinear, graded reversing: (xy)* = (-1)^{|x||y|} y* x*.
NCElement star(const PresentedDGA& A, const NCElement& x) {
    NCElement out;
    for (const auto& [w, c] : x) {
        int sign = 1;
        for (std::size_t a = 0; a < w.size(); ++a)
            for (std::size_t b = a + 1; b < w.size(); ++b) sign *= koszul(A.degree(w[a]), A.degree(w[b]));
        NCElement acc = nc_scalar(Scalar(1));
        for (int g : w) acc = multiply_unchecked(A, A.conjugation(g), acc);
        nc_add_to(out, acc, c.conj() * Scalar(sign));
    }
    return out;
}

// ---------------------------------------------------------------- PBW complexes

std::vector<Word> pbw_monomials(const PresentedDGA& A, int max_length) {
    std::vector<Word> out{Word{}};
    std::vector<Word> frontier{Word{}};
    const int n = static_cast<int>(A.num_generators());
    for (int len = 1; len <= max_length; ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            int start = w.empty() ? 0 : w.back() + (A.odd(w.back()) ? 1 : 0);
            for (int g = start; g < n; ++g) {
                Word nw = w;
                nw.push_back(g);
                next.push_back(std::move(nw));
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

Vec PBWComplex::coordinates(int degree, const NCElement& x) const {
    auto bit = basis.find(degree);
    Vec v(bit == basis.end() ? 0 : bit->second.size());
    for (const auto& [w, c] : x) {
        auto it = position.find(w);
        if (it == position.end() || it->second.first != degree)
            throw CutoffExceeded("monomial outside the truncated PBW basis in degree " + std::to_string(degree));
        v[it->second.second] += c;
    }
    return v;
}

PBWComplex pbw_complex(const PresentedDGA& A, int max_length) {
    PBWComplex P;
    for (const auto& w : pbw_monomials(A, max_length)) {
        int d = A.word_degree(w);
        P.position[w] = {d, P.basis[d].size()};
        P.basis[d].push_back(w);
    }
    GradedSpace s;
    for (const auto& [d, words] : P.basis)
        for (const auto& w : words) s.basis[d].push_back(A.word_str(w));
    std::map<int, Matrix> diffs;
    for (const auto& [d, words] : P.basis) {
        auto nxt = P.basis.find(d + 1);
        if (nxt == P.basis.end()) continue;
        Matrix m(nxt->second.size(), words.size());
        for (std::size_t j = 0; j < words.size(); ++j) {
            NCElement w;
            w[words[j]] = Scalar(1);
            m.set_column(j, P.coordinates(d + 1, differential(A, w)));
        }
        diffs[d] = std::move(m);
    }
    P.complex = CochainComplex(std::move(s), std::move(diffs));
    return P;
}

CohomologyReport truncated_cohomology(const PresentedDGA& A, int max_length) {
    return cohomology(pbw_complex(A, max_length).complex);
}

// ---------------------------------------------------------------- morphisms

DGAMorphism identity_morphism(const AlgebraPtr& A) {
    DGAMorphism f{A, A, {}};
    for (std::size_t g = 0; g < A->num_generators(); ++g) f.images.push_back(nc_generator(static_cast<int>(g)));
    return f;
}

NCElement apply(const DGAMorphism& f, const NCElement& x) {
    const PresentedDGA& T = *f.target;
    NCElement out;
    for (const auto& [w, c] : x) {
        NCElement acc = nc_scalar(Scalar(1));
        for (auto it = w.rbegin(); it != w.rend(); ++it) acc = multiply_unchecked(T, f.images[*it], acc);
        nc_add_to(out, acc, c);
    }
    return out;
}

DGAMorphism compose(const DGAMorphism& g, const DGAMorphism& f) {
    if (f.target != g.source) throw AlgebraError("compose: algebras do not match");
    DGAMorphism h{f.source, g.target, {}};
    for (const auto& img : f.images) h.images.push_back(hqft::apply(g, img));
    return h;
}

bool is_linear_morphism(const DGAMorphism& f) {
    for (const auto& img : f.images)
        for (const auto& kv : img)
            if (kv.first.size() != 1) return false;
    return true;
}

void check_morphism(const DGAMorphism& f) {
    const PresentedDGA& S = *f.source;
    const PresentedDGA& T = *f.target;
    if (f.images.size() != S.num_generators()) throw AlgebraError("morphism must give one image per generator");
    const int n = static_cast<int>(S.num_generators());
    for (int g = 0; g < n; ++g)
        for (const auto& kv : f.images[g])
            if (T.word_degree(kv.first) != S.degree(g))
                throw AlgebraError("image of generator '" + S.name(g) + "' has the wrong degree");
    for (int g = 0; g < n; ++g) {
        NCElement lhs = hqft::apply(f, S.generator_diff(g));
        NCElement rhs = differential(T, f.images[g]);
        if (!nc_sub(lhs, rhs).empty())
            throw AlgebraError("morphism does not commute with d on generator '" + S.name(g) + "'");
    }
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            NCElement r = multiply_unchecked(T, f.images[a], f.images[b]);
            nc_add_to(r, multiply_unchecked(T, f.images[b], f.images[a]), -Scalar(koszul(S.degree(a), S.degree(b))));
            nc_add_to(r, nc_scalar(Scalar::i() * S.tau(a, b)), Scalar(-1));
            if (!r.empty())
                throw AlgebraError("relation (" + S.name(a) + "," + S.name(b) + ") is not preserved: defect " +
                                   nc_str(T, r));
        }
}

CochainMap pbw_map(const DGAMorphism& f, const PBWComplex& src, const PBWComplex& tgt) {
    auto s = std::make_shared<const CochainComplex>(src.complex);
    auto t = std::make_shared<const CochainComplex>(tgt.complex);
    CochainMap m{s, t, 0, {}};
    for (const auto& [d, words] : src.basis) {
        auto tb = tgt.basis.find(d);
        Matrix comp(tb == tgt.basis.end() ? 0 : tb->second.size(), words.size());
        for (std::size_t j = 0; j < words.size(); ++j) {
            NCElement w;
            w[words[j]] = Scalar(1);
            comp.set_column(j, tgt.coordinates(d, hqft::apply(f, w)));
        }
        m.comp[d] = std::move(comp);
    }
    return m;
}

bool is_weak_equivalence_dga(const DGAMorphism& f, int max_length) {
    auto src = pbw_complex(*f.source, max_length);
    auto tgt = pbw_complex(*f.target, max_length);
    return is_quasi_iso(pbw_map(f, src, tgt));
}

}  // namespace hqft
