#include "hqft/nets.hpp"

#include <algorithm>
#include <functional>

namespace hqft {

// ---------------------------------------------------------------- sites

int Site::object(const std::string& name) const {
    for (std::size_t k = 0; k < objects.size(); ++k)
        if (objects[k] == name) return static_cast<int>(k);
    throw NetError("unknown object '" + name + "'");
}

int Site::compose(int g, int f) const {
    auto it = comp.find({g, f});
    if (it == comp.end()) throw NetError("arrows " + arrows[g].name + " and " + arrows[f].name + " do not compose");
    return it->second;
}

std::vector<int> Site::hom(int a, int b) const {
    std::vector<int> out;
    for (std::size_t k = 0; k < arrows.size(); ++k)
        if (arrows[k].source == a && arrows[k].target == b) out.push_back(static_cast<int>(k));
    return out;
}

Site poset_site(const std::vector<std::string>& objects, const std::vector<std::pair<std::string, std::string>>& less) {
    Site S;
    S.objects = objects;
    const std::size_t n = objects.size();
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a) le[a][a] = true;
    for (const auto& [a, b] : less) le[S.object(a)][S.object(b)] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (le[a][k] && le[k][b]) le[a][b] = true;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (le[a][b] && le[b][a] && a != b) throw NetError("poset relation has a cycle through " + objects[a]);
    std::vector<std::vector<int>> arrow(n, std::vector<int>(n, -1));
    S.identity.assign(n, -1);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (le[a][b]) {
                arrow[a][b] = static_cast<int>(S.arrows.size());
                std::string name = a == b ? "id_" + objects[a] : objects[a] + "->" + objects[b];
                S.arrows.push_back({name, static_cast<int>(a), static_cast<int>(b)});
                if (a == b) S.identity[a] = arrow[a][b];
            }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (le[a][b] && le[b][c]) S.comp[{arrow[b][c], arrow[a][b]}] = arrow[a][c];
    return S;
}

void validate_site(const Site& S) {
    const int na = static_cast<int>(S.arrows.size());
    if (S.identity.size() != S.objects.size()) throw NetError("site needs one identity per object");
    for (int f = 0; f < na; ++f) {
        const auto& af = S.arrows[f];
        if (S.compose(S.identity[af.target], f) != f || S.compose(f, S.identity[af.source]) != f)
            throw NetError("identity law fails for " + af.name);
        for (int g = 0; g < na; ++g) {
            if (S.arrows[g].source != af.target) continue;
            int gf = S.compose(g, f);
            if (S.arrows[gf].source != af.source || S.arrows[gf].target != S.arrows[g].target)
                throw NetError("composite of (" + S.arrows[g].name + "," + af.name + ") has the wrong ends");
            for (int h = 0; h < na; ++h) {
                if (S.arrows[h].source != S.arrows[g].target) continue;
                if (S.compose(S.compose(h, g), f) != S.compose(h, gf))
                    throw NetError("associativity fails on (" + S.arrows[h].name + "," + S.arrows[g].name + "," +
                                   af.name + ")");
            }
        }
    }
}

// ---------------------------------------------------------------- nets

bool dga_morphisms_equal(const DGAMorphism& f, const DGAMorphism& g) {
    return f.source == g.source && f.target == g.target && f.images == g.images;
}

void validate_net(const Net& N) {
    const Site& S = N.site;
    validate_site(S);
    if (N.algebra.size() != S.objects.size() || N.map.size() != S.arrows.size())
        throw NetError("net needs one algebra per object and one map per arrow");
    for (std::size_t f = 0; f < S.arrows.size(); ++f) {
        const auto& a = S.arrows[f];
        if (N.map[f].source != N.algebra[a.source] || N.map[f].target != N.algebra[a.target])
            throw NetError("map of " + a.name + " has the wrong algebras");
        try {
            check_morphism(N.map[f]);
        } catch (const AlgebraError& e) {
            throw NetError("map of " + a.name + ": " + e.what());
        }
    }
    for (std::size_t c = 0; c < S.objects.size(); ++c)
        if (!dga_morphisms_equal(N.map[S.identity[c]], identity_morphism(N.algebra[c])))
            throw NetError("map of the identity on " + S.objects[c] + " is not the identity");
    for (const auto& [gf, h] : S.comp)
        if (!dga_morphisms_equal(N.map[h], compose(N.map[gf.first], N.map[gf.second])))
            throw NetError("functoriality fails on (" + S.arrows[gf.first].name + "," + S.arrows[gf.second].name + ")");
}

void validate_net_morphism(const NetMorphism& F) {
    const Site& S = F.source->site;
    if (F.component.size() != S.objects.size()) throw NetError("net morphism needs one component per object");
    for (std::size_t c = 0; c < S.objects.size(); ++c) {
        if (F.component[c].source != F.source->algebra[c] || F.component[c].target != F.target->algebra[c])
            throw NetError("component at " + S.objects[c] + " has the wrong algebras");
        check_morphism(F.component[c]);
    }
    for (std::size_t f = 0; f < S.arrows.size(); ++f) {
        const auto& a = S.arrows[f];
        if (!dga_morphisms_equal(compose(F.component[a.target], F.source->map[f]),
                                 compose(F.target->map[f], F.component[a.source])))
            throw NetError("net morphism is not natural on " + a.name);
    }
}

NetMorphism identity_net_morphism(const Net& N) {
    NetMorphism F{&N, &N, {}};
    for (const auto& A : N.algebra) F.component.push_back(identity_morphism(A));
    return F;
}

bool is_we_net(const NetMorphism& F, int length_cutoff) {
    return std::all_of(F.component.begin(), F.component.end(),
                       [&](const DGAMorphism& f) { return is_weak_equivalence_dga(f, length_cutoff); });
}

// ---------------------------------------------------------------- reps

void validate_rep(const NetRep& R) {
    const Net& N = *R.net;
    const Site& S = N.site;
    if (R.module.size() != S.objects.size() || R.structure.size() != S.arrows.size())
        throw NetError("rep needs one module per object and one structure map per arrow");
    for (std::size_t c = 0; c < S.objects.size(); ++c)
        if (R.module[c]->algebra != N.algebra[c]) throw NetError("module at " + S.objects[c] + " has the wrong algebra");
    for (std::size_t f = 0; f < S.arrows.size(); ++f) {
        const auto& a = S.arrows[f];
        const auto& m = R.structure[f];
        if (m.source->complex->space().basis != R.module[a.source]->complex->space().basis ||
            m.target->complex->space().basis != R.module[a.target]->complex->space().basis ||
            m.target->algebra != N.algebra[a.source])
            throw NetError("structure map of " + a.name + " has the wrong modules");
        std::string why;
        if (!is_module_morphism(m, &why)) throw NetError("structure map of " + a.name + ": " + why);
    }
    for (std::size_t c = 0; c < S.objects.size(); ++c)
        if (!is_identity_on_valid(R.structure[S.identity[c]]))
            throw NetError("axiom (i) fails: structure map of id_" + S.objects[c] + " is not the identity");
    for (const auto& [gf, h] : S.comp) {
        auto [g, f] = gf;
        auto composite = module_compose(restrict_map(R.structure[g], N.map[f]), R.structure[f]);
        if (!maps_equal_on_valid(R.structure[h], composite))
            throw NetError("axiom (ii) fails on (" + S.arrows[g].name + "," + S.arrows[f].name + ")");
    }
}

bool is_rep_morphism(const RepMorphism& F, const NetRep& source, const NetRep& target, std::string* why) {
    const Net& N = *source.net;
    const Site& S = N.site;
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (F.component.size() != S.objects.size()) return fail("one component per object is required");
    for (std::size_t c = 0; c < S.objects.size(); ++c)
        if (!is_module_morphism(F.component[c], why)) return false;
    for (std::size_t f = 0; f < S.arrows.size(); ++f) {
        const auto& a = S.arrows[f];
        auto lhs = module_compose(target.structure[f], F.component[a.source]);
        auto rhs = module_compose(restrict_map(F.component[a.target], N.map[f]), source.structure[f]);
        if (!maps_equal_on_valid(lhs, rhs)) return fail("not natural on " + a.name);
    }
    return true;
}

bool is_we_rep(const RepMorphism& F) {
    return std::all_of(F.component.begin(), F.component.end(), [](const ModuleMap& m) { return is_we_module(m); });
}

bool is_fib_rep(const RepMorphism& F) {
    return std::all_of(F.component.begin(), F.component.end(), [](const ModuleMap& m) { return is_fib_module(m); });
}

RepMorphism identity_rep_morphism(const NetRep& R) {
    RepMorphism F;
    for (const auto& m : R.module) F.component.push_back(module_identity(m));
    return F;
}

RealizedPtr zero_module(const AlgebraPtr& A) {
    auto Z = std::make_shared<RealizedModule>();
    Z->algebra = A;
    Z->complex = std::make_shared<const CochainComplex>();
    Z->action.resize(A->num_generators());
    Z->valid.assign(A->num_generators(), 0);
    Z->reach.assign(A->num_generators(), 0);
    return Z;
}

static Vec generator_unit(const RealizedModule& M, int g) {
    ModuleElement e;
    e[{Word{}, g}] = Scalar(1);
    return M.project(M.presentation->generators[g].degree, e);
}

NetRep regular_rep(const Net& N, int cutoff) {
    NetRep R{&N, {}, {}};
    for (const auto& A : N.algebra) R.module.push_back(realize(regular_presentation(A), cutoff));
    for (std::size_t f = 0; f < N.site.arrows.size(); ++f) {
        const auto& a = N.site.arrows[f];
        auto tgt = restrict_module(R.module[a.target], N.map[f]);
        R.structure.push_back(map_from_generators(R.module[a.source], tgt, {generator_unit(*R.module[a.target], 0)}));
    }
    return R;
}

NetRep change_of_net_res(const NetRep& R, const NetMorphism& F) {
    if (F.target != R.net) throw NetError("restriction along a net morphism with the wrong target");
    const Net& N = *F.source;
    NetRep out{&N, {}, {}};
    for (std::size_t c = 0; c < N.site.objects.size(); ++c) out.module.push_back(restrict_module(R.module[c], F.component[c]));
    for (std::size_t f = 0; f < N.site.arrows.size(); ++f) {
        const auto& a = N.site.arrows[f];
        const auto& m = R.structure[f];
        out.structure.push_back({out.module[a.source], restrict_module(out.module[a.target], N.map[f]), m.map, m.valid});
    }
    return out;
}

static ModuleElement lift_vector(const RealizedModule& M, int degree, const Vec& v) {
    ModuleElement e;
    const auto& terms = M.basis_terms.at(degree);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) e[terms[i]] = v[i];
    return e;
}

static ModuleElement push_forward(const DGAMorphism& phi, const ModuleElement& x) {
    ModuleElement out;
    for (const auto& [t, c] : x) {
        NCElement w;
        w[t.first] = Scalar(1);
        for (const auto& [nw, nc] : hqft::apply(phi, w)) {
            auto& slot = out[{nw, t.second}];
            slot += c * nc;
            if (slot.is_zero()) out.erase({nw, t.second});
        }
    }
    return out;
}

NetRep change_of_net_ext(const NetRep& R, const NetMorphism& F, int cutoff) {
    if (F.source != R.net) throw NetError("extension along a net morphism with the wrong source");
    const Net& N = *F.target;
    NetRep out{&N, {}, {}};
    for (std::size_t c = 0; c < N.site.objects.size(); ++c) {
        if (!R.module[c]->presentation) throw NetError("extension needs presented modules");
        out.module.push_back(realize(extend_presentation(R.module[c]->presentation, F.component[c]), cutoff));
    }
    for (std::size_t f = 0; f < N.site.arrows.size(); ++f) {
        const auto& a = N.site.arrows[f];
        const auto& src = *R.module[a.source];
        const auto& tgt = *R.module[a.target];
        std::vector<Vec> images;
        for (std::size_t g = 0; g < src.presentation->generators.size(); ++g) {
            int n = src.presentation->generators[g].degree;
            Vec v = R.structure[f].map.component(n) * generator_unit(src, static_cast<int>(g));
            Vec img = v.empty() ? Vec{} : out.module[a.target]->project(n, push_forward(F.component[a.target], lift_vector(tgt, n, v)));
            if (img.empty()) img.assign(out.module[a.target]->complex->dim(n), Scalar(0));
            images.push_back(std::move(img));
        }
        out.structure.push_back(
            map_from_generators(out.module[a.source], restrict_module(out.module[a.target], N.map[f]), images));
    }
    return out;
}

RepMorphism change_of_net_unit(const NetRep& R, const NetRep& ext, const NetMorphism& F) {
    RepMorphism U;
    for (std::size_t c = 0; c < R.module.size(); ++c) {
        const auto& E = ext.module[c];
        std::vector<Vec> images;
        for (std::size_t g = 0; g < E->presentation->generators.size(); ++g)
            images.push_back(generator_unit(*E, static_cast<int>(g)));
        U.component.push_back(map_from_generators(R.module[c], restrict_module(E, F.component[c]), images));
    }
    return U;
}

ChangeOfNetTriangles change_of_net_triangles(const NetRep& R, const NetRep& S, const NetMorphism& F, int cutoff) {
    ChangeOfNetTriangles t{true, true};
    for (std::size_t c = 0; c < R.module.size(); ++c) {
        auto r = triangle_identities(R.module[c]->presentation, S.module[c]->presentation, F.component[c], cutoff);
        t.first = t.first && r.first;
        t.second = t.second && r.second;
    }
    return t;
}

// ---------------------------------------------------------------- eval / const

RealizedPtr eval_at(const NetRep& R, int object) { return R.module[object]; }

static RealizedPtr sum_of(const std::vector<RealizedPtr>& parts, const AlgebraPtr& A) {
    if (parts.empty()) return zero_module(A);
    RealizedPtr acc = parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k) acc = direct_sum_module(acc, parts[k]);
    return acc;
}

static std::size_t position(const std::vector<int>& v, int x) {
    auto it = std::find(v.begin(), v.end(), x);
    if (it == v.end()) throw NetError("arrow missing from hom-set");
    return static_cast<std::size_t>(it - v.begin());
}

NetRep const_rep(const Net& N, const RealizedPtr& L, int object) {
    const Site& S = N.site;
    if (L->algebra != N.algebra[object]) throw NetError("const_rep: module over the wrong algebra");
    NetRep C{&N, {}, {}};
    for (std::size_t c = 0; c < S.objects.size(); ++c) {
        std::vector<RealizedPtr> parts;
        for (int g : S.hom(static_cast<int>(c), object)) parts.push_back(restrict_module(L, N.map[g]));
        C.module.push_back(sum_of(parts, N.algebra[c]));
    }
    // component gamma' of the image is component gamma' o delta of the input
    for (std::size_t f = 0; f < S.arrows.size(); ++f) {
        const auto& a = S.arrows[f];
        auto H1 = S.hom(a.source, object), H2 = S.hom(a.target, object);
        auto src = C.module[a.source];
        auto tgt = restrict_module(C.module[a.target], N.map[f]);
        CochainMap m{src->complex, tgt->complex, 0, {}};
        for (int n : L->complex->degrees()) {
            std::size_t d = L->complex->dim(n);
            Matrix b(H2.size() * d, H1.size() * d);
            for (std::size_t j = 0; j < H2.size(); ++j) {
                std::size_t i = position(H1, S.compose(H2[j], static_cast<int>(f)));
                b.set_block(j * d, i * d, Matrix::identity(d));
            }
            if (b.rows() && b.cols()) m.comp[n] = b;
        }
        C.structure.push_back({src, tgt, m, src->max_level()});
    }
    return C;
}

RepMorphism const_unit(const NetRep& R, const NetRep& C, int object) {
    const Site& S = R.net->site;
    RepMorphism eta;
    for (std::size_t c = 0; c < S.objects.size(); ++c) {
        auto H = S.hom(static_cast<int>(c), object);
        CochainMap m{R.module[c]->complex, C.module[c]->complex, 0, {}};
        int valid = R.module[c]->max_level();
        for (int n : R.module[c]->complex->degrees()) {
            std::size_t d = R.module[object]->complex->dim(n);
            Matrix b(H.size() * d, R.module[c]->complex->dim(n));
            for (std::size_t j = 0; j < H.size(); ++j)
                if (d) b.set_block(j * d, 0, R.structure[H[j]].map.component(n));
            if (b.rows()) m.comp[n] = b;
        }
        for (int g : H) valid = std::min(valid, R.structure[g].valid);
        eta.component.push_back({R.module[c], C.module[c], m, valid});
    }
    return eta;
}

ModuleMap const_counit(const NetRep& C, const RealizedPtr& L, int object) {
    const Site& S = C.net->site;
    auto H = S.hom(object, object);
    std::size_t k = position(H, S.identity[object]);
    CochainMap m{C.module[object]->complex, L->complex, 0, {}};
    for (int n : L->complex->degrees()) {
        std::size_t d = L->complex->dim(n);
        Matrix b(d, H.size() * d);
        b.set_block(0, k * d, Matrix::identity(d));
        m.comp[n] = b;
    }
    return {C.module[object], L, m, C.module[object]->max_level()};
}

EvalConstTriangles eval_const_triangles(const NetRep& R, const RealizedPtr& L, int object) {
    const Net& N = *R.net;
    EvalConstTriangles t;
    {
        auto C = const_rep(N, eval_at(R, object), object);
        auto eta = const_unit(R, C, object);
        auto eps = const_counit(C, eval_at(R, object), object);
        auto comp = module_compose(eps, eta.component[object]);
        t.first = is_rep_morphism(eta, R, C) && is_identity_on_valid(comp) && comp.valid == R.module[object]->max_level();
    }
    {
        auto C = const_rep(N, L, object);
        auto C2 = const_rep(N, eval_at(C, object), object);
        auto eta = const_unit(C, C2, object);
        auto eps = const_counit(C, L, object);
        bool ok = is_rep_morphism(eta, C, C2);
        for (std::size_t c = 0; c < N.site.objects.size() && ok; ++c) {
            // const(eps) at c is eps on every factor
            auto H = N.site.hom(static_cast<int>(c), object);
            CochainMap m{C2.module[c]->complex, C.module[c]->complex, 0, {}};
            for (int n : L->complex->degrees()) {
                Matrix e = eps.map.component(n);
                Matrix b(H.size() * e.rows(), H.size() * e.cols());
                for (std::size_t j = 0; j < H.size(); ++j) b.set_block(j * e.rows(), j * e.cols(), e);
                if (b.rows()) m.comp[n] = b;
            }
            ModuleMap const_eps{C2.module[c], C.module[c], m, C2.module[c]->max_level()};
            auto comp = module_compose(const_eps, eta.component[c]);
            ok = is_identity_on_valid(comp) && comp.valid == C.module[c]->max_level();
        }
        t.second = ok;
    }
    return t;
}

// ---------------------------------------------------------------- free / forget

namespace {

struct FreeLayout {
    CochainComplex W;
    // (arrow, degree, index in V) -> generator index of the free presentation
    std::map<std::tuple<int, int, std::size_t>, int> gen;
};

CochainComplex relabel(const CochainComplex& V, const std::string& prefix) {
    GradedSpace s;
    std::map<int, Matrix> d;
    for (int n : V.degrees()) {
        for (const auto& l : V.labels(n)) s.basis[n].push_back(prefix + l);
        if (V.has_diff(n)) d[n] = V.diff(n);
    }
    return CochainComplex(std::move(s), std::move(d));
}

FreeLayout free_layout(const Site& S, const std::vector<CochainComplex>& V, int c) {
    FreeLayout out;
    std::vector<int> arrows;
    for (std::size_t f = 0; f < S.arrows.size(); ++f)
        if (S.arrows[f].target == c && !V[S.arrows[f].source].is_zero()) arrows.push_back(static_cast<int>(f));
    bool first = true;
    for (int f : arrows) {
        auto part = relabel(V[S.arrows[f].source], S.arrows[f].name + ":");
        out.W = first ? part : direct_sum(out.W, part);
        first = false;
    }
    // free_presentation orders generators by degree, then by label position
    std::map<int, int> start;
    int total = 0;
    for (int n : out.W.degrees()) {
        start[n] = total;
        total += static_cast<int>(out.W.dim(n));
    }
    std::map<int, int> used;
    for (int f : arrows) {
        const auto& Vs = V[S.arrows[f].source];
        for (int n : Vs.degrees())
            for (std::size_t i = 0; i < Vs.dim(n); ++i) out.gen[{f, n, i}] = start[n] + used[n]++;
    }
    return out;
}

}  // namespace

NetRep free_rep(const Net& N, const std::vector<CochainComplex>& V, int cutoff) {
    const Site& S = N.site;
    NetRep F{&N, {}, {}};
    std::vector<FreeLayout> lay;
    for (std::size_t c = 0; c < S.objects.size(); ++c) {
        lay.push_back(free_layout(S, V, static_cast<int>(c)));
        F.module.push_back(realize(free_presentation(N.algebra[c], lay.back().W), cutoff));
    }
    for (std::size_t f = 0; f < S.arrows.size(); ++f) {
        const auto& a = S.arrows[f];
        const auto& Ls = lay[a.source];
        std::vector<Vec> images(F.module[a.source]->presentation->generators.size());
        for (const auto& [key, g] : Ls.gen) {
            auto [arrow, n, i] = key;
            int h = lay[a.target].gen.at({S.compose(static_cast<int>(f), arrow), n, i});
            images[g] = generator_unit(*F.module[a.target], h);
        }
        F.structure.push_back(
            map_from_generators(F.module[a.source], restrict_module(F.module[a.target], N.map[f]), images));
    }
    return F;
}

std::vector<CochainComplex> forget(const NetRep& R) {
    std::vector<CochainComplex> out;
    for (const auto& m : R.module) out.push_back(*m->complex);
    return out;
}

// counit F U R -> R: generator (gamma: c' -> c, l) goes to R_gamma(l)
static RepMorphism free_counit(const NetRep& FU, const NetRep& R, const std::vector<FreeLayout>& lay) {
    const Site& S = R.net->site;
    RepMorphism eps;
    for (std::size_t c = 0; c < S.objects.size(); ++c) {
        std::vector<Vec> images(FU.module[c]->presentation->generators.size());
        for (const auto& [key, g] : lay[c].gen) {
            auto [arrow, n, i] = key;
            images[g] = R.structure[arrow].map.component(n).column(i);
        }
        eps.component.push_back(map_from_generators(FU.module[c], R.module[c], images));
    }
    return eps;
}

FreeForgetTriangles free_forget_triangles(const Net& N, const std::vector<CochainComplex>& V, const NetRep& R,
                                          int cutoff) {
    const Site& S = N.site;
    FreeForgetTriangles t{true, true};
    auto layouts = [&](const std::vector<CochainComplex>& W) {
        std::vector<FreeLayout> out;
        for (std::size_t c = 0; c < S.objects.size(); ++c) out.push_back(free_layout(S, W, static_cast<int>(c)));
        return out;
    };
    {
        // U(eps_R) o eta_{UR} = id: l |-> (id, l) |-> R_id(l)
        auto UR = forget(R);
        auto FU = free_rep(N, UR, cutoff);
        auto lay = layouts(UR);
        auto eps = free_counit(FU, R, lay);
        for (std::size_t c = 0; c < S.objects.size() && t.second; ++c)
            for (int n : UR[c].degrees()) {
                Matrix eta(FU.module[c]->complex->dim(n), UR[c].dim(n));
                for (std::size_t i = 0; i < UR[c].dim(n); ++i)
                    eta.set_column(i, generator_unit(*FU.module[c], lay[c].gen.at({S.identity[c], n, i})));
                if (eps.component[c].map.component(n) * eta != Matrix::identity(UR[c].dim(n))) t.second = false;
            }
    }
    {
        // eps_{FV} o F(eta_V) = id on F V
        auto FV = free_rep(N, V, cutoff);
        auto UFV = forget(FV);
        auto FUFV = free_rep(N, UFV, cutoff);
        auto layV = layouts(V), layU = layouts(UFV);
        auto eps = free_counit(FUFV, FV, layU);
        for (std::size_t c = 0; c < S.objects.size() && t.first; ++c) {
            // F(eta) sends the generator (gamma, v) to (gamma, eta(v)) with eta(v) = (id, v)
            std::vector<Vec> images(FV.module[c]->presentation->generators.size());
            for (const auto& [key, g] : layV[c].gen) {
                auto [arrow, n, i] = key;
                int src = S.arrows[arrow].source;
                Vec ev = generator_unit(*FV.module[src], layV[src].gen.at({S.identity[src], n, i}));
                Vec img(FUFV.module[c]->complex->dim(n));
                for (std::size_t k = 0; k < ev.size(); ++k)
                    if (!ev[k].is_zero())
                        img = vec_add(img, vec_scale(generator_unit(*FUFV.module[c], layU[c].gen.at({arrow, n, k})), ev[k]));
                images[g] = img;
            }
            // the images sit on generators of level 0, where eps is exact; composing on generators
            // keeps the composite exact on every level
            for (std::size_t g = 0; g < images.size(); ++g) {
                int n = FV.module[c]->presentation->generators[g].degree;
                images[g] = eps.component[c].map.component(n) * images[g];
            }
            auto comp = map_from_generators(FV.module[c], FV.module[c], images);
            t.first = is_identity_on_valid(comp) && comp.valid == FV.module[c]->max_level();
        }
    }
    return t;
}

// ---------------------------------------------------------------- path object

// [V, M] -> [V', M], h |-> h o f
static CochainMap precompose(const CochainMap& f, const ComplexPtr& M, const ComplexPtr& src, const ComplexPtr& tgt) {
    const auto& V = *f.target;
    const auto& Vp = *f.source;
    CochainMap out{src, tgt, 0, {}};
    for (int n : src->degrees()) {
        Matrix m(tgt->dim(n), src->dim(n));
        for (int k : V.degrees()) {
            std::size_t dm = M->dim(n + k), dv = V.dim(k), dvp = Vp.dim(k);
            if (!dm || !dvp) continue;
            Matrix fk = f.component(k);
            std::size_t so = HomIndex::offset(V, *M, n, k), to = HomIndex::offset(Vp, *M, n, k);
            for (std::size_t j = 0; j < dm; ++j)
                for (std::size_t i = 0; i < dv; ++i)
                    for (std::size_t ip = 0; ip < dvp; ++ip)
                        if (!fk(i, ip).is_zero()) m(to + j * dvp + ip, so + j * dv + i) += fk(i, ip);
        }
        out.comp[n] = m;
    }
    return out;
}

// [V, M] -> [V, M'], h |-> g o h
static CochainMap postcompose(const CochainMap& g, const CochainComplex& V, const ComplexPtr& src, const ComplexPtr& tgt) {
    const auto& M = *g.source;
    const auto& Mp = *g.target;
    CochainMap out{src, tgt, 0, {}};
    for (int n : src->degrees()) {
        Matrix m(tgt->dim(n), src->dim(n));
        for (int k : V.degrees()) {
            std::size_t dm = M.dim(n + k), dmp = Mp.dim(n + k), dv = V.dim(k);
            if (!dm || !dmp) continue;
            Matrix gk = g.component(n + k);
            std::size_t so = HomIndex::offset(V, M, n, k), to = HomIndex::offset(V, Mp, n, k);
            for (std::size_t j = 0; j < dm; ++j)
                for (std::size_t jp = 0; jp < dmp; ++jp) {
                    if (gk(jp, j).is_zero()) continue;
                    for (std::size_t i = 0; i < dv; ++i) m(to + jp * dv + i, so + j * dv + i) = gk(jp, j);
                }
        }
        out.comp[n] = m;
    }
    return out;
}

static NetRep power_rep(const NetRep& R, const CochainComplex& V) {
    const Net& N = *R.net;
    NetRep P{&N, {}, {}};
    for (const auto& m : R.module) P.module.push_back(power_module(m, V));
    for (std::size_t f = 0; f < N.site.arrows.size(); ++f) {
        const auto& a = N.site.arrows[f];
        auto tgt = restrict_module(P.module[a.target], N.map[f]);
        P.structure.push_back({P.module[a.source], tgt,
                               postcompose(R.structure[f].map, V, P.module[a.source]->complex, tgt->complex),
                               R.structure[f].valid});
    }
    return P;
}

PathObject path_object(const NetRep& R) {
    auto I = interval_object();
    auto K = std::make_shared<const CochainComplex>(unit_complex());
    PathObject out{power_rep(R, *I.interval), power_rep(R, *I.endpoints), {}, {}, {}};
    // R_c is identified with [K, R_c]: same coordinates
    auto codiag = compose(I.r, I.b);
    for (std::size_t c = 0; c < R.module.size(); ++c) {
        const auto& M = R.module[c];
        int top = M->max_level();
        out.w.component.push_back({M, out.P.module[c], precompose(I.r, M->complex, M->complex, out.P.module[c]->complex), top});
        out.f.component.push_back({out.P.module[c], out.RxR.module[c],
                                   precompose(I.b, M->complex, out.P.module[c]->complex, out.RxR.module[c]->complex), top});
        out.diagonal.component.push_back(
            {M, out.RxR.module[c], precompose(codiag, M->complex, M->complex, out.RxR.module[c]->complex), top});
    }
    return out;
}

bool quillen_unit_check_net(const NetRep& R, const NetMorphism& F, int cutoff) {
    auto ext = change_of_net_ext(R, F, cutoff);
    auto unit = change_of_net_unit(R, ext, F);
    auto res = change_of_net_res(ext, F);
    return is_rep_morphism(unit, R, res) && is_we_rep(unit);
}

}  // namespace hqft
