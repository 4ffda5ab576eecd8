#include <random>

#include "hqft/suites.hpp"

namespace hqft::maxwell {

namespace {

using nlohmann::json;

CochainComplex concentrated(const std::map<int, std::size_t>& dims, const std::string& prefix) {
    GradedSpace s;
    for (const auto& [n, d] : dims)
        for (std::size_t i = 0; i < d; ++i) s.basis[n].push_back(prefix + std::to_string(n) + "_" + std::to_string(i));
    return CochainComplex(s, {});
}

// every check of a path object: R -> P -> R x R factors the diagonal, w a we, f a fibration
std::string path_object_defect(const NetRep& R) {
    auto P = path_object(R);
    try {
        validate_rep(P.P);
        validate_rep(P.RxR);
    } catch (const std::exception& e) {
        return e.what();
    }
    std::string why;
    if (!is_rep_morphism(P.w, R, P.P, &why)) return "w: " + why;
    if (!is_rep_morphism(P.f, P.P, P.RxR, &why)) return "f: " + why;
    if (!is_we_rep(P.w)) return "w is not a weak equivalence";
    if (!is_fib_rep(P.f)) return "f is not a fibration";
    for (std::size_t c = 0; c < R.module.size(); ++c)
        if (module_compose(P.f.component[c], P.w.component[c]).map.comp != P.diagonal.component[c].map.comp)
            return "f w differs from the diagonal at object " + std::to_string(c);
    return "";
}

}  // namespace

Report run_categorical(const Config& cfg, unsigned seed) {
    Report r;
    auto kg = build_kg(cfg);
    const Net &T = kg->tilde, &B = kg->reduced;
    const int top = static_cast<int>(T.site.objects.size()) - 1;
    const int cut = 2;
    const auto& Balg = B.algebra[0];

    // change of monoid along each component of the comparison morphism
    json failed = json::array();
    for (std::size_t c = 0; c < T.algebra.size(); ++c) {
        auto t = triangle_identities(free_presentation(T.algebra[c], concentrated({{0, 1}}, "v")),
                                     regular_presentation(Balg), kg->phi.component[c], cut);
        if (!t.first || !t.second) failed.push_back(T.site.objects[c]);
    }
    r.add("categorical.change_of_monoid", "Ext -| Res triangle identities along every component", failed.empty(), 0,
          failed.empty() ? json(nullptr) : failed);

    auto regT = regular_rep(T, cut), regB = regular_rep(B, cut);
    auto con = change_of_net_triangles(regT, regB, kg->phi, cut);
    r.add("categorical.change_of_net", "Ext -| Res triangle identities for the comparison of nets",
          con.first && con.second, 0, json{{"first", con.first}, {"second", con.second}});

    auto L = realize(free_presentation(T.algebra[top], concentrated({{0, 1}}, "v")), cut);
    auto ec = eval_const_triangles(regT, L, top);
    r.add("categorical.eval_const", "eval_M -| const_M triangle identities", ec.first && ec.second, 0,
          json{{"first", ec.first}, {"second", ec.second}});

    std::vector<CochainComplex> V{concentrated({{0, 1}}, "u"), concentrated({}, "w"), concentrated({{-1, 1}}, "x")};
    // on the reduced net: F U F V is quadratic in the algebra size
    auto ff = free_forget_triangles(B, V, regB, cut);
    r.add("categorical.free_forget", "free -| forget triangle identities", ff.first && ff.second, 0,
          json{{"first", ff.first}, {"second", ff.second}});

    // restriction along the comparison preserves weak equivalences and fibrations
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-2, 2), small(0, 2);
    int we_seen = 0, fib_seen = 0, bad = 0;
    json res_witness;
    for (int i = 0; i < 20; ++i) {
        auto V1 = concentrated({{0, std::size_t(1 + small(rng) % 2)}, {1, std::size_t(small(rng))}}, "s");
        auto V2 = i % 4 == 0 ? V1 : concentrated({{0, std::size_t(1 + small(rng))}, {1, std::size_t(small(rng))}}, "t");
        auto src = realize(free_presentation(Balg, V1), 3), tgt = realize(free_presentation(Balg, V2), 3);
        std::vector<Vec> images;
        const auto& P = *src->presentation;
        for (std::size_t g = 0; g < P.generators.size(); ++g) {
            int n = P.generators[g].degree;
            ModuleElement x;
            const auto& Q = *tgt->presentation;
            for (std::size_t h = 0; h < Q.generators.size(); ++h)
                if (Q.generators[h].degree == n) {
                    int a = i % 4 == 0 ? (g == h ? 1 : 0) : coef(rng);
                    if (a) x[{Word{}, static_cast<int>(h)}] = Scalar(a);
                }
            images.push_back(tgt->project(n, x));
        }
        auto f = map_from_generators(src, tgt, images);
        auto comp = kg->phi.component[i % kg->phi.component.size()];
        auto rf = restrict_map(f, comp);
        bool we = is_we_module(f), fib = is_fib_module(f);
        we_seen += we;
        fib_seen += fib;
        std::string why;
        bool ok = is_module_morphism(f, &why) && is_module_morphism(rf, &why) && is_we_module(rf) == we &&
                  is_fib_module(rf) == fib;
        if (!ok && bad++ == 0) res_witness = "instance " + std::to_string(i) + (why.empty() ? "" : ": " + why);
    }
    r.add("categorical.res_preserves", "restriction preserves weak equivalences and fibrations (20 instances)",
          bad == 0 && we_seen > 0 && fib_seen > 0, bad,
          bad ? res_witness : json{{"we", we_seen}, {"fib", fib_seen}});

    // path objects for ten representations
    MaxwellNet mn = build_maxwell_net(cfg);
    auto gns = build_gns(mn, 2);
    std::vector<std::pair<std::string, NetRep>> reps;
    reps.push_back({"reduced_regular_2", regB});
    reps.push_back({"reduced_regular_3", regular_rep(B, 3)});
    reps.push_back({"tilde_regular_1", regular_rep(T, 1)});
    reps.push_back({"tilde_free_1", free_rep(T, V, 1)});
    reps.push_back({"restricted_reduced", change_of_net_res(regular_rep(B, 3), kg->phi)});
    reps.push_back({"tilde_const_1", const_rep(T, realize(L->presentation, 1), top)});
    reps.push_back({"maxwell_gns", gns.rep});
    reps.push_back({"maxwell_regular_1", regular_rep(mn.net, 1)});
    std::vector<CochainComplex> W(mn.net.site.objects.size());
    W[0] = concentrated({{0, 1}}, "u");
    reps.push_back({"maxwell_free", free_rep(mn.net, W, 1)});
    reps.push_back({"maxwell_const", const_rep(mn.net, realize(regular_presentation(mn.global), 1), mn.top)});
    json bad_paths = json::object();
    for (const auto& [name, R] : reps) {
        auto why = path_object_defect(R);
        if (!why.empty()) bad_paths[name] = why;
    }
    r.add("categorical.path_object", "path objects factor the diagonal as a we followed by a fibration (10 instances)",
          bad_paths.empty(), 0, bad_paths.empty() ? json(nullptr) : bad_paths);
    return r;
}

}  // namespace hqft::maxwell
