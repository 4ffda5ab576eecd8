#include "doctest.h"

#include "hqft/nets.hpp"

using namespace hqft;

namespace {

AlgebraPtr algebra_A(int cutoff = 6) {
    GradedSpace s;
    s.basis[-1] = {"e_dagger"};
    s.basis[0] = {"a1", "a2"};
    s.basis[1] = {"e"};
    return ccr_quantize(CochainComplex(s, {}), {{"a2", "a1", Scalar(1)}, {"e", "e_dagger", Scalar(1)}}, cutoff);
}

AlgebraPtr toy_resolution() {
    std::vector<GeneratorSpec> g{{"p", -1, {{"x1", Scalar(1)}}}, {"x1", 0, {}}, {"x2", 0, {}}};
    return std::make_shared<PresentedDGA>(g, std::vector<TauEntry>{}, 6);
}

AlgebraPtr toy_quotient() {
    return std::make_shared<PresentedDGA>(std::vector<GeneratorSpec>{{"y", 0, {}}}, std::vector<TauEntry>{}, 6);
}

Net constant_net(const AlgebraPtr& A, const std::vector<std::string>& objects,
                 const std::vector<std::pair<std::string, std::string>>& less) {
    Net N{poset_site(objects, less), {}, {}};
    N.algebra.assign(objects.size(), A);
    N.map.assign(N.site.arrows.size(), identity_morphism(A));
    return N;
}

std::map<int, std::size_t> dims(const CochainComplex& c) {
    std::map<int, std::size_t> m;
    for (int n : c.degrees()) m[n] = c.dim(n);
    return m;
}

bool acts_nontrivially(const RealizedModule& M, int x) {
    for (int n : M.complex->degrees())
        if (!M.act(x, n).is_zero()) return true;
    return false;
}

}  // namespace

TEST_CASE("poset sites and constant nets") {
    auto S = poset_site({"U", "V", "W"}, {{"U", "V"}, {"V", "W"}});
    CHECK(S.arrows.size() == 6);  // three identities and three strict relations
    CHECK(S.hom(S.object("U"), S.object("W")).size() == 1);
    CHECK_NOTHROW(validate_site(S));
    CHECK_THROWS_AS(poset_site({"U", "V"}, {{"U", "V"}, {"V", "U"}}), NetError);

    auto N = constant_net(algebra_A(), {"U", "V"}, {{"U", "V"}});
    CHECK_NOTHROW(validate_net(N));
    auto R = regular_rep(N, 3);
    CHECK_NOTHROW(validate_rep(R));
    CHECK(is_rep_morphism(identity_rep_morphism(R), R, R));
}

TEST_CASE("a broken composite is reported with the arrow pair") {
    auto A = algebra_A();
    auto N = constant_net(A, {"U", "V", "W"}, {{"U", "V"}, {"V", "W"}});
    auto R = regular_rep(N, 2);
    CHECK_NOTHROW(validate_rep(R));

    int uw = N.site.hom(N.site.object("U"), N.site.object("W"))[0];
    const auto& M = R.module[0];
    Vec twice = M->project(0, {{{Word{}, 0}, Scalar(2)}});
    R.structure[uw] = map_from_generators(M, restrict_module(M, N.map[uw]), {twice});
    try {
        validate_rep(R);
        FAIL("expected the axiom check to throw");
    } catch (const NetError& e) {
        std::string msg = e.what();
        CHECK(msg.find("axiom (ii)") != std::string::npos);
        CHECK(msg.find("(V->W,U->V)") != std::string::npos);
    }
}

TEST_CASE("change of net: restriction and extension") {
    auto A = algebra_A();
    auto N = constant_net(A, {"U", "V"}, {{"U", "V"}});
    auto R = regular_rep(N, 3);
    auto id = identity_net_morphism(N);
    CHECK_NOTHROW(validate_net_morphism(id));

    auto res = change_of_net_res(R, id);
    CHECK_NOTHROW(validate_rep(res));
    for (std::size_t c = 0; c < 2; ++c) CHECK(modules_equal(*res.module[c], *R.module[c]));

    auto ext = change_of_net_ext(R, id, 3);
    CHECK_NOTHROW(validate_rep(ext));
    for (std::size_t c = 0; c < 2; ++c) CHECK(dims(*ext.module[c]->complex) == dims(*R.module[c]->complex));

    auto unit = change_of_net_unit(R, ext, id);
    std::string why;
    CHECK_MESSAGE(is_rep_morphism(unit, R, change_of_net_res(ext, id), &why), why);
    CHECK(is_we_rep(unit));
    CHECK(quillen_unit_check_net(R, id, 3));
}

TEST_CASE("restriction along the toy resolution kills the odd generator") {
    auto Rz = toy_resolution();
    auto Q = toy_quotient();
    auto NR = constant_net(Rz, {"U", "V"}, {{"U", "V"}});
    auto NQ = constant_net(Q, {"U", "V"}, {{"U", "V"}});
    DGAMorphism phi{Rz, Q, {NCElement{}, NCElement{}, nc_generator(0)}};
    NetMorphism F{&NR, &NQ, {phi, phi}};
    CHECK_NOTHROW(validate_net_morphism(F));
    CHECK(is_we_net(F, 3));

    int p = Rz->index("p");
    auto regR = regular_rep(NR, 3);
    CHECK(acts_nontrivially(*regR.module[0], p));

    auto res = change_of_net_res(regular_rep(NQ, 3), F);
    CHECK_NOTHROW(validate_rep(res));
    for (const auto& m : res.module) CHECK_FALSE(acts_nontrivially(*m, p));
}

TEST_CASE("triangle identities for change of net") {
    auto Rz = toy_resolution();
    auto Q = toy_quotient();
    auto NR = constant_net(Rz, {"U", "V"}, {{"U", "V"}});
    auto NQ = constant_net(Q, {"U", "V"}, {{"U", "V"}});
    DGAMorphism phi{Rz, Q, {NCElement{}, NCElement{}, nc_generator(0)}};
    NetMorphism F{&NR, &NQ, {phi, phi}};
    auto t = change_of_net_triangles(regular_rep(NR, 3), regular_rep(NQ, 3), F, 3);
    CHECK(t.first);
    CHECK(t.second);
}

TEST_CASE("evaluation and constant reps") {
    auto A = algebra_A();
    auto N = constant_net(A, {"U", "V", "W"}, {{"U", "V"}, {"V", "W"}});
    auto R = regular_rep(N, 2);
    int w = N.site.object("W");
    auto C = const_rep(N, eval_at(R, w), w);
    CHECK_NOTHROW(validate_rep(C));
    // one factor per arrow into W; none out of W except the identity
    auto d = dims(*R.module[0]->complex);
    for (int c = 0; c < 3; ++c)
        for (auto [n, k] : dims(*C.module[c]->complex)) CHECK(k == d[n] * N.site.hom(c, w).size());

    auto u = N.site.object("U");
    auto CU = const_rep(N, eval_at(R, u), u);
    CHECK(CU.module[w]->complex->is_zero());

    auto L = realize(free_presentation(A, concentrated(0, {"v"})), 2);
    auto t = eval_const_triangles(R, L, w);
    CHECK(t.first);
    CHECK(t.second);
}

TEST_CASE("free reps over a net") {
    auto A = algebra_A();
    auto N = constant_net(A, {"U", "V"}, {{"U", "V"}});
    std::vector<CochainComplex> V{concentrated(0, {"u"}), concentrated(1, {"v"})};
    auto F = free_rep(N, V, 2);
    CHECK_NOTHROW(validate_rep(F));
    auto base = dims(*realize(regular_presentation(A), 2)->complex);
    // U sees only u; V sees u (via U->V) and v
    CHECK(dims(*F.module[0]->complex) == base);
    auto dV = dims(*F.module[1]->complex);
    for (auto [n, k] : dV) CHECK(k == (base.count(n) ? base[n] : 0) + (base.count(n - 1) ? base[n - 1] : 0));

    auto empty = free_rep(N, {zero_complex(), zero_complex()}, 2);
    for (const auto& m : empty.module) CHECK(m->complex->is_zero());

    auto t = free_forget_triangles(N, V, regular_rep(N, 2), 2);
    CHECK(t.first);
    CHECK(t.second);
}

TEST_CASE("path object factors the diagonal") {
    auto A = algebra_A();
    auto N = constant_net(A, {"U", "V"}, {{"U", "V"}});
    auto R = regular_rep(N, 2);
    auto P = path_object(R);
    CHECK_NOTHROW(validate_rep(P.P));
    CHECK_NOTHROW(validate_rep(P.RxR));
    std::string why;
    CHECK_MESSAGE(is_rep_morphism(P.w, R, P.P, &why), why);
    CHECK_MESSAGE(is_rep_morphism(P.f, P.P, P.RxR, &why), why);
    CHECK(is_we_rep(P.w));
    CHECK(is_fib_rep(P.f));
    for (std::size_t c = 0; c < 2; ++c) {
        auto comp = module_compose(P.f.component[c], P.w.component[c]);
        CHECK(comp.map.comp == P.diagonal.component[c].map.comp);
        auto r = dims(*R.module[c]->complex);
        for (auto [n, k] : dims(*P.P.module[c]->complex))
            CHECK(k == 2 * (r.count(n) ? r[n] : 0) + (r.count(n - 1) ? r[n - 1] : 0));
    }
}

TEST_CASE("an injective but not surjective map is not a fibration") {
    auto A = algebra_A();
    auto N = constant_net(A, {"U"}, {});
    auto R = regular_rep(N, 2);
    auto P = path_object(R);
    CHECK_FALSE(is_fib_rep(P.w));
    CHECK(is_fib_rep(identity_rep_morphism(R)));
}
