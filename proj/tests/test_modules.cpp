#include "doctest.h"

#include "hqft/modules.hpp"

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

DGAMorphism toy_phi(const AlgebraPtr& R, const AlgebraPtr& Q) { return {R, Q, {NCElement{}, NCElement{}, nc_generator(0)}}; }

// rescaling automorphism that preserves tau
DGAMorphism rescale(const AlgebraPtr& A, const Scalar& s, const Scalar& t) {
    auto f = identity_morphism(A);
    f.images[A->index("a1")] = nc_generator(A->index("a1"), s);
    f.images[A->index("a2")] = nc_generator(A->index("a2"), s.inverse());
    f.images[A->index("e")] = nc_generator(A->index("e"), t);
    f.images[A->index("e_dagger")] = nc_generator(A->index("e_dagger"), t.inverse());
    return f;
}

std::map<int, std::size_t> dims(const CochainComplex& c) {
    std::map<int, std::size_t> m;
    for (int n : c.degrees()) m[n] = c.dim(n);
    return m;
}

std::map<int, std::size_t> pbw_dims(const PresentedDGA& A, int L, int shift = 0) {
    std::map<int, std::size_t> m;
    for (const auto& w : pbw_monomials(A, L)) ++m[A.word_degree(w) + shift];
    return m;
}

CochainComplex two_term() {
    GradedSpace s;
    s.basis[-1] = {"u"};
    s.basis[0] = {"v", "w"};
    Matrix d(2, 1);
    d(0, 0) = 1;
    return CochainComplex(s, {{-1, d}});
}

}  // namespace

TEST_CASE("regular and free realizations") {
    auto A = algebra_A();
    auto M = realize(regular_presentation(A), 3);
    CHECK(dims(*M->complex) == pbw_dims(*A, 3));
    CHECK_NOTHROW(validate_module(*M));

    auto F = realize(free_presentation(A, concentrated(1, {"v"})), 3);
    CHECK(dims(*F->complex) == pbw_dims(*A, 3, 1));
    CHECK_NOTHROW(validate_module(*F));

    auto R = toy_resolution();
    auto RM = realize(regular_presentation(R), 3);
    CHECK_NOTHROW(validate_module(*RM));
    CHECK(cohomology(*RM->complex).dims == truncated_cohomology(*R, 3).dims);
}

TEST_CASE("commutator acts as a scalar on interior levels") {
    auto A = algebra_A();
    auto M = realize(regular_presentation(A), 4);
    int a1 = A->index("a1"), a2 = A->index("a2");
    Matrix c = M->act(a2, 0 + 0) * M->act(a1, 0) - M->act(a1, 0) * M->act(a2, 0);
    const auto& lv = M->level.at(0);
    for (std::size_t j = 0; j < lv.size(); ++j) {
        if (lv[j] > 2) continue;
        CHECK(c.column(j) == vec_scale(unit_vec(lv.size(), j), Scalar::i()));
    }
}

TEST_CASE("quotient by a left ideal") {
    auto A = algebra_A();
    auto P = std::make_shared<ModulePresentation>(*regular_presentation(A));
    ModuleElement r;
    r[{Word{A->index("a1")}, 0}] = Scalar(1);
    P->relations.push_back(r);
    auto M = realize(P, 3);
    CHECK_NOTHROW(validate_module(*M));
    // a1 . 1 = 0 in the quotient
    CHECK(vec_is_zero(M->act(A->index("a1"), 0) * M->project(0, {{{Word{}, 0}, Scalar(1)}})));
    CHECK(M->complex->dim(0) < pbw_dims(*A, 3)[0]);
}

TEST_CASE("restriction") {
    auto A = algebra_A();
    auto M = realize(regular_presentation(A), 4);
    auto id = identity_morphism(A);
    CHECK(modules_equal(*restrict_module(M, id), *M));

    auto phi = rescale(A, Scalar(2), Scalar(3));
    auto psi = rescale(A, Scalar::frac(1, 5), Scalar(-1));
    CHECK_NOTHROW(check_morphism(phi));
    auto twice = restrict_module(restrict_module(M, psi), phi);
    auto once = restrict_module(M, compose(psi, phi));
    CHECK(modules_equal(*twice, *once));
    CHECK_NOTHROW(validate_module(*once));

    auto R = toy_resolution(), Q = toy_quotient();
    auto QM = realize(regular_presentation(Q), 3);
    auto res = restrict_module(QM, toy_phi(R, Q));
    CHECK(res->act(R->index("p"), 0).is_zero());
    CHECK_NOTHROW(validate_module(*res));
}

TEST_CASE("extension and the adjunction unit") {
    auto R = toy_resolution(), Q = toy_quotient();
    auto phi = toy_phi(R, Q);
    auto E = realize(extend_presentation(regular_presentation(R), phi), 3);
    CHECK(dims(*E->complex) == pbw_dims(*Q, 3));

    auto A = algebra_A();
    auto ida = identity_morphism(A);
    auto L = realize(regular_presentation(A), 3);
    auto EA = realize(extend_presentation(regular_presentation(A), ida), 3);
    CHECK(dims(*EA->complex) == dims(*L->complex));

    auto unit_reg = adjunction_unit(realize(regular_presentation(R), 3), phi);
    CHECK(is_module_morphism(unit_reg));

    auto Lfree = realize(free_presentation(R, concentrated(0, {"v"})), 3);
    auto unit = adjunction_unit(Lfree, phi);
    CHECK(is_module_morphism(unit));
    CHECK(is_we_module(unit));

    auto iso = rescale(A, Scalar(2), Scalar(3));
    auto unit_iso = adjunction_unit(L, iso);
    CHECK(is_module_morphism(unit_iso));
    for (int n : L->complex->degrees()) CHECK(unit_iso.map.component(n).rank() == L->complex->dim(n));
}

TEST_CASE("triangle identities") {
    auto R = toy_resolution(), Q = toy_quotient();
    auto phi = toy_phi(R, Q);
    auto rep = triangle_identities(free_presentation(R, concentrated(0, {"v"})), regular_presentation(Q), phi, 3);
    CHECK(rep.first);
    CHECK(rep.second);

    auto A = algebra_A();
    auto iso = rescale(A, Scalar(2), Scalar(3));
    auto rep2 = triangle_identities(regular_presentation(A), regular_presentation(A), iso, 3);
    CHECK(rep2.first);
    CHECK(rep2.second);
}

TEST_CASE("restriction preserves weak equivalences and fibrations") {
    auto R = toy_resolution(), Q = toy_quotient();
    auto phi = toy_phi(R, Q);
    auto Lq = realize(free_presentation(Q, two_term()), 3);
    auto proj_src = direct_sum_module(Lq, Lq);
    Matrix p;
    CochainMap pm{proj_src->complex, Lq->complex, 0, {}};
    for (int n : Lq->complex->degrees()) {
        std::size_t d = Lq->complex->dim(n);
        Matrix m(d, 2 * d);
        m.set_block(0, 0, Matrix::identity(d));
        pm.comp[n] = m;
    }
    ModuleMap proj{proj_src, Lq, pm, Lq->max_level()};
    CHECK(is_module_morphism(proj));
    CHECK(is_fib_module(proj));
    auto rproj = restrict_map(proj, phi);
    CHECK(is_module_morphism(rproj));
    CHECK(is_fib_module(rproj));

    auto id = module_identity(Lq);
    CHECK(is_we_module(id));
    CHECK(is_fib_module(id));
    CHECK(is_we_module(restrict_map(id, phi)));

    // inclusion of the first summand misses the cohomology of the second
    CochainMap im{Lq->complex, proj_src->complex, 0, {}};
    for (int n : Lq->complex->degrees()) {
        std::size_t d = Lq->complex->dim(n);
        Matrix m(2 * d, d);
        m.set_block(0, 0, Matrix::identity(d));
        im.comp[n] = m;
    }
    ModuleMap inc{Lq, proj_src, im, Lq->max_level()};
    CHECK(is_module_morphism(inc));
    CHECK_FALSE(is_we_module(inc));
    CHECK_FALSE(is_we_module(restrict_map(inc, phi)));
}

TEST_CASE("tensoring and powering") {
    auto A = algebra_A();
    auto M = realize(regular_presentation(A), 3);
    auto K = unit_complex();
    auto MK = tensor_module(M, K);
    CHECK(dims(*MK->complex) == dims(*M->complex));
    for (int n : M->complex->degrees())
        for (std::size_t x = 0; x < A->num_generators(); ++x) CHECK(MK->act(x, n) == M->act(x, n));
    auto PK = power_module(M, K);
    for (int n : M->complex->degrees())
        for (std::size_t x = 0; x < A->num_generators(); ++x) CHECK(PK->act(x, n) == M->act(x, n));

    auto V = two_term();
    auto MV = tensor_module(M, V);
    for (int n = -3; n <= 3; ++n) {
        std::size_t expect = 0;
        for (int k = -2; k <= 2; ++k) expect += M->complex->dim(k) * V.dim(n - k);
        CHECK(MV->complex->dim(n) == expect);
    }
    CHECK_NOTHROW(validate_module(*MV));
    CHECK_NOTHROW(validate_module(*power_module(M, V)));

    auto phi = rescale(A, Scalar(2), Scalar(3));
    CHECK(modules_equal(*restrict_module(power_module(M, V), phi), *power_module(restrict_module(M, phi), V)));
}

TEST_CASE("extension commutes with tensoring") {
    auto R = toy_resolution(), Q = toy_quotient();
    auto phi = toy_phi(R, Q);
    auto V = two_term();
    auto L = free_presentation(R, concentrated(0, {"v"}));
    auto lhs = realize(extend_presentation(tensor_presentation(L, V), phi), 3);
    auto EL = realize(extend_presentation(L, phi), 3);
    auto rhs = tensor_module(EL, V);
    // generator g@v goes to (1.g) (x) v
    std::vector<Vec> images;
    const auto& P = *lhs->presentation;
    std::size_t nv = 3;
    for (std::size_t k = 0; k < P.generators.size(); ++k) {
        int g = static_cast<int>(k / nv);
        int vdeg = k % nv == 0 ? -1 : 0;
        std::size_t vi = k % nv == 0 ? 0 : k % nv - 1;
        int n = P.generators[k].degree;
        Vec img(rhs->complex->dim(n));
        Vec unit = EL->project(EL->presentation->generators[g].degree, {{{Word{}, g}, Scalar(1)}});
        std::size_t dv = V.dim(vdeg);
        std::size_t off = TensorIndex::offset(*EL->complex, V, n, n - vdeg);
        for (std::size_t i = 0; i < unit.size(); ++i) img[off + i * dv + vi] = unit[i];
        images.push_back(img);
    }
    auto f = map_from_generators(lhs, rhs, images);
    std::string why;
    CHECK_MESSAGE(is_module_morphism(f, &why), why);
    for (int n : lhs->complex->degrees()) {
        CHECK(lhs->complex->dim(n) == rhs->complex->dim(n));
        CHECK(f.map.component(n).rank() == lhs->complex->dim(n));
    }
}

TEST_CASE("enriched hom") {
    auto A = algebra_A();
    auto M = realize(regular_presentation(A), 4);
    auto H = enriched_hom(M, M, 2);
    // d = 0: every degree-0 element of A at level <= 2 is a 0-cocycle (right multiplication)
    std::size_t deg0 = 0;
    for (const auto& w : pbw_monomials(*A, 2))
        if (A->word_degree(w) == 0) ++deg0;
    CHECK(degree_homology(H.complex, 0).cocycles.size() == deg0);
    for (int n : H.complex.degrees()) CHECK(H.complex.diff(n).is_zero());
    for (const auto& z : degree_homology(H.complex, 0).cocycles) {
        auto f = enriched_hom_element_to_map(M, M, H, z);
        CHECK(is_module_morphism(f));
    }
    // identity: h(1) = 1
    Vec one = M->project(0, {{{Word{}, 0}, Scalar(1)}});
    Matrix K = Matrix::from_columns(H.kernel_basis.at(0)[0].size(), H.kernel_basis.at(0));
    Vec coords(K.rows());
    const auto& idx = H.layout.at(0)[0].second;
    for (std::size_t k = 0; k < idx.size(); ++k) coords[k] = one[idx[k]];
    auto sol = K.solve(coords);
    REQUIRE(sol.has_value());
    CHECK(is_identity_on_valid(enriched_hom_element_to_map(M, M, H, *sol)));
}

TEST_CASE("tensor-power adjunction on hom dimensions") {
    auto R = toy_resolution();
    auto V = two_term();
    auto L = regular_presentation(R);
    auto Lp = realize(regular_presentation(R), 4);
    auto lhs = enriched_hom(realize(tensor_presentation(L, V), 4), Lp, 2);
    auto rhs = enriched_hom(realize(L, 4), power_module(Lp, V), 2);
    CHECK(degree_homology(lhs.complex, 0).cocycles.size() == degree_homology(rhs.complex, 0).cocycles.size());
    CHECK(cohomology(lhs.complex).dims == cohomology(rhs.complex).dims);
}
