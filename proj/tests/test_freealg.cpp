#include "doctest.h"

#include <random>

#include "hqft/dga.hpp"
#include "hqft/json_io.hpp"

using namespace hqft;

namespace {

CochainComplex small_L() {
    GradedSpace s;
    s.basis[-1] = {"e_dagger"};
    s.basis[0] = {"a1", "a2"};
    s.basis[1] = {"e"};
    return CochainComplex(s, {});
}

// tau(a2,a1) = 1, tau(e,e_dagger) = 1
AlgebraPtr algebra_A(int cutoff = 6) {
    return ccr_quantize(small_L(), {{"a2", "a1", Scalar(1)}, {"e", "e_dagger", Scalar(1)}}, cutoff);
}

NCElement word(const PresentedDGA& A, const std::string& w, const Scalar& c = Scalar(1)) {
    NCElement x;
    x[A.parse_word(w)] = c;
    return x;
}

NCElement gen(const PresentedDGA& A, const std::string& name) { return nc_generator(A.index(name)); }

// toy resolution: p (degree -1) with d p = x1, plus x2; quotient keeps x2 only
AlgebraPtr toy_resolution() {
    std::vector<GeneratorSpec> g{{"p", -1, {{"x1", Scalar(1)}}}, {"x1", 0, {}}, {"x2", 0, {}}};
    auto A = std::make_shared<PresentedDGA>(g, std::vector<TauEntry>{}, 4);
    validate_algebra(*A);
    return A;
}

AlgebraPtr toy_quotient() {
    return std::make_shared<PresentedDGA>(std::vector<GeneratorSpec>{{"y", 0, {}}}, std::vector<TauEntry>{}, 4);
}

Word random_word(std::mt19937& rng, int n, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len), g(0, n - 1);
    Word w(len(rng));
    for (auto& x : w) x = g(rng);
    return w;
}

NCElement random_homogeneous(std::mt19937& rng, const PresentedDGA& A, int degree, int max_len) {
    auto mons = pbw_monomials(A, max_len);
    std::uniform_int_distribution<int> c(-2, 2);
    NCElement x;
    for (const auto& w : mons)
        if (A.word_degree(w) == degree) {
            int v = c(rng);
            if (v) x[w] = Scalar(mpq_class(v), mpq_class(c(rng)));
        }
    return x;
}

}  // namespace

TEST_CASE("ccr_quantize validates tau") {
    CHECK_THROWS_AS(ccr_quantize(small_L(), {{"a1", "e", Scalar(1)}}), AlgebraError);
    // both orderings given, inconsistently
    CHECK_THROWS_AS(ccr_quantize(small_L(), {{"a2", "a1", Scalar(1)}, {"a1", "a2", Scalar(1)}}), AlgebraError);
    auto A = algebra_A();
    CHECK(A->num_generators() == 4);
    CHECK(A->tau(A->index("a1"), A->index("a2")) == Scalar(-1));
    // odd-odd pairing is symmetric
    CHECK(A->tau(A->index("e_dagger"), A->index("e")) == Scalar(1));
    CHECK(A->differential_is_zero());
}

TEST_CASE("normal forms of the small algebra") {
    auto A = algebra_A();
    auto one = nc_scalar(Scalar(1));
    CHECK(normal_form(*A, word(*A, "a2*a1")) == nc_add(word(*A, "a1*a2"), nc_scalar(Scalar::i())));
    CHECK(normal_form(*A, word(*A, "e*e")).empty());
    CHECK(normal_form(*A, word(*A, "e*e_dagger")) == nc_sub(nc_scalar(Scalar::i()), word(*A, "e_dagger*e")));
    CHECK(normal_form(*A, word(*A, "a1*e")) == word(*A, "a1*e"));
    CHECK(normal_form(*A, word(*A, "e*a1")) == word(*A, "a1*e"));
    CHECK_THROWS_AS(normal_form_word(*A, Word(7, 0)), CutoffExceeded);
    (void)one;
}

TEST_CASE("multiplication") {
    auto A = algebra_A();
    auto a1 = gen(*A, "a1"), a2 = gen(*A, "a2");
    auto lhs = multiply(*A, multiply(*A, a1, a2), a1);
    auto rhs = multiply(*A, a1, multiply(*A, a2, a1));
    CHECK(lhs == rhs);
    CHECK(lhs == nc_add(word(*A, "a1*a1*a2"), word(*A, "a1", Scalar::i())));
    auto x = word(*A, "e_dagger*a1*a2");
    CHECK(multiply(*A, nc_scalar(Scalar(1)), x) == x);
    CHECK(element_degree(*A, multiply(*A, x, gen(*A, "e"))) == element_degree(*A, x) + 1);
    CHECK_THROWS_AS(multiply(*A, word(*A, "a1*a1*a1*a1"), word(*A, "a2*a2*a2")), CutoffExceeded);
}

TEST_CASE("confluence: leftmost and rightmost rewriting agree") {
    auto A = algebra_A();
    std::mt19937 rng(1234);
    for (int t = 0; t < 1000; ++t) {
        auto w = random_word(rng, 4, A->cutoff());
        auto l = normal_form_rewrite(*A, w, RewriteStrategy::Leftmost);
        auto r = normal_form_rewrite(*A, w, RewriteStrategy::Rightmost);
        REQUIRE(l == r);
        REQUIRE(normal_form_word(*A, w) == l);
        for (const auto& kv : l) REQUIRE(A->is_normal(kv.first));
    }
}

TEST_CASE("PBW monomial count") {
    auto A = algebra_A();
    for (int k = 0; k <= 5; ++k) {
        // a1^m a2^n (e_dagger)^eps e^delta with m+n+eps+delta <= k
        std::size_t expect = 0;
        for (int eps = 0; eps <= 1; ++eps)
            for (int del = 0; del <= 1; ++del)
                for (int m = 0; m <= k; ++m)
                    for (int n = 0; m + n + eps + del <= k; ++n) ++expect;
        CHECK(pbw_monomials(*A, k).size() == expect);
    }
    // d = 0, so cohomology is the whole truncation
    auto h = truncated_cohomology(*A, 3);
    std::size_t total = 0;
    for (auto [n, d] : h.dims) total += d;
    CHECK(total == pbw_monomials(*A, 3).size());
}

TEST_CASE("graded commutator, antisymmetry and Jacobi") {
    auto A = algebra_A();
    CHECK(graded_commutator(*A, gen(*A, "a2"), gen(*A, "a1")) == nc_scalar(Scalar::i()));
    CHECK(graded_commutator(*A, gen(*A, "a1"), gen(*A, "e")).empty());
    CHECK(graded_commutator(*A, gen(*A, "e"), nc_scalar(Scalar(1))).empty());

    std::mt19937 rng(77);
    std::uniform_int_distribution<int> deg(-1, 1);
    for (int t = 0; t < 20; ++t) {
        int dx = deg(rng), dy = deg(rng), dz = deg(rng);
        auto x = random_homogeneous(rng, *A, dx, 1), y = random_homogeneous(rng, *A, dy, 2),
             z = random_homogeneous(rng, *A, dz, 2);
        auto xy = graded_commutator(*A, x, y), yx = graded_commutator(*A, y, x);
        CHECK(nc_add(xy, nc_scale(yx, Scalar(koszul(dx, dy)))).empty());
        auto lhs = graded_commutator(*A, x, graded_commutator(*A, y, z));
        auto rhs = nc_add(graded_commutator(*A, graded_commutator(*A, x, y), z),
                          nc_scale(graded_commutator(*A, y, graded_commutator(*A, x, z)), Scalar(koszul(dx, dy))));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("star involution") {
    auto A = algebra_A();
    CHECK(star(*A, nc_scalar(Scalar::i())) == nc_scalar(-Scalar::i()));
    CHECK(star(*A, word(*A, "a1*a2")) == nc_add(word(*A, "a1*a2"), nc_scalar(Scalar::i())));
    // the relation e e_dagger + e_dagger e - i is mapped into the ideal
    auto rel = nc_add(normal_form(*A, word(*A, "e*e_dagger")), word(*A, "e_dagger*e"));
    rel = nc_sub(rel, nc_scalar(Scalar::i()));
    CHECK(rel.empty());
    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
        auto x = random_homogeneous(rng, *A, t % 3 - 1, 3), y = random_homogeneous(rng, *A, 0, 2);
        CHECK(star(*A, star(*A, x)) == x);
        // (xy)* = (-1)^{|x||y|} y* x*, here |y| = 0
        CHECK(star(*A, multiply(*A, x, y)) == multiply(*A, star(*A, y), star(*A, x)));
    }
}

TEST_CASE("differential and Leibniz") {
    auto R = toy_resolution();
    auto p = gen(*R, "p"), x1 = gen(*R, "x1");
    CHECK(differential(*R, p) == x1);
    auto pp = multiply(*R, p, p);
    CHECK(pp.empty());
    // d(p p) = (dp) p - p (dp), which vanishes because x1 is central
    CHECK(differential(*R, pp) == nc_sub(multiply(*R, x1, p), multiply(*R, p, x1)));
    for (const auto& w : pbw_monomials(*R, 4)) {
        NCElement m;
        m[w] = Scalar(1);
        CHECK(differential(*R, differential(*R, m)).empty());
    }
    auto h = truncated_cohomology(*R, 1);
    CHECK(h.dims == std::map<int, std::size_t>{{0, 2}});
}

TEST_CASE("free algebra on an acyclic complex") {
    std::vector<GeneratorSpec> g{{"u", -1, {{"v", Scalar(1)}}}, {"v", 0, {}}};
    auto A = std::make_shared<PresentedDGA>(g, std::vector<TauEntry>{}, 4);
    validate_algebra(*A);
    CHECK(truncated_cohomology(*A, 2).dims == std::map<int, std::size_t>{{0, 1}});
}

TEST_CASE("morphisms") {
    auto A = algebra_A();
    auto id = identity_morphism(A);
    CHECK_NOTHROW(check_morphism(id));
    CHECK(is_weak_equivalence_dga(id, 3));

    DGAMorphism swap = id;
    std::swap(swap.images[A->index("a1")], swap.images[A->index("a2")]);
    try {
        check_morphism(swap);
        FAIL("swap must violate a relation");
    } catch (const AlgebraError& e) {
        CHECK(std::string(e.what()).find("(a1,a2)") != std::string::npos);
    }

    auto R = toy_resolution(), Q = toy_quotient();
    DGAMorphism phi{R, Q, {NCElement{}, NCElement{}, nc_generator(0)}};
    CHECK_NOTHROW(check_morphism(phi));
    CHECK(is_linear_morphism(phi));
    CHECK(is_weak_equivalence_dga(phi, 1));
    CHECK(is_weak_equivalence_dga(phi, 3));

    auto trivial = std::make_shared<PresentedDGA>(std::vector<GeneratorSpec>{}, std::vector<TauEntry>{}, 6);
    DGAMorphism to_trivial{A, trivial, std::vector<NCElement>(4)};
    CHECK_FALSE(is_weak_equivalence_dga(to_trivial, 2));
}

TEST_CASE("algebra json round trip") {
    auto A = algebra_A(5);
    auto j = algebra_to_json(*A);
    auto B = algebra_from_json(j);
    CHECK(algebra_to_json(*B) == j);
    CHECK(B->cutoff() == 5);
    CHECK(j["generators"][0]["name"] == "e_dagger");
}
