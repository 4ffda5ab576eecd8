#include "doctest.h"

#include <random>

#include "hqft/complex.hpp"
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

// random two-term complex K^a -> K^b in degrees (lo, lo+1)
CochainComplex random_two_term(std::mt19937& rng, int lo) {
    std::uniform_int_distribution<int> dimd(1, 3), val(-2, 2);
    std::size_t a = dimd(rng), b = dimd(rng);
    GradedSpace s;
    for (std::size_t i = 0; i < a; ++i) s.basis[lo].push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < b; ++i) s.basis[lo + 1].push_back("y" + std::to_string(i));
    Matrix d(b, a);
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < a; ++j) d(i, j) = Scalar(val(rng));
    return CochainComplex(s, {{lo, d}});
}

std::map<int, std::size_t> dims_of(const CochainComplex& c) {
    std::map<int, std::size_t> m;
    for (int n : c.degrees()) m[n] = c.dim(n);
    return m;
}

std::size_t zero_cocycles(const CochainComplex& h) { return degree_homology(h, 0).cocycles.size(); }

}  // namespace

TEST_CASE("gaussian rational arithmetic") {
    Scalar i = Scalar::i();
    CHECK(i * i == Scalar(-1));
    Scalar z(mpq_class(1, 2), mpq_class(-3, 4));
    CHECK(z * z.inverse() == Scalar(1));
    CHECK((z + z.conj()).is_real());
    CHECK(Scalar::snap(0.5, 1e-12) == mpq_class(1, 2));
    CHECK(Scalar::snap(-1.0 / 3.0, 1e-12) == mpq_class(-1, 3));
    CHECK(Scalar::snap(1e-14, 1e-12) == 0);
}

TEST_CASE("matrix nullspace and solve") {
    Matrix m(2, 3);
    m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
    m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
    CHECK(m.rank() == 1);
    auto ns = m.nullspace();
    CHECK(ns.size() == 2);
    for (const auto& v : ns) CHECK(vec_is_zero(m * v));
    auto x = m.solve(Vec{Scalar(3), Scalar(6)});
    REQUIRE(x.has_value());
    CHECK(m * *x == Vec{Scalar(3), Scalar(6)});
    CHECK_FALSE(m.solve(Vec{Scalar(1), Scalar(1)}).has_value());
}

TEST_CASE("validate_complex reports the failing degree") {
    GradedSpace s;
    s.basis[0] = {"x"};
    s.basis[1] = {"y"};
    s.basis[2] = {"z"};
    Matrix one(1, 1);
    one(0, 0) = 1;
    CochainComplex c(s, {{0, one}, {1, one}});
    try {
        validate_complex(c);
        FAIL("expected error");
    } catch (const ComplexError& e) {
        CHECK(e.degree() == 0);
    }
    CHECK_THROWS_AS(CochainComplex(s, {{0, Matrix(2, 1)}}), ComplexError);
}

TEST_CASE("cohomology of small complexes") {
    auto L = small_L();
    auto h = cohomology(L);
    CHECK(h.dims == std::map<int, std::size_t>{{-1, 1}, {0, 2}, {1, 1}});

    GradedSpace s;
    s.basis[0] = {"x"};
    s.basis[1] = {"y"};
    Matrix one(1, 1);
    one(0, 0) = 1;
    CochainComplex acyclic(s, {{0, one}});
    CHECK(cohomology(acyclic).dims.empty());
    CHECK(euler_characteristic(acyclic) == 0);
}

TEST_CASE("rank-nullity and Euler characteristic on random complexes") {
    std::mt19937 rng(7);
    for (int t = 0; t < 10; ++t) {
        auto a = random_two_term(rng, -1);
        auto b = random_two_term(rng, 0);
        auto c = tensor(a, b);
        validate_complex(c);
        long chi_h = 0;
        auto h = cohomology(c);
        for (auto [n, d] : h.dims) chi_h += (n % 2 == 0 ? 1 : -1) * static_cast<long>(d);
        CHECK(chi_h == euler_characteristic(c));
        for (int n : c.degrees()) {
            auto z = c.dim(n + 1) ? c.diff(n).nullspace().size() : c.dim(n);
            auto r = c.dim(n + 1) ? c.diff(n).rank() : 0;
            CHECK(z + r == c.dim(n));
        }
    }
}

TEST_CASE("tensor and internal hom dimensions of L") {
    auto L = small_L();
    auto LL = tensor(L, L);
    CHECK(dims_of(LL) == std::map<int, std::size_t>{{-2, 1}, {-1, 4}, {0, 6}, {1, 4}, {2, 1}});

    // oracle: sum_k dim L^k * dim L^{n+k}
    std::map<int, std::size_t> expect;
    for (int n = -2; n <= 2; ++n) {
        std::size_t s = 0;
        for (int k = -1; k <= 1; ++k) s += L.dim(k) * L.dim(n + k);
        if (s) expect[n] = s;
    }
    auto H = internal_hom(L, L);
    CHECK(dims_of(H) == expect);
    // d_L = 0, so every element of [L,L]^0 is a cocycle, i.e. an endomorphism
    CHECK(zero_cocycles(H) == H.dim(0));
}

TEST_CASE("hom from the unit and tensor with the unit") {
    std::mt19937 rng(3);
    auto c = random_two_term(rng, 0);
    auto K = unit_complex();
    CHECK(dims_of(internal_hom(K, c)) == dims_of(c));
    CHECK(internal_hom(K, c).diff(0) == c.diff(0));
    auto lu = left_unitor(c);
    CHECK(is_chain_map(lu));
    CHECK(is_quasi_iso(lu));
}

TEST_CASE("associator is an invertible cochain map") {
    std::mt19937 rng(11);
    for (int t = 0; t < 5; ++t) {
        auto a = random_two_term(rng, -1), b = random_two_term(rng, 0), c = random_two_term(rng, 0);
        auto f = tensor_associator(a, b, c);
        CHECK(is_chain_map(f));
        for (int n : f.source->degrees()) {
            auto m = f.component(n);
            CHECK(m.rows() == m.cols());
            CHECK(m.rank() == m.rows());
        }
    }
}

TEST_CASE("internal hom differential squares to zero and 0-cocycles are chain maps") {
    std::mt19937 rng(5);
    for (int t = 0; t < 5; ++t) {
        auto a = std::make_shared<const CochainComplex>(random_two_term(rng, -1));
        auto b = std::make_shared<const CochainComplex>(random_two_term(rng, -1));
        auto H = internal_hom(*a, *b);
        validate_complex(H);
        for (const auto& z : degree_homology(H, 0).cocycles) {
            auto f = hom_element_to_map(a, b, 0, z);
            CHECK(is_chain_map(f));
            CHECK(hom_element_from_map(*a, *b, f) == z);
        }
    }
}

TEST_CASE("tensor-hom adjunction on 0-cocycles") {
    std::mt19937 rng(21);
    for (int t = 0; t < 4; ++t) {
        auto C = random_two_term(rng, -1), A = random_two_term(rng, 0), B = random_two_term(rng, 0);
        auto lhs = internal_hom(tensor(C, A), B);
        auto AB = internal_hom(A, B);
        auto rhs = internal_hom(C, AB);
        CHECK(zero_cocycles(lhs) == zero_cocycles(rhs));
        CHECK(lhs.dim(0) == rhs.dim(0));
    }
}

TEST_CASE("shift") {
    std::mt19937 rng(2);
    auto c = random_two_term(rng, 0);
    auto s1 = shift(c, 1);
    CHECK(s1.dim(-1) == c.dim(0));
    CHECK(s1.diff(-1) == c.diff(0).scaled(Scalar(-1)));
    auto back = shift(s1, -1);
    CHECK(back.diff(0) == c.diff(0));
    CHECK(dims_of(shift(c, 0)) == dims_of(c));
}

TEST_CASE("interval object") {
    auto io = interval_object();
    validate_complex(*io.interval);
    auto h = cohomology(*io.interval);
    CHECK(h.dims == std::map<int, std::size_t>{{0, 1}});
    CHECK(h.reps[0][0] == Vec{Scalar(1), Scalar(0)});
    CHECK(is_chain_map(io.r));
    CHECK(is_chain_map(io.b));
    CHECK(is_quasi_iso(io.r));
    CHECK(io.b.component(0).rank() == 2);
    auto rb = compose(io.r, io.b);
    Matrix codiag(1, 2);
    codiag(0, 0) = 1;
    codiag(0, 1) = 1;
    CHECK(rb.component(0) == codiag);
}

TEST_CASE("quasi-isomorphism predicate") {
    auto L = std::make_shared<const CochainComplex>(small_L());
    CHECK(is_quasi_iso(identity_map(L)));
    CochainMap zero{L, L, 0, {}};
    CHECK_FALSE(is_quasi_iso(zero));
}

TEST_CASE("json round trip") {
    std::mt19937 rng(9);
    auto c = tensor(random_two_term(rng, -1), random_two_term(rng, 0));
    auto j = complex_to_json(c);
    auto back = complex_from_json(j);
    CHECK(complex_to_json(back) == j);
    Scalar s(mpq_class(-3, 7), mpq_class(5, 2));
    CHECK(scalar_from_json(scalar_to_json(s)) == s);
    mpz_class big("123456789012345678901234567890");
    Scalar b{mpq_class(big)};
    CHECK(scalar_from_json(scalar_to_json(b)) == b);
}
