#include "hqft/state.hpp"

#include <Eigen/Dense>

namespace hqft {

namespace {

std::vector<int> parities(const PresentedDGA& A) {
    std::vector<int> p;
    for (std::size_t g = 0; g < A.num_generators(); ++g) p.push_back(A.odd(static_cast<int>(g)) ? 1 : 0);
    return p;
}

Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

std::map<int, std::vector<Word>> by_degree(const PresentedDGA& A, int cutoff) {
    std::map<int, std::vector<Word>> out;
    for (const auto& w : pbw_monomials(A, cutoff)) out[A.word_degree(w)].push_back(w);
    return out;
}

Eigen::MatrixXcd to_eigen(const Matrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).to_complex();
    return e;
}

}  // namespace

ExactState exact_state(const PresentedDGA& A, const Matrix& two_point) {
    std::size_t n = A.num_generators();
    if (two_point.rows() != n || two_point.cols() != n) throw AlgebraError("two-point table has the wrong shape");
    std::vector<std::vector<Scalar>> t(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i][j] = two_point(i, j);
    return ExactState(t, parities(A));
}

NumericState numeric_state(const PresentedDGA& A, const std::vector<std::vector<std::complex<double>>>& two_point) {
    if (two_point.size() != A.num_generators()) throw AlgebraError("two-point table has the wrong shape");
    return NumericState(two_point, parities(A));
}

NCElement word_product(const NCElement& x, const NCElement& y) {
    NCElement out;
    for (const auto& [a, c] : x)
        for (const auto& [b, d] : y) nc_add_to(out, NCElement{{concat(a, b), c * d}});
    return out;
}

GNSData gns_radical(const PresentedDGA& A, const ExactState& w, int cutoff, int test_cutoff) {
    GNSData g;
    g.cutoff = cutoff;
    g.test_cutoff = test_cutoff;
    g.monomials = by_degree(A, cutoff);
    auto tests = by_degree(A, test_cutoff);
    for (const auto& [n, mons] : g.monomials) {
        const auto& bs = tests[-n];
        Matrix M(bs.size(), mons.size());
        for (std::size_t i = 0; i < bs.size(); ++i)
            for (std::size_t j = 0; j < mons.size(); ++j) M(i, j) = w.word(concat(bs[i], mons[j]));
        if (bs.empty()) {
            // nothing to test against: the whole truncated degree is radical
            for (std::size_t j = 0; j < mons.size(); ++j) g.radical[n].push_back(unit_vec(mons.size(), j));
        } else {
            g.radical[n] = M.nullspace();
        }
        g.quotient_dim[n] = mons.size() - g.radical[n].size();
        g.gram[n] = M;
    }
    return g;
}

NCElement radical_element(const GNSData& g, int degree, std::size_t i) {
    NCElement x;
    const auto& v = g.radical.at(degree).at(i);
    const auto& mons = g.monomials.at(degree);
    for (std::size_t j = 0; j < v.size(); ++j)
        if (!v[j].is_zero()) x[mons[j]] = v[j];
    return x;
}

IdealCheck gns_left_ideal_check(const PresentedDGA& A, const ExactState& w, const GNSData& g) {
    IdealCheck out;
    auto tests = by_degree(A, g.test_cutoff - 1);
    for (const auto& [n, basis] : g.radical) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            NCElement r = radical_element(g, n, i);
            for (std::size_t x = 0; x < A.num_generators(); ++x) {
                NCElement xr = word_product(nc_generator(static_cast<int>(x)), r);
                int deg = n + A.degree(static_cast<int>(x));
                for (const auto& b : tests[-deg]) {
                    ++out.checked;
                    Scalar v = w(word_product({{b, Scalar(1)}}, xr));
                    if (!v.is_zero() && out.ok) {
                        out.ok = false;
                        out.witness = "omega(" + A.word_str(b) + " * " + A.name(static_cast<int>(x)) + " * r) = " +
                                      v.str() + " for r = " + nc_str(A, r);
                    }
                }
            }
        }
    }
    return out;
}

PresentationPtr gns_presentation(const AlgebraPtr& A, const GNSData& g) {
    auto P = std::make_shared<ModulePresentation>();
    P->algebra = A;
    P->generators = {{"1", 0}};
    P->diffs = {{}};
    for (const auto& [n, basis] : g.radical)
        for (std::size_t i = 0; i < basis.size(); ++i) {
            ModuleElement r;
            for (const auto& [word, c] : radical_element(g, n, i)) r[{word, 0}] = c;
            P->relations.push_back(r);
        }
    return P;
}

Matrix star_gram(const PresentedDGA& A, const ExactState& w, const std::vector<Word>& basis) {
    Matrix G(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        NCElement bs = star(A, {{basis[i], Scalar(1)}});
        for (std::size_t j = 0; j < basis.size(); ++j) G(i, j) = w(word_product(bs, {{basis[j], Scalar(1)}}));
    }
    return G;
}

double min_eigenvalue(const Matrix& hermitian) {
    if (hermitian.rows() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(hermitian), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

SvdRank svd_rank(const std::vector<std::vector<std::complex<double>>>& m, double gap) {
    SvdRank r;
    if (m.empty() || m[0].empty()) return r;
    Eigen::MatrixXcd e(m.size(), m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) e(i, j) = m[i][j];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
    const auto& s = svd.singularValues();
    double scale = std::max(1.0, s.size() ? s(0) : 0.0);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > gap * scale) {
            ++r.rank;
            r.smallest_kept = s(i);
        } else {
            r.largest_dropped = std::max(r.largest_dropped, s(i));
        }
    }
    return r;
}

}  // namespace hqft
