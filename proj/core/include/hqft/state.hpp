#pragma once

#include <complex>
#include <map>
#include <vector>

#include "hqft/modules.hpp"

namespace hqft {

// Quasi-free state on a CCR algebra: the value on a word is the sum over pair partitions of
// products of two-point values, with the Koszul sign of the reordering.
// The two-point table is indexed by generator (PBW index) pairs.
template <class V>
class QuasiFree {
public:
    QuasiFree(std::vector<std::vector<V>> two_point, std::vector<int> parity)
        : w2_(std::move(two_point)), parity_(std::move(parity)) {}

    V word(const Word& w) const {
        if (w.empty()) return V(1);
        if (w.size() % 2) return V(0);
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
        V acc(0);
        int passed = 0;  // parity of the letters jumped over
        for (std::size_t j = 1; j < w.size(); ++j) {
            const V& p = w2_[w[0]][w[j]];
            if (!(p == V(0))) {
                Word rest;
                for (std::size_t l = 1; l < w.size(); ++l)
                    if (l != j) rest.push_back(w[l]);
                V term = p * word(rest);
                acc += (parity_[w[j]] && passed) ? V(0) - term : term;
            }
            passed ^= parity_[w[j]];
        }
        memo_.emplace(w, acc);
        return acc;
    }

    // linear extension over words (the words need not be in normal form)
    V operator()(const std::map<Word, V>& x) const {
        V acc(0);
        for (const auto& [w, c] : x) acc += c * word(w);
        return acc;
    }

    const std::vector<std::vector<V>>& two_point() const { return w2_; }

private:
    std::vector<std::vector<V>> w2_;
    std::vector<int> parity_;
    mutable std::map<Word, V> memo_;
};

using ExactState = QuasiFree<Scalar>;
using NumericState = QuasiFree<std::complex<double>>;

ExactState exact_state(const PresentedDGA& A, const Matrix& two_point);
NumericState numeric_state(const PresentedDGA& A, const std::vector<std::vector<std::complex<double>>>& two_point);

// Word-level helpers for elements given as word combinations (not reduced).
NCElement word_product(const NCElement& x, const NCElement& y);

// Radical of the state, truncated: R^n = {a in A^n : omega(b a) = 0 for all PBW monomials b of
// degree -n and length <= test_cutoff}, with a ranging over PBW monomials of length <= cutoff.
struct GNSData {
    int cutoff = 0, test_cutoff = 0;
    std::map<int, std::vector<Word>> monomials;  // by degree
    std::map<int, std::vector<Vec>> radical;     // coefficient vectors over monomials
    std::map<int, std::size_t> quotient_dim;
    std::map<int, Matrix> gram;                  // rows: test monomials of degree -n, columns: degree n
};
GNSData gns_radical(const PresentedDGA& A, const ExactState& w, int cutoff, int test_cutoff);
NCElement radical_element(const GNSData& g, int degree, std::size_t i);

// Left-ideal check: x r stays in the radical (tested against monomials of length <= test_cutoff - 1).
struct IdealCheck {
    bool ok = true;
    std::size_t checked = 0;
    std::string witness;
};
IdealCheck gns_left_ideal_check(const PresentedDGA& A, const ExactState& w, const GNSData& g);

// V_omega = A / (left ideal generated by the radical), realized to a cutoff.
PresentationPtr gns_presentation(const AlgebraPtr& A, const GNSData& g);

// Hermitian form omega(b* a) on the given monomials, and its smallest eigenvalue.
Matrix star_gram(const PresentedDGA& A, const ExactState& w, const std::vector<Word>& basis);
double min_eigenvalue(const Matrix& hermitian);

// Numeric cross-check of an exact rank: singular values of a double Gram matrix.
struct SvdRank {
    std::size_t rank = 0;
    double smallest_kept = 0, largest_dropped = 0;
};
SvdRank svd_rank(const std::vector<std::vector<std::complex<double>>>& m, double gap);

}  // namespace hqft
