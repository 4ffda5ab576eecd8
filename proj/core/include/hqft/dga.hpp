#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hqft/complex.hpp"

namespace hqft {

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CutoffExceeded : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

using Word = std::vector<int>;  // generator indices in PBW order
using NCElement = std::map<Word, Scalar>;

struct GeneratorSpec {
    std::string name;
    int degree = 0;
    std::vector<std::pair<std::string, Scalar>> diff;  // linear combination of generators
};

struct TauEntry {
    std::string g1, g2;
    Scalar value;
};

enum class RewriteStrategy { Leftmost, Rightmost };

// T(V) modulo the CCR ideal  g1 g2 - (-1)^{|g1||g2|} g2 g1 - i tau(g1,g2) 1.
class PresentedDGA {
public:
    PresentedDGA(std::vector<GeneratorSpec> gens, const std::vector<TauEntry>& tau, int cutoff = 6);

    std::size_t num_generators() const { return names_.size(); }
    // generators are indexed in PBW order: sorted by (degree, declaration index)
    const std::string& name(int g) const { return names_[g]; }
    int degree(int g) const { return degrees_[g]; }
    bool odd(int g) const { return degrees_[g] % 2 != 0; }
    int index(const std::string& name) const;
    bool has_generator(const std::string& name) const { return by_name_.count(name) > 0; }
    const Scalar& tau(int a, int b) const { return tau_(a, b); }
    const Matrix& tau_matrix() const { return tau_; }
    const NCElement& generator_diff(int g) const { return diffs_[g]; }
    int cutoff() const { return cutoff_; }
    bool differential_is_zero() const;
    // declaration order, used for export
    const std::vector<int>& declaration_order() const { return decl_; }

    void set_conjugation(int g, NCElement image) { conj_[g] = std::move(image); }
    const NCElement& conjugation(int g) const { return conj_[g]; }

    int word_degree(const Word& w) const;
    bool is_normal(const Word& w) const;
    std::string word_str(const Word& w) const;
    Word parse_word(const std::string& text) const;  // "a1*a2" style; empty string is the unit

    // Normal form of x*m for a generator x and a normal monomial m.
    const NCElement& insert_left(int x, const Word& m) const;

private:
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::vector<int> decl_;
    std::map<std::string, int> by_name_;
    Matrix tau_;
    std::vector<NCElement> diffs_;
    std::vector<NCElement> conj_;
    int cutoff_;

    mutable std::mutex cache_mu_;
    mutable std::map<std::pair<int, Word>, NCElement> insert_cache_;
};

using AlgebraPtr = std::shared_ptr<const PresentedDGA>;

// Element helpers.
NCElement nc_scalar(const Scalar& s);
NCElement nc_generator(int g, const Scalar& c = Scalar(1));
void nc_add_to(NCElement& acc, const NCElement& x, const Scalar& c = Scalar(1));
NCElement nc_add(const NCElement& a, const NCElement& b);
NCElement nc_sub(const NCElement& a, const NCElement& b);
NCElement nc_scale(const NCElement& a, const Scalar& s);
bool nc_is_zero(const NCElement& a);
std::size_t nc_max_length(const NCElement& a);
std::string nc_str(const PresentedDGA& A, const NCElement& x);

AlgebraPtr ccr_quantize(const CochainComplex& V, const std::vector<TauEntry>& tau, int cutoff = 6);
void validate_algebra(const PresentedDGA& A);  // throws AlgebraError

NCElement normal_form(const PresentedDGA& A, const NCElement& raw);
NCElement normal_form_word(const PresentedDGA& A, const Word& raw);
// plain rewriting with an explicit strategy, used for confluence testing
NCElement normal_form_rewrite(const PresentedDGA& A, const Word& raw, RewriteStrategy s);
NCElement multiply(const PresentedDGA& A, const NCElement& x, const NCElement& y);
// product without the cutoff guard (used internally by realizations that track lengths)
NCElement multiply_unchecked(const PresentedDGA& A, const NCElement& x, const NCElement& y);
NCElement multiply_generator_left(const PresentedDGA& A, int g, const NCElement& y);
NCElement differential(const PresentedDGA& A, const NCElement& x);
NCElement graded_commutator(const PresentedDGA& A, const NCElement& x, const NCElement& y);
NCElement star(const PresentedDGA& A, const NCElement& x);
int element_degree(const PresentedDGA& A, const NCElement& x);  // throws if inhomogeneous

// PBW monomials up to a length cutoff, sorted by (length, lexicographic).
std::vector<Word> pbw_monomials(const PresentedDGA& A, int max_length);

struct PBWComplex {
    CochainComplex complex;
    std::map<int, std::vector<Word>> basis;
    std::map<Word, std::pair<int, std::size_t>> position;  // word -> (degree, index)
    Vec coordinates(int degree, const NCElement& x) const;
};
PBWComplex pbw_complex(const PresentedDGA& A, int max_length);
CohomologyReport truncated_cohomology(const PresentedDGA& A, int max_length);

struct DGAMorphism {
    AlgebraPtr source, target;
    std::vector<NCElement> images;  // indexed by source generator
};

DGAMorphism identity_morphism(const AlgebraPtr& A);
DGAMorphism compose(const DGAMorphism& g, const DGAMorphism& f);
NCElement apply(const DGAMorphism& f, const NCElement& x);
void check_morphism(const DGAMorphism& f);  // throws AlgebraError naming the violation
// images of all generators have length <= 1
bool is_linear_morphism(const DGAMorphism& f);
CochainMap pbw_map(const DGAMorphism& f, const PBWComplex& src, const PBWComplex& tgt);
bool is_weak_equivalence_dga(const DGAMorphism& f, int max_length);

}  // namespace hqft
