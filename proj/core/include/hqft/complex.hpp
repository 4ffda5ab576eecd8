#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqft/matrix.hpp"

namespace hqft {

class ComplexError : public std::runtime_error {
public:
    ComplexError(const std::string& what, int degree) : std::runtime_error(what), degree_(degree) {}
    int degree() const { return degree_; }

private:
    int degree_;
};

struct GradedSpace {
    std::map<int, std::vector<std::string>> basis;  // only nonzero degrees stored

    std::size_t dim(int n) const {
        auto it = basis.find(n);
        return it == basis.end() ? 0 : it->second.size();
    }
    std::vector<int> degrees() const;
    std::size_t total_dim() const;
};

// Bounded cochain complex with d^n : V^n -> V^{n+1} stored as dim(n+1) x dim(n).
class CochainComplex {
public:
    CochainComplex() = default;
    CochainComplex(GradedSpace space, std::map<int, Matrix> diffs);

    const GradedSpace& space() const { return space_; }
    std::size_t dim(int n) const { return space_.dim(n); }
    std::vector<int> degrees() const { return space_.degrees(); }
    const std::vector<std::string>& labels(int n) const;
    // zero matrix of the right shape when no differential is stored
    Matrix diff(int n) const;
    bool has_diff(int n) const { return diffs_.count(n) > 0; }
    int min_degree() const;
    int max_degree() const;
    bool is_zero() const { return space_.basis.empty(); }

private:
    GradedSpace space_;
    std::map<int, Matrix> diffs_;
};

using ComplexPtr = std::shared_ptr<const CochainComplex>;

// Throws ComplexError carrying the first degree n with d^{n+1} d^n != 0.
void validate_complex(const CochainComplex& c);

struct CochainMap {
    ComplexPtr source, target;
    int degree = 0;
    std::map<int, Matrix> comp;  // comp[n] : source^n -> target^{n+degree}

    Matrix component(int n) const;
};

CochainMap identity_map(const ComplexPtr& c);
CochainMap compose(const CochainMap& g, const CochainMap& f);  // g after f
CochainMap map_sum(const CochainMap& f, const CochainMap& g);
CochainMap map_scaled(const CochainMap& f, const Scalar& s);
bool maps_equal(const CochainMap& f, const CochainMap& g);
// d f = (-1)^{|f|} f d on every degree; returns first failing degree or nullopt
std::optional<int> chain_map_defect(const CochainMap& f);
inline bool is_chain_map(const CochainMap& f) { return !chain_map_defect(f).has_value(); }

struct DegreeHomology {
    std::vector<Vec> cocycles;     // basis of Z^n
    std::vector<Vec> coboundaries; // basis of B^n
    std::vector<Vec> reps;         // cocycles completing B^n to Z^n
};

struct CohomologyReport {
    std::map<int, std::size_t> dims;      // zero degrees omitted
    std::map<int, std::vector<Vec>> reps; // representative cocycles per degree
    std::size_t dim(int n) const {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }
};

DegreeHomology degree_homology(const CochainComplex& c, int n);
CohomologyReport cohomology(const CochainComplex& c);
long euler_characteristic(const CochainComplex& c);
bool is_quasi_iso(const CochainMap& f);
bool is_coboundary(const CochainComplex& c, int n, const Vec& v);
bool is_degreewise_surjective(const CochainMap& f);

CochainComplex unit_complex();
CochainComplex zero_complex();
CochainComplex concentrated(int degree, std::vector<std::string> labels);
CochainComplex direct_sum(const CochainComplex& a, const CochainComplex& b);
CochainComplex tensor(const CochainComplex& a, const CochainComplex& b);
CochainComplex internal_hom(const CochainComplex& a, const CochainComplex& b);
CochainComplex shift(const CochainComplex& c, int k);

// Index bookkeeping for tensor and hom bases.
struct TensorIndex {
    // offset of the block (k, n-k) inside degree n of a (x) b
    static std::size_t offset(const CochainComplex& a, const CochainComplex& b, int n, int k);
};
struct HomIndex {
    // offset of the block Lin(a^k, b^{n+k}) inside degree n of [a, b]
    static std::size_t offset(const CochainComplex& a, const CochainComplex& b, int n, int k);
    // entries of a block are stored row-major: (j in b^{n+k}) * dim a^k + (i in a^k)
};

// Interval object: I^{-1} = K, I^0 = K + K, d(1) = (1, -1).
struct IntervalObject {
    ComplexPtr interval;
    ComplexPtr endpoints;  // K + K in degree 0
    CochainMap b;          // endpoints -> interval
    CochainMap r;          // interval -> unit
};
IntervalObject interval_object();

// Canonical isomorphisms used to test the monoidal structure.
CochainMap tensor_associator(const CochainComplex& a, const CochainComplex& b, const CochainComplex& c);
CochainMap left_unitor(const CochainComplex& a);

// Matrix of a linear map between hom-spaces expressed as a degree-0 element of [a, b].
Vec hom_element_from_map(const CochainComplex& a, const CochainComplex& b, const CochainMap& f);
CochainMap hom_element_to_map(const ComplexPtr& a, const ComplexPtr& b, int n, const Vec& h);

}  // namespace hqft
