#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hqft/dga.hpp"

namespace hqft {

class ModuleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// (normal algebra word, module generator index) -> coefficient
using ModuleTerm = std::pair<Word, int>;
using ModuleElement = std::map<ModuleTerm, Scalar>;

struct ModuleGenerator {
    std::string name;
    int degree = 0;
};

// Free module A (x) G modulo the submodule generated by `relations`.
struct ModulePresentation {
    AlgebraPtr algebra;
    std::vector<ModuleGenerator> generators;
    std::vector<ModuleElement> diffs;      // one per generator (empty = closed)
    std::vector<ModuleElement> relations;  // each relation is set to zero

    int generator_index(const std::string& name) const;
    int term_degree(const ModuleTerm& t) const;
    int level(const ModuleElement& x) const;  // longest algebra word
};
using PresentationPtr = std::shared_ptr<const ModulePresentation>;

PresentationPtr regular_presentation(const AlgebraPtr& A);
// free module on the basis of a complex, with d(1 (x) v) = 1 (x) d_V v
PresentationPtr free_presentation(const AlgebraPtr& A, const CochainComplex& V);

ModuleElement module_normal(const ModulePresentation& P, const NCElement& a, const ModuleElement& x);
ModuleElement module_differential(const ModulePresentation& P, const ModuleElement& x);

// Finite model of a left module: a cochain complex whose basis elements carry a
// filtration level (algebra word length), and one action matrix per algebra
// generator. The action of x is exact on levels <= valid[x] and raises the level
// by at most reach[x]; columns beyond valid[x] are zero.
struct RealizedModule {
    AlgebraPtr algebra;
    ComplexPtr complex;
    std::map<int, std::vector<int>> level;
    std::vector<std::map<int, Matrix>> action;  // action[x][n] : degree n -> n + |x|
    std::vector<int> valid;
    std::vector<int> reach;

    // set when the realization came from a presentation
    PresentationPtr presentation;
    int cutoff = 0;
    std::map<int, std::vector<ModuleTerm>> basis_terms;
    std::map<int, std::vector<ModuleTerm>> free_terms;
    std::map<ModuleTerm, std::size_t> free_index;
    std::map<int, Matrix> reduced_relations;          // rref rows in free coordinates
    std::map<int, std::vector<std::size_t>> pivots;   // pivot free columns
    std::map<int, std::vector<std::size_t>> kept;     // free columns that form the basis

    Matrix act(int x, int n) const;
    int max_level() const;
    // project an element of the free module onto the realized quotient
    Vec project(int degree, const ModuleElement& x) const;
};
using RealizedPtr = std::shared_ptr<const RealizedModule>;

// Element action as a matrix product with its validity bound.
struct PartialMatrix {
    Matrix m;
    int valid = 0;
    int reach = 0;
};
PartialMatrix element_action(const RealizedModule& M, const NCElement& a, int n);

RealizedPtr realize(const PresentationPtr& P, int cutoff);

// Checks the action axioms (graded commutators, derivation rule) on interior levels.
void validate_module(const RealizedModule& M);

struct ModuleMap {
    RealizedPtr source, target;
    CochainMap map;
    int valid = 0;  // columns exact on source levels <= valid
};

ModuleMap module_identity(const RealizedPtr& M);
ModuleMap module_compose(const ModuleMap& g, const ModuleMap& f);
// A-linear map out of a presented realization determined by generator images (vectors in the target).
ModuleMap map_from_generators(const RealizedPtr& source, const RealizedPtr& target, const std::vector<Vec>& images);
// Intertwines d and the action of every algebra generator on valid levels.
bool is_module_morphism(const ModuleMap& f, std::string* why = nullptr);
bool maps_equal_on_valid(const ModuleMap& f, const ModuleMap& g);
bool is_identity_on_valid(const ModuleMap& f);
bool is_we_module(const ModuleMap& f);
bool is_fib_module(const ModuleMap& f);

// Change of algebra.
RealizedPtr restrict_module(const RealizedPtr& M, const DGAMorphism& phi);
ModuleMap restrict_map(const ModuleMap& f, const DGAMorphism& phi);
PresentationPtr extend_presentation(const PresentationPtr& L, const DGAMorphism& phi);
// Presentation of the restriction; needs phi linear and surjective on generators.
PresentationPtr restrict_presentation(const PresentationPtr& M, const DGAMorphism& phi);
// L -> Res(Ext L), l |-> 1 (x) l
ModuleMap adjunction_unit(const RealizedPtr& L, const DGAMorphism& phi);
// Ext(Res M) -> M for M presented over the target of a surjective phi
ModuleMap adjunction_counit(const PresentationPtr& M, const DGAMorphism& phi, int cutoff);

struct TriangleReport {
    bool first = false;   // counit_{Ext L} o Ext(unit_L) = id
    bool second = false;  // Res(counit_M) o unit_{Res M} = id
};
TriangleReport triangle_identities(const PresentationPtr& L, const PresentationPtr& M, const DGAMorphism& phi,
                                   int cutoff);

// Enrichment over complexes.
RealizedPtr direct_sum_module(const RealizedPtr& a, const RealizedPtr& b);
RealizedPtr tensor_module(const RealizedPtr& M, const CochainComplex& V);
RealizedPtr power_module(const RealizedPtr& M, const CochainComplex& V);
PresentationPtr tensor_presentation(const PresentationPtr& L, const CochainComplex& V);
bool modules_equal(const RealizedModule& a, const RealizedModule& b);

// Hom of A-modules out of a presented module: tuples of generator images (at
// target levels <= image_level) killing every relation.
struct EnrichedHom {
    CochainComplex complex;
    // coordinate layout of degree n: generators in order, each block = target degree |g|+n restricted to levels
    std::map<int, std::vector<std::pair<int, std::vector<std::size_t>>>> layout;
    std::map<int, std::vector<Vec>> kernel_basis;  // in layout coordinates
};
EnrichedHom enriched_hom(const RealizedPtr& L, const RealizedPtr& Lp, int image_level);
// Turn a degree-0 element of the enriched hom into a module map.
ModuleMap enriched_hom_element_to_map(const RealizedPtr& L, const RealizedPtr& Lp, const EnrichedHom& H,
                                      const Vec& h);

}  // namespace hqft
