#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqft/modules.hpp"

namespace hqft {

class NetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Finite category given by an explicit composition table.
struct Site {
    struct Arrow {
        std::string name;
        int source = 0, target = 0;
    };
    std::vector<std::string> objects;
    std::vector<Arrow> arrows;
    std::vector<int> identity;              // per object
    std::map<std::pair<int, int>, int> comp;  // (g, f) -> g o f, defined when target f == source g

    int object(const std::string& name) const;
    int compose(int g, int f) const;
    std::vector<int> hom(int a, int b) const;  // arrows a -> b
};

// Finite poset; `less` lists generating relations a <= b (transitively closed here).
Site poset_site(const std::vector<std::string>& objects, const std::vector<std::pair<std::string, std::string>>& less);
void validate_site(const Site& S);  // throws NetError

struct Net {
    Site site;
    std::vector<AlgebraPtr> algebra;  // per object
    std::vector<DGAMorphism> map;     // per arrow
};
void validate_net(const Net& N);

// Componentwise morphism of nets over the same site.
struct NetMorphism {
    const Net* source = nullptr;
    const Net* target = nullptr;
    std::vector<DGAMorphism> component;
};
void validate_net_morphism(const NetMorphism& F);
NetMorphism identity_net_morphism(const Net& N);
bool is_we_net(const NetMorphism& F, int length_cutoff);

bool dga_morphisms_equal(const DGAMorphism& f, const DGAMorphism& g);

struct NetRep {
    const Net* net = nullptr;
    std::vector<RealizedPtr> module;        // per object
    std::vector<ModuleMap> structure;       // per arrow: L_c1 -> Res_{A(gamma)} L_c2
};
void validate_rep(const NetRep& R);  // throws NetError naming the arrow pair

// Componentwise module maps; the reps are passed explicitly where naturality is checked.
struct RepMorphism {
    std::vector<ModuleMap> component;
};
bool is_rep_morphism(const RepMorphism& F, const NetRep& source, const NetRep& target, std::string* why = nullptr);
bool is_we_rep(const RepMorphism& F);
bool is_fib_rep(const RepMorphism& F);
RepMorphism identity_rep_morphism(const NetRep& R);

// The net acting on itself through regular modules.
NetRep regular_rep(const Net& N, int cutoff);
RealizedPtr zero_module(const AlgebraPtr& A);

NetRep change_of_net_res(const NetRep& R, const NetMorphism& F);
NetRep change_of_net_ext(const NetRep& R, const NetMorphism& F, int cutoff);
// unit R -> Res Ext R (target rep: change_of_net_res(ext, F)), l |-> 1 (x) l componentwise
RepMorphism change_of_net_unit(const NetRep& R, const NetRep& ext, const NetMorphism& F);
struct ChangeOfNetTriangles {
    bool first = false;   // counit_{Ext R} o Ext(unit_R) = id
    bool second = false;  // Res(counit_S) o unit_{Res S} = id, componentwise
};
ChangeOfNetTriangles change_of_net_triangles(const NetRep& R, const NetRep& S, const NetMorphism& F, int cutoff);

RealizedPtr eval_at(const NetRep& R, int object);
NetRep const_rep(const Net& N, const RealizedPtr& L, int object);
// eta: R -> const(eval_c R), epsilon: eval_c const(L) -> L
RepMorphism const_unit(const NetRep& R, const NetRep& const_of_eval, int object);  // target const_of_eval
ModuleMap const_counit(const NetRep& C, const RealizedPtr& L, int object);
struct EvalConstTriangles {
    bool first = false;   // eps_{eval R} o eval(eta_R) = id
    bool second = false;  // const(eps_L) o eta_{const L} = id
};
EvalConstTriangles eval_const_triangles(const NetRep& R, const RealizedPtr& L, int object);

// F(V)_c = A(c) (x) (sum over gamma: c' -> c of V_{c'})
NetRep free_rep(const Net& N, const std::vector<CochainComplex>& V, int cutoff);
std::vector<CochainComplex> forget(const NetRep& R);
struct FreeForgetTriangles {
    bool first = false;   // eps_{F V} o F(eta_V) = id
    bool second = false;  // U(eps_R) o eta_{U R} = id
};
FreeForgetTriangles free_forget_triangles(const Net& N, const std::vector<CochainComplex>& V, const NetRep& R,
                                          int cutoff);

struct PathObject {
    NetRep P;
    NetRep RxR;
    RepMorphism w;  // R -> P
    RepMorphism f;  // P -> R x R
    RepMorphism diagonal;
};
PathObject path_object(const NetRep& R);

bool quillen_unit_check_net(const NetRep& R, const NetMorphism& F, int cutoff);

}  // namespace hqft
