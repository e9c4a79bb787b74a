#pragma once

// Quotient objects (N, H), finite coproducts of them, and morphisms given by
// representatives at a free level cover U_M = (Z/M)^d.
//
// A component morphism (X, A) -> (Y, B) is stored as a level M (a multiple
// of exp X) and a morphism f' : U_M -> Y; the covering leg is always the
// standard fibration U_M ->> X.

#include <string>
#include <vector>

#include "esys/cd_category.hpp"

namespace esys {

// Matrices over Z/m.
IMat mat_mul_mod(const IMat& a, const IMat& b, i64 m);
IMat mat_inv_mod(const IMat& a, i64 m);
// GL_d(Z/m) as sorted matrices (cached).
const std::vector<IMat>& gl_group(int d, i64 m);

// Closure of a set of automorphisms of n under composition.
std::vector<IMat> close_group(const FinMod& n, std::vector<IMat> gens);

struct Component {
    FinMod obj;
    std::vector<IMat> group;  // sorted, closed, matrices of automorphisms of obj
    CdMorphism witness;       // fibration with group contained in its relative automorphisms

    Component() = default;
    Component(FinMod n, std::vector<IMat> generators, CdMorphism witness_fibration);
    // (n, generators) with the fibration n ->> 0 as witness.
    static Component with_group(const FinMod& n, std::vector<IMat> generators);
    static Component representable(const FinMod& n) { return with_group(n, {}); }

    int rank_bound() const { return obj.rank_bound(); }
    bool contains(const IMat& a) const;
    std::string str() const;
};

struct QObj {
    std::vector<Component> comps;
    static QObj single(Component c) { return QObj{{std::move(c)}}; }
    static QObj representable(const FinMod& n) { return single(Component::representable(n)); }
    std::size_t size() const { return comps.size(); }
    std::string str() const;
};

struct Rep {
    i64 level;     // M
    CdMorphism f;  // U_M -> target component object
};

struct FMorphism {
    QObj src, tgt;
    std::vector<int> pi0;  // source component -> target component
    std::vector<Rep> reps;

    std::string str() const;
};

FMorphism from_cd(const CdMorphism& f);
FMorphism identity_fmor(const QObj& x);
// Canonical map (N, 1) -> (N, H) onto one component.
FMorphism quotient_map(const Component& c);
// Single-component morphism from a representative.
FMorphism make_fmor(const Component& src, const Component& tgt, Rep rep);

// Rep refined to level l (a multiple of rep.level).
Rep refine_rep(const Rep& r, i64 l);

// {T in GL_d(Z/M) : std_N o T in H o std_N}.
std::vector<IMat> level_group(const Component& c, i64 m);
// True when every T in the source level group maps the representative into
// its target-group orbit.
bool is_valid(const FMorphism& f);

bool fmor_equal(const FMorphism& a, const FMorphism& b);
FMorphism compose(const FMorphism& g, const FMorphism& f);
bool is_fibration(const FMorphism& f);

// For g : N -> N' and a level mp of N', a level L of N and
// gt : U_L -> U_mp with std_{N'} o gt == g o std_N.
struct LevelLift {
    i64 level;
    CdMorphism gt;
};
LevelLift lift_to_level(const CdMorphism& g, i64 mp);

struct FiberProduct {
    QObj obj;
    FMorphism p1, p2;
};
// f1 : F1 -> F, f2 : F2 -> F with f2 a fibration on every component.
FiberProduct fiber_product(const FMorphism& f1, const FMorphism& f2);

// Degree on each target component (sum over the source components above it).
std::vector<i64> degree_f(const FMorphism& f);

// Finite left G-set; act[g][s] = g.s with g indexing `group`.
struct GSet {
    std::vector<ModHom> group;
    std::vector<std::vector<int>> act;
    int size() const { return act.empty() ? 0 : static_cast<int>(act[0].size()); }
    int index_of(const ModHom& g) const;
    // Identity acts trivially and act[gh] = act[g] o act[h].
    bool valid() const;
    std::vector<std::vector<int>> orbits() const;
    std::vector<int> stabilizer(int s) const;
};
GSet translation_gset(const std::vector<ModHom>& group);
// Left cosets G/K with G acting by left multiplication.
GSet coset_gset(const std::vector<ModHom>& group, const std::vector<ModHom>& sub);
// Disjoint union.
GSet gset_union(const GSet& a, const GSet& b);

struct CompactInduction {
    QObj obj;
    FMorphism structure;                 // obj -> (Y, 1)
    std::vector<int> orbit_rep;          // per component, the chosen point of S
    std::vector<int> component_of_point; // per point of S
};
// M_G(S) for a Galois covering c : X -> Y with group G = relative_aut(c).
CompactInduction compact_induction(const CdMorphism& c, const GSet& s);
// M_G(phi) for an equivariant map phi : S -> T.
FMorphism induced_map(const CdMorphism& c, const GSet& s, const GSet& t, const std::vector<int>& phi);

}  // namespace esys
