#pragma once

// Sections of the Schwartz-Bruhat sheaf and its tensor powers in the level
// model. Over a component (N, H) a section of degree r is stored as an
// integer vector on (U_M)^r, U_M = (Z/M)^d, invariant under the level group
// {T : std o T in H o std}; the covering leg is the standard fibration
// U_M ->> N. Sections at different levels are compared after refinement.
//
// Tuple layout: an element x of U_M has index sum x_i M^i; an r-tuple
// (y_1, ..., y_r) has index sum idx(y_k) (M^d)^(k-1).

#include <optional>
#include <string>
#include <vector>

#include "esys/fcat.hpp"

namespace esys {

struct Piece {
    i64 level = 1;
    std::vector<i64> values;
};

struct LevelSection {
    QObj target;
    int degree = 0;
    std::vector<Piece> pieces;  // one per target component

    int rank_bound() const;
};

enum class SheafKind { BS, BS_star, GBS };
struct SheafSpec {
    SheafKind kind = SheafKind::BS;
    int degree = 1;  // GBS only; BS and BS_star are degree 1
};

// Entries of (U_level)^r for rank bound d; throws BoundError past the cap.
i64 tuple_count(i64 level, int d, int r);
i64 tuple_index(i64 level, const std::vector<Element>& tuple);
std::vector<Element> tuple_at(i64 level, int d, int r, i64 idx);

LevelSection zero_section(const QObj& x, int degree);
// Degree-0 section with constant value c.
LevelSection constant_section(const QObj& x, i64 c);
// Builds a section from explicit pieces; throws unless every piece is
// invariant under its level group.
LevelSection make_section(const QObj& x, int degree, std::vector<Piece> pieces);

// Degree-1 section [b] over the representable N.
LevelSection bs_elem(const FinMod& n, const Element& b, bool punctured = false);

LevelSection add(const LevelSection& a, const LevelSection& b);
LevelSection scale(const LevelSection& a, i64 c);
// Throws std::domain_error unless every entry is divisible by c.
LevelSection divide_exact(const LevelSection& a, i64 c);

LevelSection pullback(const LevelSection& s, const FMorphism& f);
LevelSection pullback(const LevelSection& s, const CdMorphism& f);
// Transfer along a morphism that is a fibration on every component.
LevelSection transfer(const LevelSection& s, const FMorphism& f);
LevelSection transfer(const LevelSection& s, const CdMorphism& f);
LevelSection product(const std::vector<LevelSection>& ss);

bool equal_sections(const LevelSection& a, const LevelSection& b);

Piece refine_piece(const Piece& p, int d, int r, i64 level);
LevelSection refine(const LevelSection& s, const std::vector<i64>& levels);
// Each piece moved to the smallest level it factors through.
LevelSection coarsen(const LevelSection& s);

bool is_invariant(const LevelSection& s);
// Vanishes on every tuple with a coordinate mapping to 0 in the component.
bool is_punctured(const LevelSection& s);
bool belongs_to(const LevelSection& s, const SheafSpec& spec);

// Canonical text form of the coarsened section.
std::string dump(const LevelSection& s);

// Galois descent along a single-component fibration c : Z -> (N, H):
// the section t over the target with c^* t == s, or nullopt when s is not
// invariant under the automorphisms of c.
std::optional<LevelSection> descend(const LevelSection& s, const FMorphism& c);

// Presheaf-level descent for BS'^{(x) r}: values on Z^r of the source of a
// fibration c are in the image of c^* iff they are constant on the fibres of c^r.
bool presheaf_descends(const CdMorphism& c, const std::vector<i64>& values, int r);

}  // namespace esys
