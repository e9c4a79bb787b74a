#pragma once

// Morphisms N -> N' are triples (N1, N2, alpha) with N1 <= N2 <= N and
// alpha : N2/N1 -> N' an isomorphism. Arrows point from the larger module
// to the subquotient, so a surjection N ->> N' is a fibration (N2 = N) and
// the inclusion of a submodule is read backwards as a cofibration (N1 = 0).

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "esys/finmod.hpp"

namespace esys {

class CdMorphism {
public:
    CdMorphism() = default;
    // alpha is a tgt.k() x tgt.k() matrix on the generators of
    // SubQuotient(n1, n2); throws unless it is an isomorphism.
    CdMorphism(FinMod src, FinMod tgt, Submodule n1, Submodule n2, IMat alpha);

    const FinMod& src() const { return src_; }
    const FinMod& tgt() const { return tgt_; }
    const Submodule& inner() const { return q_->inner(); }
    const Submodule& outer() const { return q_->outer(); }
    const IMat& alpha() const { return alpha_; }
    const SubQuotient& quotient() const { return *q_; }

    // Image in tgt of an element of the outer submodule.
    Element eval(const Element& x) const;

    bool is_fibration() const { return outer().order() == src_.order(); }
    bool is_cofibration() const { return inner().order() == 1; }
    bool is_iso() const { return is_fibration() && is_cofibration(); }

    bool operator==(const CdMorphism& o) const;
    std::string str() const;

private:
    FinMod src_, tgt_;
    std::shared_ptr<const SubQuotient> q_;
    IMat alpha_;
};

// Triple (n1, n2, alpha) where alpha is read off from a map defined on n2.
CdMorphism morphism_from_map(const FinMod& src, const FinMod& tgt, const Submodule& n1, const Submodule& n2,
                             const std::function<Element(const Element&)>& on_outer);

CdMorphism identity_morphism(const FinMod& n);
// The morphism (0, N, beta) attached to an isomorphism beta : N -> N'.
CdMorphism iso_morphism(const ModHom& beta);
// The fibration (ker phi, U, phi) attached to a surjection phi : U ->> N.
CdMorphism fibration_from_surjection(const ModHom& phi);
// Standard fibration (Z/m)^d ->> N.
CdMorphism level_fibration(const FinMod& n, i64 m);

// g o f; throws when tgt(f) != src(g).
CdMorphism compose(const CdMorphism& g, const CdMorphism& f);

struct Factorization {
    CdMorphism cof;  // N -> N2 (as an invariant-factor module)
    CdMorphism fib;  // N2 -> N'
};
Factorization factorize(const CdMorphism& f);

std::vector<CdMorphism> hom_set(const FinMod& n, const FinMod& n2);

// Automorphisms sigma of src(f) with f o iso_morphism(sigma) == f.
std::vector<ModHom> relative_aut(const CdMorphism& f);

struct GaloisCover {
    FinMod m;
    CdMorphism h;  // M -> src(f)
};
GaloisCover galois_cover_for(const CdMorphism& f);

// All h' : src(c) -> src(f) with f o h' == c.
std::vector<CdMorphism> lifts_through(const CdMorphism& f, const CdMorphism& c);

i64 degree(const CdMorphism& f);
bool is_galois(const CdMorphism& f);

// Duality on triples, using the self-pairing sum x_i y_i / n_i of N.
CdMorphism dualize(const CdMorphism& f);
// Annihilator of S under the self-pairing.
Submodule orthogonal(const Submodule& s);

}  // namespace esys
