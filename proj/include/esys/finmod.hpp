#pragma once

// Finite Z-modules in invariant-factor form, their elements, submodules,
// subquotients, homomorphisms and automorphism groups.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "esys/matrix.hpp"

namespace esys {

// Enumeration limits; every enumerating routine throws BoundError past them.
struct Bounds {
    i64 module_elements = 10000;     // |N| for submodule enumeration
    i64 hom_candidates = 4000000;    // matrices visited by hom/aut enumeration
    i64 vector_entries = 1000000;    // entries of a level-model section vector
};

Bounds& bounds();

struct BoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Element = Vec;

class FinMod {
public:
    FinMod() = default;
    // factors must form a divisibility chain of integers >= 2.
    FinMod(Vec invariant_factors, int rank_bound);

    static FinMod zero(int rank_bound) { return FinMod({}, rank_bound); }
    static FinMod cyclic(i64 n, int rank_bound);
    // (Z/m)^d; the zero module when m == 1.
    static FinMod free(i64 m, int d);

    const Vec& factors() const { return inv_; }
    int k() const { return static_cast<int>(inv_.size()); }
    int rank_bound() const { return d_; }
    i64 order() const { return order_; }
    i64 exponent() const { return inv_.empty() ? 1 : inv_.back(); }
    bool is_free() const;  // all d factors equal (or zero module)

    Element reduce(const Vec& x) const;
    Element zero_element() const { return Element(k(), 0); }
    bool is_zero(const Element& x) const;
    i64 index(const Element& x) const;
    Element element(i64 idx) const;
    Element add(const Element& a, const Element& b) const;
    Element scale(i64 c, const Element& a) const;
    Element neg(const Element& a) const { return scale(-1, a); }
    i64 element_order(const Element& a) const;
    // Elements in index order; throws BoundError beyond the module bound.
    std::vector<Element> elements() const;

    // Same invariant factors, rank bound may differ.
    bool same_shape(const FinMod& o) const { return inv_ == o.inv_; }
    bool operator==(const FinMod& o) const { return inv_ == o.inv_ && d_ == o.d_; }

    std::string str() const;  // "Z/2+Z/4", "0"

private:
    Vec inv_;
    int d_ = 0;
    i64 order_ = 1;
};

// Cokernel of an integer relation matrix (rows = generators).
FinMod snf_present(const IMat& relations, int rank_bound = -1);

class Submodule {
public:
    Submodule() = default;
    Submodule(FinMod parent, IMat hnf_basis);

    static Submodule whole(const FinMod& n);
    static Submodule zero(const FinMod& n);
    static Submodule generated(const FinMod& n, const std::vector<Element>& gens);

    const FinMod& parent() const { return parent_; }
    // Lower-triangular basis of the lattice {x in Z^k : x mod D in S}.
    const IMat& basis() const { return h_; }
    i64 order() const;
    bool contains(const Element& x) const;
    bool leq(const Submodule& o) const;  // this is contained in o
    std::vector<Element> generators() const;
    std::vector<Element> elements() const;
    Submodule sum(const Submodule& o) const;

    bool operator==(const Submodule& o) const { return h_ == o.h_ && parent_.factors() == o.parent_.factors(); }
    auto operator<=>(const Submodule& o) const { return h_ <=> o.h_; }
    std::string str() const;

private:
    FinMod parent_;
    IMat h_;
};

std::vector<Submodule> enumerate_submodules(const FinMod& n);

// Deterministic presentation of S2/S1 in invariant-factor form.
class SubQuotient {
public:
    SubQuotient(const Submodule& s1, const Submodule& s2);

    const FinMod& module() const { return q_; }
    // Coordinates in the quotient of an element of S2 (throws if outside S2).
    Element project(const Element& x) const;
    // Element of S2 (in parent coordinates) lifting the j-th generator.
    const Element& lift(int j) const { return lifts_[j]; }
    Element lift_element(const Element& q) const;
    const Submodule& inner() const { return s1_; }
    const Submodule& outer() const { return s2_; }

private:
    Submodule s1_, s2_;
    FinMod q_;
    IMat u_;
    Vec diag_;
    std::vector<int> keep_;
    std::vector<Element> lifts_;
};

class ModHom {
public:
    ModHom() = default;
    // matrix is target.k() x source.k(); column j = image of generator j.
    ModHom(FinMod source, FinMod target, IMat matrix);

    static ModHom identity(const FinMod& n);
    static ModHom zero(const FinMod& s, const FinMod& t);

    const FinMod& source() const { return src_; }
    const FinMod& target() const { return tgt_; }
    const IMat& matrix() const { return a_; }

    Element apply(const Element& x) const;
    ModHom after(const ModHom& f) const;  // this o f
    ModHom plus(const ModHom& o) const;
    bool well_defined() const;
    bool is_bijective() const;
    bool is_surjective() const;
    Submodule image() const;
    Submodule kernel() const;
    Submodule preimage(const Submodule& s) const;
    // Inverse of a bijective hom.
    ModHom inverse() const;

    bool operator==(const ModHom& o) const { return a_ == o.a_ && src_ == o.src_ && tgt_ == o.tgt_; }
    auto operator<=>(const ModHom& o) const { return a_ <=> o.a_; }

private:
    FinMod src_, tgt_;
    IMat a_;
};

std::vector<ModHom> hom_modules(const FinMod& m, const FinMod& n);
i64 hom_count(const FinMod& m, const FinMod& n);
// All automorphisms, sorted by matrix; cached per shape.
const std::vector<ModHom>& aut_group(const FinMod& n);
// |GL_d(Z/m)|, used to gate enumerations.
i64 gl_order(int d, i64 m);

// Direct sum A (+) B re-presented in invariant-factor form.
struct DirectSum {
    FinMod sum;
    ModHom inj1, inj2, proj1, proj2;
};
DirectSum direct_sum(const FinMod& a, const FinMod& b, int rank_bound);

// Canonical surjection (Z/m)^d -> N sending e_i to the i-th generator.
ModHom std_surjection(const FinMod& n, i64 m);

// T in GL_d(Z/m) with std_surjection(N, m) * T == phi for a surjection
// phi: (Z/m)^d -> N.
IMat lift_surjection(const ModHom& phi);

// Parse "Z/2+Z/4" or "0"; non-chain inputs are rejected with a hint.
FinMod parse_module(const std::string& text, int rank_bound);

}  // namespace esys
