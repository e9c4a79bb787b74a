#pragma once

// Full-rank lattices in Q^d stored as (integer HNF basis) / denominator.

#include <string>

#include "esys/finmod.hpp"

namespace esys {

class Lattice {
public:
    Lattice() = default;
    // Lattice spanned by the columns of basis / den; basis must have rank d.
    Lattice(const IMat& basis, i64 den = 1);

    static Lattice standard(int d);
    static Lattice diagonal(const Vec& scales, i64 den = 1);

    int rank() const { return b_.rows(); }
    const IMat& basis() const { return b_; }
    i64 denominator() const { return den_; }
    // Basis scaled to the common denominator D (den must divide D).
    IMat basis_over(i64 d) const;

    // Point num/den in Q^d.
    bool contains(const Vec& num, i64 den = 1) const;
    bool leq(const Lattice& o) const;
    // |det| of the basis as the reduced fraction num/den.
    std::pair<i64, i64> covolume() const;

    bool operator==(const Lattice& o) const = default;
    auto operator<=>(const Lattice& o) const {
        if (auto c = den_ <=> o.den_; c != 0) return c;
        return b_ <=> o.b_;
    }
    std::string str() const;

private:
    IMat b_;
    i64 den_ = 1;
};

Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersect(const Lattice& a, const Lattice& b);
// Z-dual under the standard pairing on Q^d.
Lattice dual_lattice(const Lattice& l);

struct LatticePair {
    Lattice inner, outer;
    LatticePair(Lattice in, Lattice out);
    // (L1,L2) <= (L1',L2') iff L1' <= L1 <= L2 <= L2'.
    bool leq(const LatticePair& o) const;
    bool operator==(const LatticePair& o) const = default;
};

// Pair dominating both arguments: (inner meet, outer join).
LatticePair connecting_pair(const LatticePair& a, const LatticePair& b);

// outer/inner as an invariant-factor module, with the coordinate map.
class LatticeQuotient {
public:
    explicit LatticeQuotient(const LatticePair& p);
    const FinMod& module() const { return q_; }
    // Image of the point outer_basis * coords.
    Element from_outer_coords(const Vec& coords) const;
    // Image of a point num/den of the outer lattice (throws if outside).
    Element from_point(const Vec& num, i64 den = 1) const;

private:
    LatticePair pair_;
    FinMod q_;
    IMat u_;
    Vec diag_;
    std::vector<int> keep_;
};

}  // namespace esys
