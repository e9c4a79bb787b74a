#pragma once

// Hecke operators T_[N] = m_* r^* through the augmented object
// F' (+) [N] = disjoint union of (N'_j (+) N) / (H_j x Aut N), q-binomial
// counts, and an independent double-coset operator on matrix functions.

#include <functional>
#include <vector>

#include "esys/sheaf_engine.hpp"

namespace esys {

struct HeckeDescriptor {
    FinMod aux;   // N
    QObj target;  // F'
};

struct HeckeMaps {
    QObj augmented;
    FMorphism r;  // (N'_j (+) N) -> N'_j, the summand N'_j read as a cofibration
    FMorphism m;  // (N'_j (+) N) ->> N'_j, projection
};
// Throws std::invalid_argument when some N'_j (+) N needs more than d generators.
HeckeMaps hecke_maps(const HeckeDescriptor& t);
LevelSection hecke_apply(const HeckeDescriptor& t, const LevelSection& s);

// Number of m-dimensional subspaces of F_q^n.
i64 gauss_binom(int n, int m, i64 q);

// Reduced row echelon bases (r rows of length e) of all r-dimensional
// subspaces of F_q^e, in lexicographic pivot order.
std::vector<std::vector<Vec>> enumerate_subspaces(int e, int r, i64 q);
// Exhaustive count of r-dimensional subspaces of F_q^e containing span(v).
i64 grassmann_count(int e, int r, i64 q, const std::vector<Vec>& v);
// sum_r (-1)^r q^(r(r-1)/2) #{W : dim W = e - r, W >= V} for V spanned by
// the first dim_v unit vectors.
i64 alternating_sum_check(int e, int dim_v, i64 q);

// Function on Mat_d(Z/level); the row y_k of a matrix is the k-th tuple
// entry, laid out as in sheaf sections.
struct MatFunction {
    i64 level = 1;
    int d = 0;
    std::vector<i64> values;

    i64 at(const IMat& x) const;  // x reduced mod level
};
MatFunction mat_function(i64 level, int d, const std::function<i64(const IMat&)>& fn);

// The matrices p * g for g running over K g_r K / K, g_r = diag(p^-1 (r
// times), 1, ...), one per r-dimensional subspace W of F_p^d: with U the
// RREF basis of W (as columns) completed by unit vectors,
// p g = U diag(1^r, p^(d-r)) U^-1. Checks the count and pairwise distinct cosets.
std::vector<IMat> double_coset_reps(int r, i64 p, int d);
// (T phi)(x) = sum over the cosets of phi(x g), zero unless x g is integral.
// phi at level p^a gives a result at level p^(a+1).
MatFunction double_coset_oracle(int r, i64 p, int d, const MatFunction& phi);

}  // namespace esys
