#pragma once

// kappa elements of the universal distribution algebra and checks of both
// clauses of the norm relation.

#include <string>
#include <vector>

#include "esys/hecke.hpp"

namespace esys {

enum class Situation { I, II };

// Cyclic N_i = Z/n_i with generator b_i and quotient N'_i = Z/n'_i.
struct EulerInstance {
    int d = 1;
    std::vector<i64> n, n_prime, b;
    i64 p = 0;  // the prime of clause (2); 0 when unused
    Situation situation = Situation::I;

    std::string str() const;
};

// Direct sum of cyclic modules with its summand inclusions and projections.
struct Summands {
    FinMod sum;
    std::vector<ModHom> inj, proj;
};
Summands summands(const std::vector<i64>& orders, int d);

// Throws std::invalid_argument unless the data describe generators and quotients.
void validate(const EulerInstance& inst);
// Supp(N''_i) in Supp(N'_j) for all i, j.
bool clause1_applies(const EulerInstance& inst);
// Supp(N''_i) in {p} in Supp(N_i) for all i.
bool clause2_applies(const EulerInstance& inst);
// Number of i with p outside Supp(N'_i).
int clause2_e(const EulerInstance& inst);

FinMod bn(const EulerInstance& inst);
FinMod bn_prime(const EulerInstance& inst);
// product of pr_j^* [b_j] over bN (the pr_j are the summand cofibrations).
LevelSection build_kappa(const EulerInstance& inst);
// kappa at the quotient level, built from the b'_j.
LevelSection build_kappa_prime(const EulerInstance& inst);
// bN ->> bN'.
CdMorphism quotient_morphism(const EulerInstance& inst);

struct HeckeTerm {
    int r;
    i64 coefficient;     // (-1)^r q^(r(r-1)/2)
    LevelSection value;  // T_[F_p^r] kappa'
};

struct NormRelationReport {
    EulerInstance instance;
    int clause = 1;
    LevelSection lhs, rhs;
    std::vector<HeckeTerm> terms;
    bool punctured = true;  // Situation II: every section lies in the punctured sheaf
    bool verdict = false;
};

// Refuses (std::invalid_argument) instances outside the clause hypotheses.
NormRelationReport verify_theorem1(const EulerInstance& inst);
NormRelationReport verify_theorem2(const EulerInstance& inst);

}  // namespace esys
