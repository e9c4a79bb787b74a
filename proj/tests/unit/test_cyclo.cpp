#include <gtest/gtest.h>

#include "esys/cyclo.hpp"
#include "esys/euler.hpp"

using namespace esys;

namespace {

int moebius(i64 n) {
    int mu = 1;
    for (auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

Poly mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// prod_{d | n} (x^d - 1)^mu(n/d) via power series division of the positive
// part by the negative part
Poly moebius_phi(i64 n) {
    Poly num{1}, den{1};
    for (i64 d : divisors(n)) {
        Poly f(d + 1, 0);
        f[0] = -1;
        f[d] = 1;
        int mu = moebius(n / d);
        if (mu == 1) num = mul(num, f);
        if (mu == -1) den = mul(den, f);
    }
    // den has constant term +-1: divide as series
    Poly q(num.size() - den.size() + 1, 0);
    Poly r = num;
    for (std::size_t i = q.size(); i-- > 0;) {
        q[i] = r[i + den.size() - 1] / den.back();
        for (std::size_t j = 0; j < den.size(); ++j) r[i + j] -= q[i] * den[j];
    }
    return q;
}

Poly ints(std::vector<long> v) {
    Poly p;
    for (auto x : v) p.push_back(x);
    return p;
}

}  // namespace

TEST(Cyclo, CyclotomicPolyExamples) {
    EXPECT_EQ(cyclotomic_poly(1), ints({-1, 1}));
    EXPECT_EQ(cyclotomic_poly(4), ints({1, 0, 1}));
    EXPECT_EQ(cyclotomic_poly(15).size(), 9u);
    EXPECT_EQ(cyclotomic_poly(15), ints({1, -1, 0, 1, -1, 1, 0, -1, 1}));
    EXPECT_THROW(cyclotomic_poly(0), std::invalid_argument);
}

TEST(Cyclo, CyclotomicPolyMatchesMoebiusProduct) {
    for (i64 n = 1; n <= 120; ++n) {
        EXPECT_EQ(cyclotomic_poly(n), moebius_phi(n)) << n;
        EXPECT_EQ(static_cast<i64>(cyclotomic_poly(n).size()) - 1, euler_phi(n));
    }
    // the first coefficient of absolute value 2 appears at 105
    bool two = false;
    for (auto& c : cyclotomic_poly(105)) two = two || abs(c) == 2;
    EXPECT_TRUE(two);
    // prod_{d|n} Phi_d = x^n - 1
    for (i64 n : {12, 30, 36}) {
        Poly prod{1};
        for (i64 d : divisors(n)) prod = mul(prod, cyclotomic_poly(d));
        Poly want(n + 1, 0);
        want[0] = -1;
        want[n] = 1;
        EXPECT_EQ(prod, want);
    }
}

TEST(Cyclo, ArithmeticExamples) {
    CycloElem z4 = CycloElem::zeta_pow(4, 1);
    EXPECT_EQ((z4 * z4).coeffs(), ints({-1, 0}));
    EXPECT_EQ(galois_apply(3, z4).coeffs(), ints({0, -1}));
    EXPECT_EQ(galois_apply(1, CycloElem::siegel(7, 3)), CycloElem::siegel(7, 3));
    CycloElem a = CycloElem::siegel(5, 1) * CycloElem::zeta_pow(5, 3) + CycloElem::one(5);
    EXPECT_EQ(galois_apply(2, galois_apply(2, a)), galois_apply(4, a));
    for (i64 s : {1, 2, 4, 5, 7, 8})
        for (i64 t : {1, 4, 7})
            EXPECT_EQ(galois_apply(s, galois_apply(t, CycloElem::siegel(9, 2))), galois_apply(s * t, CycloElem::siegel(9, 2)));
    EXPECT_THROW(galois_apply(2, z4), std::invalid_argument);
    // zeta_n is a root of x^n - 1 and sums of all n-th roots vanish
    CycloElem sum = CycloElem::zeta_pow(12, 0);
    for (i64 k = 1; k < 12; ++k) sum = sum + CycloElem::zeta_pow(12, k);
    EXPECT_TRUE(sum.is_zero());
    EXPECT_EQ(embed(CycloElem::zeta_pow(3, 1), 12), CycloElem::zeta_pow(12, 4));
}

TEST(Cyclo, NormExamples) {
    EXPECT_EQ(norm_down(CycloElem::one(12), 4, 3), CycloElem::one(12));
    // (1 - i)(1 + i) = 2 = 1 - zeta_2
    CycloElem n4 = norm_down(CycloElem::siegel(4, 1), 1, 4);
    EXPECT_EQ(n4, embed(CycloElem::siegel(2, 1), 4));
    EXPECT_EQ(restrict_to(n4, 1)->coeffs(), ints({2}));
    // Q(zeta_9) over Q(zeta_3)
    CycloElem n9 = norm_down(CycloElem::siegel(9, 1), 3, 3);
    EXPECT_EQ(n9, embed(CycloElem::siegel(3, 1), 9));
    EXPECT_EQ(relative_galois(3, 3), (std::vector<i64>{1, 4, 7}));
    EXPECT_THROW(norm_down(CycloElem::siegel(9, 0), 3, 3), std::invalid_argument);
}

TEST(Cyclo, RestrictionRecognisesSubfields) {
    EXPECT_TRUE(restrict_to(embed(CycloElem::siegel(5, 2), 15), 5).has_value());
    EXPECT_FALSE(restrict_to(CycloElem::siegel(15, 1), 5).has_value());
    auto r = restrict_to(embed(CycloElem::siegel(6, 1), 12), 6);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, CycloElem::siegel(6, 1));
}

TEST(Cyclo, GaloisGroupOrders) {
    for (i64 np = 2; np <= 30; ++np)
        for (i64 p : {2, 3, 5, 7})
            EXPECT_EQ(static_cast<i64>(relative_galois(np, p).size()), euler_phi(np * p) / euler_phi(np));
}

TEST(Cyclo, DistributionExamples) {
    EXPECT_TRUE(verify_distribution(7, 1));
    EXPECT_EQ(CycloElem::siegel(4, 1) * CycloElem::siegel(4, 3), embed(CycloElem::siegel(2, 1), 4));
    EXPECT_TRUE(verify_distribution(4, 2));
    EXPECT_TRUE(verify_distribution(9, 3));
}

TEST(Cyclo, DistributionAllLevels) {
    for (i64 n = 1; n <= 60; ++n)
        for (i64 k : divisors(n)) EXPECT_TRUE(verify_distribution(n, k)) << n << " " << k;
}

TEST(Cyclo, NormRelationExamples) {
    for (auto [np, p, b] : std::vector<std::tuple<i64, i64, i64>>{{3, 2, 1}, {3, 5, 1}, {4, 3, 1}}) {
        NormRelationCheck r = verify_norm_relation(np, p, b);
        EXPECT_TRUE(r.ok) << np << " " << p << " " << b;
    }
    NormRelationCheck r = verify_norm_relation(3, 2, 1);
    EXPECT_EQ(r.p_inverse, 2);
    EXPECT_EQ(r.b_lift, 1);
    EXPECT_EQ(r.frobenius_term, embed(CycloElem::siegel(3, 2), 6));
    EXPECT_EQ(verify_norm_relation(4, 3, 1).p_inverse, 3);
    EXPECT_THROW(verify_norm_relation(6, 3, 1), std::invalid_argument);
    EXPECT_THROW(verify_norm_relation(5, 2, 0), std::invalid_argument);
    EXPECT_THROW(verify_norm_relation(1, 2, 1), std::invalid_argument);
    // the relation needs the Frobenius factor
    EXPECT_NE(r.norm, r.target);
}

TEST(Cyclo, Towers) {
    for (i64 p : {2, 3, 5, 7})
        for (i64 n = 1; n * p * p <= 100; ++n) EXPECT_TRUE(verify_tower(n, p)) << n << " " << p;
}

TEST(Cyclo, ImageOfSections) {
    // T_[Z/2] [1] over Z/3 maps to 1 - zeta_3^2
    EXPECT_TRUE(verify_frobenius(3, 2, 1));
    auto img = cyclotomic_image(bs_elem(FinMod::cyclic(5, 1), {2}));
    EXPECT_EQ(img.first, CycloElem::siegel(5, 2));
    EXPECT_THROW(cyclotomic_image(bs_elem(FinMod::cyclic(5, 1), {0})), std::invalid_argument);
    for (i64 np : {3, 4, 5, 7, 10})
        for (i64 p : {2, 3, 5, 7}) {
            if (np % p == 0) continue;
            for (i64 b = 1; b < np; ++b) {
                EXPECT_TRUE(verify_frobenius(np, p, b)) << np << " " << p << " " << b;
                EXPECT_TRUE(verify_transfer_is_norm(np, p, b)) << np << " " << p << " " << b;
            }
        }
}

TEST(Cyclo, UniversalInstanceMapsToCyclotomicUnits) {
    // the cyclotomic distribution sends [b] to 1 - zeta^b; both sides of the
    // universal relation map to the two sides of the unit relation
    for (auto [np, p] : std::vector<std::pair<i64, i64>>{{2, 3}, {3, 2}, {5, 2}, {4, 3}, {5, 3}}) {
        EulerInstance e;
        e.d = 1;
        e.n = {np * p};
        e.n_prime = {np};
        e.b = {crt({1, 1}, {np, p})};
        e.p = p;
        e.situation = Situation::II;
        NormRelationReport rep = verify_theorem2(e);
        ASSERT_TRUE(rep.verdict);
        NormRelationCheck u = verify_norm_relation(np, p, 1);
        EXPECT_TRUE(same_image(cyclotomic_image(build_kappa(e)), {CycloElem::siegel(np * p, u.b_lift), CycloElem::one(np * p)}));
        EXPECT_TRUE(same_image(cyclotomic_image(rep.lhs), {u.norm, CycloElem::one(np * p)}));
        EXPECT_TRUE(same_image(cyclotomic_image(rep.rhs), {CycloElem::siegel(np, 1), CycloElem::siegel(np, u.p_inverse)}));
    }
}
