#include <gtest/gtest.h>

#include "esys/arith.hpp"
#include "esys/matrix.hpp"

using namespace esys;

TEST(Arith, PhiAndDivisorCounts) {
    EXPECT_EQ(euler_phi(1), 1);
    EXPECT_EQ(euler_phi(15), 8);
    EXPECT_EQ(euler_phi(60), 16);
    EXPECT_EQ(num_divisors(12), 6);
    for (i64 n = 1; n <= 200; ++n) {
        i64 units = 0, divs = 0;
        for (i64 a = 1; a <= n; ++a) {
            if (gcd(a, n) == 1) ++units;
            if (n % a == 0) ++divs;
        }
        EXPECT_EQ(euler_phi(n), units) << n;
        EXPECT_EQ(num_divisors(n), divs) << n;
    }
}

TEST(Arith, InverseAndCrt) {
    EXPECT_EQ(inv_mod(2, 3), 2);
    EXPECT_THROW(inv_mod(2, 4), std::domain_error);
    EXPECT_EQ(crt({1, 2}, {3, 5}), 7);
    EXPECT_EQ(crt({0, 1, 2}, {4, 3, 5}), 52);
}

TEST(Arith, CheckedOverflowThrows) {
    EXPECT_THROW(mul_checked(INT64_MAX, 2), OverflowError);
    EXPECT_THROW(add_checked(INT64_MAX, 1), OverflowError);
}

TEST(Matrix, HnfIsCanonicalAndSpansSameLattice) {
    IMat a(2, 3);
    a(0, 0) = 4; a(0, 1) = 6; a(0, 2) = 0;
    a(1, 0) = 1; a(1, 1) = 5; a(1, 2) = 7;
    HnfResult r = hnf(a, true);
    EXPECT_EQ(r.h(0, 1), 0);
    EXPECT_GT(r.h(0, 0), 0);
    EXPECT_GT(r.h(1, 1), 0);
    EXPECT_GE(r.h(1, 0), 0);
    EXPECT_LT(r.h(1, 0), r.h(1, 1));
    IMat av = a * r.v;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(av(i, j), j < 2 ? r.h(i, j) : 0);
    EXPECT_EQ(std::abs(det(r.v)), 1);
    // determinant of the lattice equals the gcd of the 2x2 minors 14, 28, 42
    EXPECT_EQ(r.h(0, 0) * r.h(1, 1), 14);
}

TEST(Matrix, SnfOfSmallMatrix) {
    IMat a(2, 2);
    a(0, 0) = 2; a(0, 1) = 1; a(1, 0) = 0; a(1, 1) = 2;
    SnfResult s = snf(a);
    EXPECT_EQ(s.diag, (Vec{1, 4}));
    EXPECT_EQ(s.u * s.u_inv, IMat::identity(2));
}

TEST(Matrix, SolveModAndKernel) {
    IMat a(1, 2);
    a(0, 0) = 3; a(0, 1) = 5;
    auto x = solve_mod(a, {7}, {1});
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(mod(3 * (*x)[0] + 5 * (*x)[1], 7), 1);
    IMat k = kernel_basis(a);
    ASSERT_EQ(k.cols(), 1);
    EXPECT_EQ(3 * k(0, 0) + 5 * k(1, 0), 0);
}

TEST(Matrix, DeterminantAndAdjugate) {
    IMat a(3, 3);
    i64 v[9] = {2, 0, 1, 1, 3, 2, 1, 1, 1};
    for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = v[i];
    i64 d = det(a);
    EXPECT_EQ(d, 2 * (3 - 2) - 0 + 1 * (1 - 3));
    IMat p = a * adjugate(a);
    EXPECT_EQ(p, IMat::diag({d, d, d}));
}
