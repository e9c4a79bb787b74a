#include <gtest/gtest.h>

#include "esys/hecke.hpp"

using namespace esys;

namespace {

FinMod md(std::vector<i64> f, int d) { return FinMod(std::move(f), d); }

QObj zero_obj(int d) { return QObj::representable(FinMod::zero(d)); }

HeckeDescriptor t_elementary(int r, i64 p, int d, QObj target) {
    return HeckeDescriptor{FinMod(Vec(r, p), d), std::move(target)};
}

LevelSection as_section(const MatFunction& f) {
    return make_section(zero_obj(f.d), f.d, {Piece{f.level, f.values}});
}

int rank_of(const IMat& x, i64 p) {
    std::vector<Vec> rows;
    for (int i = 0; i < x.rows(); ++i) rows.push_back(x.row(i));
    return rank_mod_p(rows, p);
}

// Functions on Mat_d(Z/level) that are invariant under x -> x a, a in GL_d.
std::vector<MatFunction> invariant_functions(i64 p, int d) {
    std::vector<MatFunction> out;
    out.push_back(mat_function(1, d, [](const IMat&) { return i64{1}; }));
    out.push_back(mat_function(p, d, [&](const IMat& x) { return i64{rank_of(x, p) == d}; }));
    out.push_back(mat_function(p, d, [&](const IMat& x) {
        std::vector<Vec> r0{x.row(0)};
        return static_cast<i64>(rank_mod_p(r0, p) == 0 ? 5 : 0) + rank_of(x, p);
    }));
    if (d == 2) {
        out.push_back(mat_function(p, d, [&](const IMat& x) {
            std::vector<Vec> diff{{mod(x(0, 0) - x(1, 0), p), mod(x(0, 1) - x(1, 1), p)}};
            return static_cast<i64>(rank_mod_p(diff, p) == 0);
        }));
        if (p == 2)
            out.push_back(mat_function(4, d, [&](const IMat& x) {
                return static_cast<i64>(mod(x(0, 0), 4) == 0 && mod(x(0, 1), 4) == 0) + 2 * (rank_of(x, 2) == 2);
            }));
    }
    return out;
}

}  // namespace

TEST(Hecke, GaussBinomExamples) {
    for (int n = 0; n <= 5; ++n) EXPECT_EQ(gauss_binom(n, 0, 2), 1);
    EXPECT_EQ(gauss_binom(2, 1, 2), 3);
    EXPECT_EQ(gauss_binom(4, 2, 2), 35);
    EXPECT_EQ(gauss_binom(3, 1, 4), 21);
    EXPECT_THROW(gauss_binom(2, 3, 2), std::invalid_argument);
    EXPECT_THROW(gauss_binom(2, 1, 1), std::invalid_argument);
}

TEST(Hecke, GaussBinomMatchesSubspaceCount) {
    for (i64 q : {2, 3})
        for (int e = 0; e <= 5; ++e)
            for (int r = 0; r <= e; ++r) EXPECT_EQ(gauss_binom(e, r, q), grassmann_count(e, r, q, {})) << e << " " << r << " " << q;
}

TEST(Hecke, GrassmannCountExamples) {
    EXPECT_EQ(grassmann_count(3, 3, 2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 1);
    EXPECT_EQ(grassmann_count(2, 1, 3, {}), 4);
    EXPECT_EQ(grassmann_count(3, 2, 2, {{1, 1, 0}}), 3);
    // containment count depends only on dim V
    for (i64 q : {2, 3})
        EXPECT_EQ(grassmann_count(4, 2, q, {{1, 1, 0, 1}}), grassmann_count(4, 2, q, {{0, 0, 1, 0}}));
    EXPECT_EQ(grassmann_count(4, 3, 3, {{1, 2, 0, 0}, {0, 0, 1, 1}}), gauss_binom(2, 1, 3));
    EXPECT_THROW(enumerate_subspaces(3, 1, 4), std::invalid_argument);
}

TEST(Hecke, AlternatingSumExamples) {
    EXPECT_EQ(alternating_sum_check(3, 3, 2), 1);
    EXPECT_EQ(alternating_sum_check(2, 0, 2), 0);
    EXPECT_EQ(alternating_sum_check(3, 1, 3), 0);
    EXPECT_THROW(alternating_sum_check(2, 3, 2), std::invalid_argument);
}

TEST(Hecke, AlternatingSumIsIndicator) {
    for (i64 q : {2, 3})
        for (int e = 0; e <= 4; ++e)
            for (int v = 0; v <= e; ++v) EXPECT_EQ(alternating_sum_check(e, v, q), v == e ? 1 : 0) << e << " " << v << " " << q;
}

TEST(Hecke, CosetRepresentatives) {
    EXPECT_EQ(double_coset_reps(1, 2, 2).size(), 3u);
    EXPECT_EQ(double_coset_reps(1, 3, 2).size(), 4u);
    EXPECT_EQ(double_coset_reps(2, 2, 3).size(), 7u);
    EXPECT_EQ(double_coset_reps(0, 5, 2).size(), 1u);
    for (i64 p : {2, 3})
        for (int r = 0; r <= 2; ++r)
            for (auto& g : double_coset_reps(r, p, 2)) EXPECT_EQ(std::abs(det(g)), pow_checked(p, 2 - r));
    EXPECT_THROW(double_coset_reps(1, 4, 2), std::invalid_argument);
    EXPECT_THROW(double_coset_reps(3, 2, 2), std::invalid_argument);
}

TEST(Hecke, OracleExamples) {
    for (auto& phi : invariant_functions(2, 2)) {
        MatFunction id = double_coset_oracle(0, 2, 2, phi);
        EXPECT_TRUE(equal_sections(as_section(id), as_section(phi)));
    }
    // alternating sum of T_r on the constant function is the indicator of GL_2
    for (i64 p : {2, 3}) {
        MatFunction one = mat_function(1, 2, [](const IMat&) { return i64{1}; });
        std::vector<MatFunction> t;
        for (int r = 0; r <= 2; ++r) t.push_back(double_coset_oracle(r, p, 2, one));
        for (i64 i = 0; i < static_cast<i64>(t[0].values.size()); ++i) {
            i64 v = t[0].values[i] - t[1].values[i] + p * t[2].values[i];
            IMat x(2, 2);
            i64 k = i;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    x(a, b) = k % p;
                    k /= p;
                }
            EXPECT_EQ(v, rank_of(x, p) == 2 ? 1 : 0);
        }
    }
    MatFunction one = mat_function(1, 2, [](const IMat&) { return i64{1}; });
    MatFunction t1 = double_coset_oracle(1, 2, 2, one);
    IMat rank1(2, 2);
    rank1(0, 0) = 1;
    EXPECT_EQ(t1.at(rank1), 1);
    EXPECT_EQ(t1.at(IMat(2, 2)), 3);
    EXPECT_EQ(t1.at(IMat::identity(2)), 0);
}

TEST(Hecke, AugmentedObject) {
    HeckeMaps hm = hecke_maps(t_elementary(1, 2, 2, zero_obj(2)));
    ASSERT_EQ(hm.augmented.size(), 1u);
    EXPECT_EQ(hm.augmented.comps[0].obj.str(), "Z/2");
    EXPECT_EQ(hm.augmented.comps[0].group.size(), 1u);
    EXPECT_TRUE(is_valid(hm.r));
    EXPECT_TRUE(is_valid(hm.m));
    EXPECT_TRUE(is_fibration(hm.m));
    EXPECT_FALSE(is_fibration(hm.r));

    HeckeMaps h3 = hecke_maps(HeckeDescriptor{md({3, 3}, 2), zero_obj(2)});
    EXPECT_EQ(h3.augmented.comps[0].group.size(), 48u);
    QObj z4 = QObj::representable(md({4}, 2));
    HeckeMaps hz = hecke_maps(HeckeDescriptor{md({2}, 2), z4});
    EXPECT_EQ(hz.augmented.comps[0].obj.str(), "Z/2+Z/4");
    EXPECT_TRUE(is_valid(hz.r));
    EXPECT_TRUE(is_valid(hz.m));
    EXPECT_THROW(hecke_maps(HeckeDescriptor{md({2, 2}, 2), z4}), std::invalid_argument);
}

TEST(Hecke, ApplyExamples) {
    // N = 0 is the identity
    for (auto& phi : invariant_functions(3, 2)) {
        LevelSection s = as_section(phi);
        EXPECT_TRUE(equal_sections(hecke_apply(HeckeDescriptor{FinMod::zero(2), zero_obj(2)}, s), s));
    }
    FinMod z5 = md({5}, 1);
    LevelSection b = bs_elem(z5, {2});
    EXPECT_TRUE(equal_sections(hecke_apply(HeckeDescriptor{FinMod::zero(1), QObj::representable(z5)}, b), b));

    // d = 1 over 0: the constant section goes to the indicator of 0 at level p
    for (i64 p : {2, 3, 5}) {
        LevelSection t = hecke_apply(t_elementary(1, p, 1, zero_obj(1)), bs_elem(FinMod::zero(1), {}));
        ASSERT_EQ(t.pieces[0].level, p);
        std::vector<i64> want(p, 0);
        want[0] = 1;
        EXPECT_EQ(t.pieces[0].values, want);
    }

    // over Z/3, T_[Z/2] [1] is the indicator of 4 in U_6 (its cyclotomic image is 1 - zeta_3^2)
    LevelSection t = hecke_apply(HeckeDescriptor{md({2}, 1), QObj::representable(md({3}, 1))}, bs_elem(md({3}, 1), {1}));
    ASSERT_EQ(t.pieces[0].level, 6);
    EXPECT_EQ(t.pieces[0].values, (std::vector<i64>{0, 0, 0, 0, 1, 0}));
}

TEST(Hecke, ApplyIsAdditiveAndRefinementStable) {
    QObj z4 = QObj::representable(md({4}, 1));
    HeckeDescriptor t{md({2}, 1), QObj::representable(md({3}, 1))};
    LevelSection a = bs_elem(md({3}, 1), {1}), b = bs_elem(md({3}, 1), {2});
    EXPECT_TRUE(equal_sections(hecke_apply(t, add(a, scale(b, 3))), add(hecke_apply(t, a), scale(hecke_apply(t, b), 3))));
    LevelSection fine = refine(a, {9});
    EXPECT_TRUE(equal_sections(hecke_apply(t, fine), hecke_apply(t, a)));
    for (auto& phi : invariant_functions(2, 2)) {
        LevelSection s = as_section(phi);
        HeckeDescriptor t1 = t_elementary(1, 2, 2, zero_obj(2));
        EXPECT_TRUE(equal_sections(hecke_apply(t1, refine(s, {phi.level * 2})), hecke_apply(t1, s)));
    }
}

TEST(Hecke, CategoricalMatchesDoubleCosetOracle) {
    for (int d : {1, 2})
        for (i64 p : {2, 3})
            for (int r = 0; r <= d; ++r)
                for (auto& phi : invariant_functions(p, d)) {
                    LevelSection cat = hecke_apply(t_elementary(r, p, d, zero_obj(d)), as_section(phi));
                    LevelSection orc = as_section(double_coset_oracle(r, p, d, phi));
                    EXPECT_TRUE(equal_sections(cat, orc)) << "d=" << d << " p=" << p << " r=" << r << "\n"
                                                          << dump(cat) << dump(orc);
                }
}
