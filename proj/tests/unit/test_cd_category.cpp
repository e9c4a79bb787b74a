#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "esys/cd_category.hpp"

using namespace esys;

namespace {

FinMod mod1(i64 n) { return FinMod::cyclic(n, 1); }
FinMod mod2(Vec f) { return FinMod(std::move(f), 2); }

// Reduction Z/n ->> Z/n' on the standard generators.
CdMorphism reduction(i64 n, i64 n2) {
    FinMod a = mod1(n), b = mod1(n2);
    IMat m(b.k(), a.k());
    if (b.k() > 0) m(0, 0) = 1;
    return fibration_from_surjection(ModHom(a, b, m));
}

ModHom unit_map(const FinMod& src, const FinMod& tgt, i64 u) { return ModHom(src, tgt, IMat::diag({u})); }

// Isomorphism type of a finite abelian group from its element-order profile.
std::map<i64, i64> order_profile(const FinMod& n, const std::vector<Element>& els) {
    std::map<i64, i64> p;
    for (auto& x : els) p[n.element_order(x)]++;
    return p;
}

std::vector<FinMod> corpus2() {
    return {FinMod::zero(2), mod2({2}), mod2({3}), mod2({4}), mod2({2, 2}), mod2({6}), mod2({2, 4})};
}

std::vector<CdMorphism> morphisms_from(const std::vector<FinMod>& objs) {
    std::vector<CdMorphism> out;
    for (auto& a : objs)
        for (auto& b : objs)
            for (auto& f : hom_set(a, b)) out.push_back(f);
    return out;
}

}  // namespace

TEST(CdCategory, HomSetExamples) {
    EXPECT_EQ(hom_set(mod1(4), mod1(2)).size(), 2u);
    EXPECT_TRUE(hom_set(mod1(2), mod1(4)).empty());
    EXPECT_EQ(hom_set(mod2({2, 2}), mod2({2})).size(), 6u);
}

TEST(CdCategory, HomSetCountsInRankOne) {
    // |Hom(Z/n, Z/n')| = tau(n/n') * phi(n') when n' | n, else 0
    for (i64 n = 1; n <= 30; ++n)
        for (i64 n2 = 1; n2 <= 30; ++n2) {
            i64 expect = n % n2 == 0 ? num_divisors(n / n2) * euler_phi(n2) : 0;
            EXPECT_EQ(static_cast<i64>(hom_set(mod1(n), mod1(n2)).size()), expect) << n << " " << n2;
        }
}

TEST(CdCategory, HomSetCountsAgainstElementSetOracle) {
    // Pairs of subgroups N1 <= N2 with N2/N1 of the target's shape, found by
    // brute force on element sets, times |Aut(N')|.
    for (auto& n : corpus2())
        for (auto& t : corpus2()) {
            auto els = n.elements();
            std::vector<std::set<i64>> subs;
            for (auto& s : enumerate_submodules(n)) {
                std::set<i64> e;
                for (auto& x : s.elements()) e.insert(n.index(x));
                subs.push_back(e);
            }
            auto target_profile = order_profile(t, t.elements());
            i64 pairs = 0;
            for (auto& s2 : subs)
                for (auto& s1 : subs) {
                    if (!std::includes(s2.begin(), s2.end(), s1.begin(), s1.end())) continue;
                    if (s2.size() != s1.size() * static_cast<std::size_t>(t.order())) continue;
                    // element orders in the quotient: smallest k with k*x in s1
                    std::map<i64, i64> prof;
                    for (i64 xi : s2) {
                        Element x = n.element(xi);
                        i64 k = 1;
                        while (!s1.count(n.index(n.scale(k, x)))) ++k;
                        prof[k]++;
                    }
                    for (auto& [o, c] : prof) c /= static_cast<i64>(s1.size());
                    pairs += prof == target_profile;
                }
            EXPECT_EQ(static_cast<i64>(hom_set(n, t).size()), pairs * static_cast<i64>(aut_group(t).size()))
                << n.str() << " -> " << t.str();
        }
}

TEST(CdCategory, ComposeWorkedExample) {
    FinMod z8 = mod1(8), z4 = mod1(4), z2 = mod1(2);
    Submodule two8 = Submodule::generated(z8, {{2}});
    CdMorphism f = morphism_from_map(z8, z4, Submodule::zero(z8), two8, [](const Element& x) { return Element{x[0] / 2}; });
    CdMorphism g = fibration_from_surjection(ModHom(z4, z2, IMat::diag({1})));
    CdMorphism gf = compose(g, f);
    EXPECT_EQ(gf.inner(), Submodule::generated(z8, {{4}}));
    EXPECT_EQ(gf.outer(), two8);
    EXPECT_EQ(gf.eval({2}), (Element{1}));
    EXPECT_EQ(gf.eval({4}), (Element{0}));
}

TEST(CdCategory, IdentityAndIsoMorphisms) {
    for (auto& f : morphisms_from(corpus2())) {
        EXPECT_EQ(compose(identity_morphism(f.tgt()), f), f);
        EXPECT_EQ(compose(f, identity_morphism(f.src())), f);
    }
    FinMod z5 = mod1(5);
    for (i64 u = 1; u < 5; ++u)
        for (i64 v = 1; v < 5; ++v) {
            CdMorphism a = iso_morphism(unit_map(z5, z5, u));
            CdMorphism b = iso_morphism(unit_map(z5, z5, v));
            EXPECT_EQ(compose(b, a), iso_morphism(unit_map(z5, z5, u * v % 5)));
        }
}

TEST(CdCategory, CompositionIsAssociative) {
    auto objs = std::vector<FinMod>{mod2({2, 4}), mod2({4}), mod2({2, 2}), mod2({2}), FinMod::zero(2)};
    std::mt19937 rng(1);
    for (int t = 0; t < 200; ++t) {
        std::vector<FinMod> chain;
        for (int i = 0; i < 4; ++i) chain.push_back(objs[rng() % objs.size()]);
        std::sort(chain.begin(), chain.end(), [](auto& a, auto& b) { return a.order() > b.order(); });
        auto h1 = hom_set(chain[0], chain[1]), h2 = hom_set(chain[1], chain[2]), h3 = hom_set(chain[2], chain[3]);
        if (h1.empty() || h2.empty() || h3.empty()) continue;
        auto& f = h1[rng() % h1.size()];
        auto& g = h2[rng() % h2.size()];
        auto& h = h3[rng() % h3.size()];
        EXPECT_EQ(compose(h, compose(g, f)), compose(compose(h, g), f));
    }
}

TEST(CdCategory, EveryMorphismIsAnEpimorphism) {
    auto objs = corpus2();
    for (auto& a : objs)
        for (auto& b : objs)
            for (auto& c : objs) {
                auto fs = hom_set(a, b);
                auto gs = hom_set(b, c);
                if (fs.empty() || gs.size() < 2) continue;
                for (auto& f : fs) {
                    std::set<std::string> seen;
                    std::vector<CdMorphism> comps;
                    for (auto& g : gs) comps.push_back(compose(g, f));
                    for (std::size_t i = 0; i < gs.size(); ++i)
                        for (std::size_t j = i + 1; j < gs.size(); ++j) EXPECT_FALSE(comps[i] == comps[j]);
                }
            }
}

TEST(CdCategory, FibrationsComposeExactly) {
    auto objs = std::vector<FinMod>{mod2({2, 4}), mod2({4}), mod2({2, 2}), mod2({2}), FinMod::zero(2)};
    for (auto& a : objs)
        for (auto& b : objs)
            for (auto& c : objs)
                for (auto& f : hom_set(a, b))
                    for (auto& g : hom_set(b, c))
                        EXPECT_EQ(compose(g, f).is_fibration(), f.is_fibration() && g.is_fibration());
}

TEST(CdCategory, FactorizationRecomposes) {
    for (auto& f : morphisms_from(corpus2())) {
        Factorization fa = factorize(f);
        EXPECT_TRUE(fa.cof.is_cofibration());
        EXPECT_TRUE(fa.fib.is_fibration());
        EXPECT_EQ(compose(fa.fib, fa.cof), f);
        if (f.is_fibration()) EXPECT_TRUE(fa.cof.is_iso());
        if (f.is_cofibration()) EXPECT_TRUE(fa.fib.is_iso());
    }
    FinMod z8 = mod1(8);
    CdMorphism f = morphism_from_map(z8, mod1(2), Submodule::generated(z8, {{4}}), Submodule::generated(z8, {{2}}),
                                     [](const Element& x) { return Element{x[0] / 2 % 2}; });
    Factorization fa = factorize(f);
    EXPECT_EQ(fa.cof.tgt().factors(), (Vec{4}));
    EXPECT_EQ(compose(fa.fib, fa.cof), f);
}

TEST(CdCategory, RelativeAutomorphisms) {
    CdMorphism f = reduction(15, 3);
    EXPECT_EQ(relative_aut(f).size(), 4u);
    EXPECT_EQ(relative_aut(identity_morphism(mod2({2, 4}))).size(), 1u);
    FinMod v = mod2({2, 2});
    IMat pr(1, 2);
    pr(0, 0) = 1;
    CdMorphism p = fibration_from_surjection(ModHom(v, mod2({2}), pr));
    EXPECT_EQ(relative_aut(p).size(), 2u);
    for (i64 n = 1; n <= 24; ++n)
        for (i64 n2 : divisors(n)) {
            CdMorphism g = reduction(n, n2);
            i64 ker = 0;
            for (i64 u = 0; u < n; ++u) ker += gcd(u, n) == 1 && u % n2 == 1 % n2;
            EXPECT_EQ(static_cast<i64>(relative_aut(g).size()), ker);
        }
    // each element is a genuine automorphism over the target
    for (auto& s : relative_aut(p)) EXPECT_EQ(compose(p, iso_morphism(s)), p);
}

TEST(CdCategory, GaloisCoverExamples) {
    FinMod v = mod2({2, 2});
    GaloisCover id = galois_cover_for(identity_morphism(v));
    EXPECT_EQ(id.m, v);
    EXPECT_TRUE(is_galois(id.h));

    CdMorphism f = fibration_from_surjection(ModHom(mod1(4), mod1(2), IMat::diag({1})));
    GaloisCover c = galois_cover_for(f);
    EXPECT_EQ(8 % c.m.exponent(), 0);
    CdMorphism fh = compose(f, c.h);
    EXPECT_TRUE(is_galois(fh));
    i64 ker = 0;
    for (i64 u = 0; u < c.m.exponent(); ++u) ker += gcd(u, c.m.exponent()) == 1 && u % 2 == 1;
    EXPECT_EQ(static_cast<i64>(relative_aut(fh).size()), ker);

    IMat pr(1, 2);
    pr(0, 0) = 1;
    CdMorphism p = fibration_from_surjection(ModHom(v, mod2({2}), pr));
    GaloisCover cp = galois_cover_for(p);
    EXPECT_TRUE(is_galois(compose(p, cp.h)));
}

TEST(CdCategory, CoversOfEveryCorpusMorphismAreGalois) {
    for (auto& f : morphisms_from(corpus2())) {
        GaloisCover c = galois_cover_for(f);
        EXPECT_TRUE(is_galois(compose(f, c.h))) << f.str();
    }
}

TEST(CdCategory, DegreeExamples) {
    EXPECT_EQ(degree(identity_morphism(mod2({2, 4}))), 1);
    EXPECT_EQ(degree(reduction(15, 3)), 4);
    IMat pr(1, 2);
    pr(0, 0) = 1;
    EXPECT_EQ(degree(fibration_from_surjection(ModHom(mod2({2, 2}), mod2({2}), pr))), 2);
}

TEST(CdCategory, LiftsMatchHomSetFilter) {
    // brute-force fiber: filter all of Hom(M, N) by composition
    for (auto& f : morphisms_from({mod2({2}), mod2({4}), mod2({2, 2}), FinMod::zero(2)})) {
        GaloisCover cov = galois_cover_for(f);
        CdMorphism c = compose(f, cov.h);
        std::vector<CdMorphism> brute;
        for (auto& h : hom_set(cov.m, f.src()))
            if (compose(f, h) == c) brute.push_back(h);
        auto fast = lifts_through(f, c);
        EXPECT_EQ(fast.size(), brute.size()) << f.str();
        for (auto& h : fast) EXPECT_NE(std::find(brute.begin(), brute.end(), h), brute.end());
    }
}

TEST(CdCategory, DegreeMatchesAutomorphismRatio) {
    for (auto& f : morphisms_from(corpus2())) {
        GaloisCover cov = galois_cover_for(f);
        if (gl_order(2, cov.m.exponent()) > 100000) continue;
        CdMorphism c = compose(f, cov.h);
        i64 num = static_cast<i64>(relative_aut(c).size());
        i64 den = static_cast<i64>(relative_aut(cov.h).size());
        EXPECT_EQ(num % den, 0);
        EXPECT_EQ(degree(f), num / den) << f.str();
    }
}

TEST(CdCategory, DegreeIsMultiplicative) {
    auto objs = std::vector<FinMod>{mod2({2, 4}), mod2({4}), mod2({2, 2}), mod2({2}), FinMod::zero(2)};
    for (auto& a : objs)
        for (auto& b : objs)
            for (auto& c : objs) {
                auto fs = hom_set(a, b), gs = hom_set(b, c);
                for (std::size_t i = 0; i < fs.size(); i += 3)
                    for (std::size_t j = 0; j < gs.size(); j += 3)
                        EXPECT_EQ(degree(compose(gs[j], fs[i])), degree(fs[i]) * degree(gs[j]));
            }
}

TEST(CdCategory, RankOneMorphismsAreGalois) {
    for (i64 n : {1, 2, 4, 6, 8, 9, 12})
        for (i64 n2 : divisors(n))
            for (auto& f : hom_set(mod1(n), mod1(n2))) EXPECT_TRUE(is_galois(f)) << f.str();
}

TEST(CdCategory, GaloisMeansSimplyTransitive) {
    for (auto& f : morphisms_from(corpus2())) {
        if (!is_galois(f)) continue;
        EXPECT_EQ(static_cast<i64>(relative_aut(f).size()), degree(f));
    }
    IMat pr(1, 2);
    pr(0, 0) = 1;
    EXPECT_TRUE(is_galois(fibration_from_surjection(ModHom(mod2({2, 2}), mod2({2}), pr))));
}

TEST(CdCategory, OrthogonalAgainstPairingOracle) {
    for (auto& n : corpus2())
        for (auto& s : enumerate_submodules(n)) {
            Submodule o = orthogonal(s);
            for (auto& y : n.elements()) {
                bool perp = true;
                for (auto& x : s.elements()) {
                    // sum x_i y_i / n_i integral
                    i64 e = n.exponent(), acc = 0;
                    for (int i = 0; i < n.k(); ++i) acc += x[i] * y[i] * (e / n.factors()[i]);
                    if (acc % e != 0) perp = false;
                }
                EXPECT_EQ(o.contains(y), perp);
            }
            EXPECT_EQ(s.order() * o.order(), n.order());
        }
}

TEST(CdCategory, DualityExamplesAndInvolution) {
    FinMod z4 = mod1(4);
    EXPECT_EQ(dualize(identity_morphism(z4)), identity_morphism(z4));
    CdMorphism cof = morphism_from_map(z4, mod1(2), Submodule::zero(z4), Submodule::generated(z4, {{2}}),
                                       [](const Element& x) { return Element{x[0] / 2}; });
    CdMorphism d = dualize(cof);
    EXPECT_TRUE(d.is_fibration());
    EXPECT_EQ(d.inner(), Submodule::generated(z4, {{2}}));
    for (auto& f : morphisms_from(corpus2())) {
        CdMorphism df = dualize(f);
        EXPECT_EQ(df.is_fibration(), f.is_cofibration());
        EXPECT_EQ(df.is_cofibration(), f.is_fibration());
        EXPECT_EQ(dualize(df), f) << f.str();
    }
}

TEST(CdCategory, DualityIsFunctorial) {
    auto objs = std::vector<FinMod>{mod2({2, 4}), mod2({4}), mod2({2, 2}), mod2({2}), FinMod::zero(2)};
    for (auto& a : objs)
        for (auto& b : objs)
            for (auto& c : objs) {
                auto fs = hom_set(a, b), gs = hom_set(b, c);
                for (std::size_t i = 0; i < fs.size(); i += 2)
                    for (std::size_t j = 0; j < gs.size(); j += 2)
                        EXPECT_EQ(dualize(compose(gs[j], fs[i])), compose(dualize(gs[j]), dualize(fs[i])));
            }
}
