#include "esys/fcat.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace esys {

IMat mat_mul_mod(const IMat& a, const IMat& b, i64 m) {
    IMat r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            i64 acc = 0;
            for (int t = 0; t < a.cols(); ++t) acc = mod(acc + mulmod(a(i, t), b(t, j), m), m);
            r(i, j) = acc;
        }
    return r;
}

IMat mat_inv_mod(const IMat& a, i64 m) {
    i64 di = inv_mod(det(a), m);
    IMat adj = adjugate(a);
    for (int i = 0; i < adj.rows(); ++i)
        for (int j = 0; j < adj.cols(); ++j) adj(i, j) = mulmod(adj(i, j), di, m);
    return adj;
}

const std::vector<IMat>& gl_group(int d, i64 m) {
    static std::mutex mu;
    static std::map<std::pair<int, i64>, std::vector<IMat>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({d, m});
        if (it != cache.end()) return it->second;
    }
    std::vector<IMat> out;
    for (auto& a : aut_group(FinMod::free(m, d))) out.push_back(a.matrix());
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_pair(d, m), std::move(out)).first->second;
}

std::vector<IMat> close_group(const FinMod& n, std::vector<IMat> gens) {
    std::set<IMat> seen{IMat::identity(n.k())};
    std::vector<IMat> frontier{IMat::identity(n.k())};
    while (!frontier.empty()) {
        IMat x = frontier.back();
        frontier.pop_back();
        for (auto& g : gens) {
            IMat y = ModHom(n, n, g).after(ModHom(n, n, x)).matrix();
            if (seen.insert(y).second) frontier.push_back(y);
        }
    }
    return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------- objects

namespace {

CdMorphism to_zero(const FinMod& n) {
    FinMod z = FinMod::zero(n.rank_bound());
    return fibration_from_surjection(ModHom(n, z, IMat(0, n.k())));
}

ModHom as_hom(const FinMod& n, const IMat& a) { return ModHom(n, n, a); }

// Decides whether h o z(T) lies in the orbit group . h, where group acts on
// the target of h. Inner/outer must be T-stable; the induced automorphism
// of the target is read off on preimages of the standard generators.
class OrbitTester {
public:
    explicit OrbitTester(const CdMorphism& h) : h_(h) {
        inner_ = h.inner().generators();
        outer_ = h.outer().generators();
        ModHom a(h.quotient().module(), h.tgt(), h.alpha());
        ModHom ainv = a.inverse();
        for (int l = 0; l < h.tgt().k(); ++l) {
            Element e(h.tgt().k(), 0);
            e[l] = 1;
            lifts_.push_back(h.quotient().lift_element(ainv.apply(e)));
        }
    }

    // Automorphism k of tgt with h o z(T) == z(k) o h, if one exists.
    std::optional<IMat> twist(const IMat& t) const {
        const FinMod& w = h_.src();
        auto apply = [&](const Element& x) { return w.reduce(t * x); };
        for (auto& x : inner_)
            if (!h_.inner().contains(apply(x))) return std::nullopt;
        for (auto& x : outer_)
            if (!h_.outer().contains(apply(x))) return std::nullopt;
        IMat k(h_.tgt().k(), h_.tgt().k());
        for (int l = 0; l < h_.tgt().k(); ++l) k.set_column(l, h_.eval(apply(lifts_[l])));
        return k;
    }

    bool in_orbit(const IMat& t, const Component& grp) const {
        auto k = twist(t);
        return k && grp.contains(*k);
    }

private:
    CdMorphism h_;
    std::vector<Element> inner_, outer_, lifts_;
};

// Automorphism k of the common target with b == z(k) o a, if any.
std::optional<IMat> orbit_element(const CdMorphism& a, const CdMorphism& b) {
    if (!(a.inner() == b.inner()) || !(a.outer() == b.outer())) return std::nullopt;
    const FinMod& q = a.quotient().module();
    ModHom ka = ModHom(q, a.tgt(), b.alpha()).after(ModHom(q, a.tgt(), a.alpha()).inverse());
    return ka.matrix();
}

i64 level_of(const FinMod& n) { return n.exponent(); }

}  // namespace

Component::Component(FinMod n, std::vector<IMat> generators, CdMorphism witness_fibration)
    : obj(std::move(n)), group(close_group(obj, std::move(generators))), witness(std::move(witness_fibration)) {
    if (!(witness.src() == obj) || !witness.is_fibration()) throw std::invalid_argument("component: witness must be a fibration from the object");
    for (auto& h : group)
        if (!(compose(witness, iso_morphism(as_hom(obj, h))) == witness))
            throw std::invalid_argument("component: group not contained in the witness automorphisms");
}

Component Component::with_group(const FinMod& n, std::vector<IMat> generators) {
    return Component(n, std::move(generators), to_zero(n));
}

bool Component::contains(const IMat& a) const { return std::binary_search(group.begin(), group.end(), a); }

std::string Component::str() const {
    std::ostringstream os;
    os << "(" << obj.str() << ", |H|=" << group.size() << ")";
    return os.str();
}

std::string QObj::str() const {
    std::string s;
    for (std::size_t i = 0; i < comps.size(); ++i) s += (i ? " + " : "") + comps[i].str();
    return s.empty() ? "empty" : s;
}

std::string FMorphism::str() const {
    std::ostringstream os;
    os << src.str() << " -> " << tgt.str();
    for (std::size_t i = 0; i < reps.size(); ++i) os << "\n  [" << i << "->" << pi0[i] << "] level " << reps[i].level << ": " << reps[i].f.str();
    return os.str();
}

// ---------------------------------------------------------------- morphisms

FMorphism make_fmor(const Component& src, const Component& tgt, Rep rep) {
    if (rep.level % level_of(src.obj) != 0) throw std::invalid_argument("representative level must be a multiple of the source exponent");
    if (!(rep.f.src() == FinMod::free(rep.level, src.rank_bound())) || !(rep.f.tgt() == tgt.obj))
        throw std::invalid_argument("representative endpoints mismatch");
    return FMorphism{QObj::single(src), QObj::single(tgt), {0}, {std::move(rep)}};
}

FMorphism from_cd(const CdMorphism& f) {
    i64 m = level_of(f.src());
    return make_fmor(Component::representable(f.src()), Component::representable(f.tgt()),
                     Rep{m, compose(f, level_fibration(f.src(), m))});
}

FMorphism identity_fmor(const QObj& x) {
    FMorphism f{x, x, {}, {}};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const FinMod& n = x.comps[i].obj;
        f.pi0.push_back(static_cast<int>(i));
        f.reps.push_back(Rep{level_of(n), level_fibration(n, level_of(n))});
    }
    return f;
}

FMorphism quotient_map(const Component& c) {
    const FinMod& n = c.obj;
    return make_fmor(Component::representable(n), c, Rep{level_of(n), level_fibration(n, level_of(n))});
}

Rep refine_rep(const Rep& r, i64 l) {
    if (l % r.level != 0) throw std::invalid_argument("refine_rep: level must be a multiple");
    if (l == r.level) return r;
    const int d = r.f.src().rank_bound();
    return Rep{l, compose(r.f, level_fibration(FinMod::free(r.level, d), l))};
}

std::vector<IMat> level_group(const Component& c, i64 m) {
    const FinMod& n = c.obj;
    const int d = n.rank_bound(), k = n.k();
    if (m % level_of(n) != 0) throw std::invalid_argument("level_group: level must be a multiple of the exponent");
    std::vector<IMat> out;
    for (auto& t : gl_group(d, m)) {
        if (m == 1) {
            out.push_back(t);
            continue;
        }
        bool ok = true;
        IMat h(k, k);
        for (int i = 0; i < k && ok; ++i)
            for (int j = 0; j < d && ok; ++j) {
                i64 v = mod(t(i, j), n.factors()[i]);
                if (j < k) h(i, j) = v;
                else if (v != 0) ok = false;
            }
        if (ok && c.contains(h)) out.push_back(t);
    }
    return out;
}

bool is_valid(const FMorphism& f) {
    for (std::size_t i = 0; i < f.reps.size(); ++i) {
        const Rep& r = f.reps[i];
        const Component& tc = f.tgt.comps[f.pi0[i]];
        OrbitTester tester(r.f);
        for (auto& t : level_group(f.src.comps[i], r.level))
            if (!tester.in_orbit(t, tc)) return false;
    }
    return true;
}

bool fmor_equal(const FMorphism& a, const FMorphism& b) {
    if (a.pi0 != b.pi0 || a.reps.size() != b.reps.size()) return false;
    for (std::size_t i = 0; i < a.reps.size(); ++i) {
        i64 l = lcm(a.reps[i].level, b.reps[i].level);
        Rep ra = refine_rep(a.reps[i], l), rb = refine_rep(b.reps[i], l);
        auto k = orbit_element(ra.f, rb.f);
        if (!k || !a.tgt.comps[a.pi0[i]].contains(*k)) return false;
    }
    return true;
}

LevelLift lift_to_level(const CdMorphism& g, i64 mp) {
    const FinMod& n = g.src();
    const FinMod& n2 = g.tgt();
    const int d = n.rank_bound();
    if (mp % level_of(n2) != 0) throw std::invalid_argument("lift_to_level: level must be a multiple of the target exponent");
    const i64 b = SubQuotient(g.outer(), Submodule::whole(n)).module().exponent();
    const i64 l = lcm(level_of(n), mul_checked(mp, b));
    FinMod u = FinMod::free(l, d), up = FinMod::free(mp, d);
    ModHom stdn = std_surjection(n, l);
    Submodule a2 = stdn.preimage(g.outer());
    std::vector<Element> scaled;
    for (auto& x : a2.generators()) scaled.push_back(u.scale(mp, x));
    Submodule a2m = Submodule::generated(u, scaled);
    SubQuotient q(a2m, a2);
    if (!(q.module() == up)) throw std::logic_error("lift_to_level: subquotient is not free of the requested level");
    if (up.k() == 0) return {l, morphism_from_map(u, up, a2m, a2, [&](const Element&) { return Element{}; })};
    IMat phi(n2.k(), up.k());
    for (int j = 0; j < up.k(); ++j) phi.set_column(j, g.eval(stdn.apply(q.lift(j))));
    IMat t = lift_surjection(ModHom(up, n2, phi));
    CdMorphism gt = morphism_from_map(u, up, a2m, a2, [&](const Element& x) { return up.reduce(t * q.project(x)); });
    return {l, gt};
}

FMorphism compose(const FMorphism& g, const FMorphism& f) {
    if (f.tgt.size() != g.src.size()) throw std::invalid_argument("compose: endpoint mismatch");
    FMorphism out{f.src, g.tgt, {}, {}};
    for (std::size_t i = 0; i < f.reps.size(); ++i) {
        int j = f.pi0[i];
        const Rep& rf = f.reps[i];
        const Rep& rg = g.reps[j];
        LevelLift lift = lift_to_level(rf.f, rg.level);
        out.pi0.push_back(g.pi0[j]);
        out.reps.push_back(Rep{lift.level, compose(rg.f, lift.gt)});
    }
    return out;
}

bool is_fibration(const FMorphism& f) {
    return std::all_of(f.reps.begin(), f.reps.end(), [](const Rep& r) { return r.f.is_fibration(); });
}

// ---------------------------------------------------------------- degrees

namespace {

i64 std_degree(const FinMod& n, i64 m) {
    return static_cast<i64>(level_group(Component::representable(n), m).size());
}

i64 rep_degree(const Rep& r) {
    if (r.f.is_fibration()) return std_degree(r.f.tgt(), r.level);
    return degree(r.f);
}

}  // namespace

std::vector<i64> degree_f(const FMorphism& f) {
    std::vector<i64> out(f.tgt.size(), 0);
    for (std::size_t i = 0; i < f.reps.size(); ++i) {
        const Component& a = f.src.comps[i];
        const Component& b = f.tgt.comps[f.pi0[i]];
        i64 num = mul_checked(rep_degree(f.reps[i]), static_cast<i64>(b.group.size()));
        i64 den = mul_checked(static_cast<i64>(a.group.size()), std_degree(a.obj, f.reps[i].level));
        if (num % den != 0) throw std::logic_error("degree_f: non-integral component degree");
        out[f.pi0[i]] += num / den;
    }
    return out;
}

// ---------------------------------------------------------------- fiber products

namespace {

struct PieceOut {
    Component comp;
    Rep p1, p2;
};

// Components of (X1, A1) x_(Y, B) (X2, A2) for representatives
// r1 : U_M1 -> Y and a fibration r2 : V = U_M2 -> Y. On the cover U_L of X1
// (L deep enough that c = r1 o red lifts through r2) the lifts of B.c form
// one orbit G_V . h0 with G_V = {t : r2 o z(t) in B r2}; components are the
// double cosets K2 \ G_V / tau(K1), where K_i are the level groups of the
// factors and h0 o z(k) = z(tau(k)) o h0.
std::vector<PieceOut> fiber_piece(const Component& x1, const Rep& r1, const Component& x2, const Rep& r2, const Component& y) {
    const int d = y.rank_bound();
    const i64 m2 = r2.level;
    const i64 a = SubQuotient(r1.f.outer(), Submodule::whole(r1.f.src())).module().exponent();
    const i64 l = lcm(r1.level, mul_checked(m2, a));
    FinMod w = FinMod::free(l, d);
    FinMod u2 = FinMod::free(m2, d);
    CdMorphism c = refine_rep(r1, l).f;

    // h0 : U_L -> V with r2 o h0 == c
    const Submodule& c2 = c.outer();
    std::vector<Element> sc;
    for (auto& x : c2.generators()) sc.push_back(w.scale(m2, x));
    Submodule c2m = Submodule::generated(w, sc);
    SubQuotient q(c2m, c2);
    if (!(q.module() == u2)) throw std::logic_error("fiber_product: cover is not deep enough");
    CdMorphism h0;
    if (u2.k() == 0) {
        h0 = morphism_from_map(w, u2, c2m, c2, [](const Element&) { return Element{}; });
    } else {
        IMat chi(y.obj.k(), u2.k()), phi2(y.obj.k(), u2.k());
        for (int j = 0; j < u2.k(); ++j) {
            chi.set_column(j, c.eval(q.lift(j)));
            Element e(u2.k(), 0);
            e[j] = 1;
            phi2.set_column(j, r2.f.eval(e));
        }
        IMat t2 = lift_surjection(ModHom(u2, y.obj, phi2));
        IMat tc = lift_surjection(ModHom(u2, y.obj, chi));
        IMat beta = mat_mul_mod(mat_inv_mod(t2, m2), tc, m2);
        h0 = morphism_from_map(w, u2, c2m, c2, [&](const Element& x) { return u2.reduce(beta * q.project(x)); });
    }
    if (!(compose(r2.f, h0) == c)) throw std::logic_error("fiber_product: lift through the fibration failed");

    OrbitTester over_y(r2.f), lift(h0);
    std::vector<IMat> gv;
    for (auto& t : gl_group(d, m2))
        if (over_y.in_orbit(t, y)) gv.push_back(t);
    const auto k2 = level_group(x2, m2);
    std::set<IMat> k2set(k2.begin(), k2.end());
    const auto k1 = level_group(x1, l);
    std::vector<IMat> tau;
    for (auto& k : k1) {
        auto t = lift.twist(k);
        if (!t) throw std::logic_error("fiber_product: cover automorphism does not descend");
        tau.push_back(u2.k() == 0 ? *t : *t);
    }
    auto mul = [&](const IMat& x, const IMat& y2) { return u2.k() == 0 ? x : mat_mul_mod(x, y2, m2); };
    auto inv = [&](const IMat& x) { return u2.k() == 0 ? x : mat_inv_mod(x, m2); };

    CdMorphism std1 = level_fibration(x1.obj, l);
    CdMorphism std2 = level_fibration(x2.obj, m2);
    std::set<IMat> seen;
    std::vector<PieceOut> out;
    for (auto& t : gv) {
        if (seen.count(t)) continue;
        for (auto& s : k2)
            for (auto& tk : tau) seen.insert(mul(mul(s, t), tk));
        IMat tinv = inv(t);
        std::vector<IMat> at;
        for (std::size_t i = 0; i < k1.size(); ++i)
            if (k2set.count(mul(mul(t, tau[i]), tinv))) at.push_back(k1[i]);
        Component comp = Component::with_group(w, at);
        Rep p1{l, std1};
        Rep p2{l, compose(std2, compose(iso_morphism(ModHom(u2, u2, t)), h0))};
        out.push_back({comp, p1, p2});
    }
    return out;
}

}  // namespace

FiberProduct fiber_product(const FMorphism& f1, const FMorphism& f2) {
    if (!is_fibration(f2)) throw std::invalid_argument("fiber_product: second morphism must be a fibration");
    if (f1.tgt.size() != f2.tgt.size()) throw std::invalid_argument("fiber_product: targets differ");
    FiberProduct fp;
    fp.p1.src = fp.p2.src = QObj{};
    fp.p1.tgt = f1.src;
    fp.p2.tgt = f2.src;
    for (std::size_t i = 0; i < f1.reps.size(); ++i)
        for (std::size_t j = 0; j < f2.reps.size(); ++j) {
            if (f1.pi0[i] != f2.pi0[j]) continue;
            auto pieces = fiber_piece(f1.src.comps[i], f1.reps[i], f2.src.comps[j], f2.reps[j], f1.tgt.comps[f1.pi0[i]]);
            for (auto& pc : pieces) {
                fp.obj.comps.push_back(pc.comp);
                fp.p1.pi0.push_back(static_cast<int>(i));
                fp.p1.reps.push_back(pc.p1);
                fp.p2.pi0.push_back(static_cast<int>(j));
                fp.p2.reps.push_back(pc.p2);
            }
        }
    fp.p1.src = fp.p2.src = fp.obj;
    return fp;
}

// ---------------------------------------------------------------- G-sets

int GSet::index_of(const ModHom& g) const {
    for (std::size_t i = 0; i < group.size(); ++i)
        if (group[i].matrix() == g.matrix()) return static_cast<int>(i);
    return -1;
}

bool GSet::valid() const {
    if (act.size() != group.size() || group.empty()) return false;
    const int n = size();
    for (auto& row : act) {
        if (static_cast<int>(row.size()) != n) return false;
        for (int v : row)
            if (v < 0 || v >= n) return false;
    }
    const FinMod& x = group[0].source();
    int e = index_of(ModHom::identity(x));
    if (e < 0) return false;
    for (int s = 0; s < n; ++s)
        if (act[e][s] != s) return false;
    for (std::size_t a = 0; a < group.size(); ++a)
        for (std::size_t b = 0; b < group.size(); ++b) {
            int ab = index_of(group[a].after(group[b]));
            if (ab < 0) return false;
            for (int s = 0; s < n; ++s)
                if (act[ab][s] != act[a][act[b][s]]) return false;
        }
    return true;
}

std::vector<std::vector<int>> GSet::orbits() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> done(size(), false);
    for (int s = 0; s < size(); ++s) {
        if (done[s]) continue;
        std::set<int> orb;
        for (auto& row : act) orb.insert(row[s]);
        for (int t : orb) done[t] = true;
        out.emplace_back(orb.begin(), orb.end());
    }
    return out;
}

std::vector<int> GSet::stabilizer(int s) const {
    std::vector<int> out;
    for (std::size_t g = 0; g < act.size(); ++g)
        if (act[g][s] == s) out.push_back(static_cast<int>(g));
    return out;
}

GSet translation_gset(const std::vector<ModHom>& group) {
    GSet s{group, {}};
    for (auto& g : group) {
        std::vector<int> row;
        for (auto& h : group) row.push_back(s.index_of(g.after(h)));
        s.act.push_back(row);
    }
    return s;
}

GSet coset_gset(const std::vector<ModHom>& group, const std::vector<ModHom>& sub) {
    // cosets gK as sorted index sets
    GSet tmp{group, {}};
    std::vector<std::set<int>> cosets;
    std::map<int, int> coset_of;
    for (std::size_t g = 0; g < group.size(); ++g) {
        if (coset_of.count(static_cast<int>(g))) continue;
        std::set<int> cs;
        for (auto& k : sub) cs.insert(tmp.index_of(group[g].after(k)));
        for (int x : cs) coset_of[x] = static_cast<int>(cosets.size());
        cosets.push_back(cs);
    }
    GSet s{group, {}};
    for (auto& g : group) {
        std::vector<int> row;
        for (auto& cs : cosets) row.push_back(coset_of.at(tmp.index_of(g.after(group[*cs.begin()]))));
        s.act.push_back(row);
    }
    return s;
}

GSet gset_union(const GSet& a, const GSet& b) {
    GSet s{a.group, {}};
    for (std::size_t g = 0; g < a.group.size(); ++g) {
        std::vector<int> row = a.act[g];
        int gb = b.index_of(a.group[g]);
        for (int v : b.act[gb]) row.push_back(v + a.size());
        s.act.push_back(row);
    }
    return s;
}

// ---------------------------------------------------------------- compact induction

namespace {

Component induced_component(const CdMorphism& c, const GSet& s, int point) {
    std::vector<IMat> stab;
    for (int g : s.stabilizer(point)) stab.push_back(s.group[g].matrix());
    if (c.is_fibration()) return Component(c.src(), stab, c);
    return Component::with_group(c.src(), stab);
}

}  // namespace

CompactInduction compact_induction(const CdMorphism& c, const GSet& s) {
    if (!s.valid()) throw std::invalid_argument("compact_induction: not a valid G-set");
    for (auto& g : s.group)
        if (!(compose(c, iso_morphism(g)) == c)) throw std::invalid_argument("compact_induction: group element not over the target");
    CompactInduction ci;
    ci.component_of_point.assign(s.size(), -1);
    const FinMod& x = c.src();
    const i64 lv = level_of(x);
    Component target = Component::representable(c.tgt());
    ci.structure.tgt = QObj::single(target);
    for (auto& orb : s.orbits()) {
        int idx = static_cast<int>(ci.obj.comps.size());
        ci.obj.comps.push_back(induced_component(c, s, orb[0]));
        ci.orbit_rep.push_back(orb[0]);
        for (int p : orb) ci.component_of_point[p] = idx;
        ci.structure.pi0.push_back(0);
        ci.structure.reps.push_back(Rep{lv, compose(c, level_fibration(x, lv))});
    }
    ci.structure.src = ci.obj;
    return ci;
}

FMorphism induced_map(const CdMorphism& c, const GSet& s, const GSet& t, const std::vector<int>& phi) {
    CompactInduction cs = compact_induction(c, s), ct = compact_induction(c, t);
    for (std::size_t g = 0; g < s.group.size(); ++g) {
        int gt = t.index_of(s.group[g]);
        for (int p = 0; p < s.size(); ++p)
            if (phi[s.act[g][p]] != t.act[gt][phi[p]]) throw std::invalid_argument("induced_map: map is not equivariant");
    }
    const FinMod& x = c.src();
    const i64 lv = level_of(x);
    FMorphism f{cs.obj, ct.obj, {}, {}};
    for (std::size_t i = 0; i < cs.obj.size(); ++i) {
        int img = phi[cs.orbit_rep[i]];
        int j = ct.component_of_point[img];
        int t0 = ct.orbit_rep[j];
        int gi = -1;
        for (std::size_t g = 0; g < t.group.size() && gi < 0; ++g)
            if (t.act[g][t0] == img) gi = static_cast<int>(g);
        f.pi0.push_back(j);
        f.reps.push_back(Rep{lv, compose(iso_morphism(t.group[gi].inverse()), level_fibration(x, lv))});
    }
    return f;
}

}  // namespace esys
