#include "esys/sheaf_engine.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

namespace esys {

namespace {

// Index maps on U_L = (Z/L)^d.
struct LevelSpace {
    FinMod u;
    i64 elems;
    LevelSpace(i64 level, int d) : u(FinMod::free(level, d)), elems(u.order()) {}
};

std::vector<i64> matrix_perm(const LevelSpace& sp, const IMat& t) {
    std::vector<i64> out(sp.elems);
    if (sp.u.k() == 0) return out;
    for (i64 i = 0; i < sp.elems; ++i) out[i] = sp.u.index(sp.u.reduce(t * sp.u.element(i)));
    return out;
}

// Applies an element map to every coordinate of a tuple index.
i64 map_tuple(i64 t, int r, i64 elems_in, i64 elems_out, const std::vector<i64>& map) {
    i64 out = 0, stride = 1;
    for (int k = 0; k < r; ++k) {
        i64 x = map[t % elems_in];
        if (x < 0) return -1;
        out += x * stride;
        t /= elems_in;
        stride *= elems_out;
    }
    return out;
}

std::vector<i64> permute(const std::vector<i64>& v, int r, i64 elems, const std::vector<i64>& perm) {
    // result(t) = v(perm(t))
    std::vector<i64> out(v.size());
    for (i64 t = 0; t < static_cast<i64>(v.size()); ++t) out[t] = v[map_tuple(t, r, elems, elems, perm)];
    return out;
}

using GroupKey = std::tuple<Vec, int, std::vector<IMat>, i64>;

const std::vector<IMat>& cached_level_group(const Component& c, i64 level) {
    static std::mutex mu;
    static std::map<GroupKey, std::vector<IMat>> cache;
    GroupKey key{c.obj.factors(), c.rank_bound(), c.group, level};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto g = level_group(c, level);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(g)).first->second;
}

i64 level_group_order(const Component& c, i64 level) {
    return static_cast<i64>(cached_level_group(c, level).size());
}

// A generating subset of the level group.
const std::vector<IMat>& level_generators(const Component& c, i64 level) {
    static std::mutex mu;
    static std::map<GroupKey, std::vector<IMat>> cache;
    GroupKey key{c.obj.factors(), c.rank_bound(), c.group, level};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const auto& g = cached_level_group(c, level);
    std::vector<IMat> gens;
    std::set<IMat> closure;
    if (!g.empty()) closure.insert(g.front().rows() == 0 ? g.front() : IMat::identity(c.rank_bound()));
    for (auto& t : g) {
        if (closure.count(t)) continue;
        gens.push_back(t);
        std::vector<IMat> frontier(closure.begin(), closure.end());
        while (!frontier.empty()) {
            IMat x = frontier.back();
            frontier.pop_back();
            for (auto& s : gens) {
                IMat y = mat_mul_mod(s, x, level);
                if (closure.insert(y).second) frontier.push_back(y);
            }
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(gens)).first->second;
}

void check_piece_shape(const Piece& p, int d, int r) {
    if (static_cast<i64>(p.values.size()) != tuple_count(p.level, d, r))
        throw std::invalid_argument("section piece has the wrong number of entries");
}

void check_same_shape(const LevelSection& a, const LevelSection& b) {
    if (a.degree != b.degree || a.pieces.size() != b.pieces.size() || a.target.size() != b.target.size())
        throw std::invalid_argument("sections have different targets or degrees");
    for (std::size_t i = 0; i < a.target.size(); ++i) {
        const Component& x = a.target.comps[i];
        const Component& y = b.target.comps[i];
        if (!(x.obj == y.obj) || x.group != y.group) throw std::invalid_argument("sections have different targets");
    }
}

bool piece_invariant(const Piece& p, const Component& c, int r) {
    const int d = c.rank_bound();
    LevelSpace sp(p.level, d);
    for (auto& t : level_generators(c, p.level)) {
        auto perm = matrix_perm(sp, t);
        for (i64 i = 0; i < static_cast<i64>(p.values.size()); ++i)
            if (p.values[map_tuple(i, r, sp.elems, sp.elems, perm)] != p.values[i]) return false;
    }
    return true;
}

Piece coarsen_piece(const Piece& p, const Component& c, int r) {
    const int d = c.rank_bound();
    const i64 e = c.obj.exponent();
    LevelSpace fine(p.level, d);
    for (i64 m0 : divisors(p.level)) {
        if (m0 % e != 0) continue;
        if (m0 == p.level) break;
        LevelSpace coarse(m0, d);
        std::vector<i64> red(fine.elems);
        for (i64 i = 0; i < fine.elems; ++i) red[i] = coarse.u.index(coarse.u.reduce(fine.u.element(i)));
        std::vector<i64> out(tuple_count(m0, d, r), 0);
        std::vector<char> seen(out.size(), 0);
        bool ok = true;
        for (i64 t = 0; t < static_cast<i64>(p.values.size()) && ok; ++t) {
            i64 t0 = map_tuple(t, r, fine.elems, coarse.elems, red);
            if (!seen[t0]) {
                seen[t0] = 1;
                out[t0] = p.values[t];
            } else if (out[t0] != p.values[t]) {
                ok = false;
            }
        }
        if (ok) return Piece{m0, std::move(out)};
    }
    return p;
}

}  // namespace

int LevelSection::rank_bound() const { return target.comps.empty() ? 0 : target.comps[0].rank_bound(); }

i64 tuple_count(i64 level, int d, int r) {
    i64 elems = FinMod::free(level, d).order();
    i64 n = 1;
    for (int k = 0; k < r; ++k) {
        n = mul_checked(n, elems);
        if (n > bounds().vector_entries) throw BoundError("section vector exceeds the entry bound");
    }
    return n;
}

i64 tuple_index(i64 level, const std::vector<Element>& tuple) {
    if (tuple.empty()) return 0;
    const int d = static_cast<int>(tuple[0].size());
    FinMod u = FinMod::free(level, d);
    i64 out = 0, stride = 1;
    for (auto& y : tuple) {
        out += u.index(u.reduce(y)) * stride;
        stride *= u.order();
    }
    return out;
}

std::vector<Element> tuple_at(i64 level, int d, int r, i64 idx) {
    FinMod u = FinMod::free(level, d);
    std::vector<Element> out;
    for (int k = 0; k < r; ++k) {
        Element x = u.element(idx % u.order());
        if (u.k() == 0) x = Element(d, 0);
        out.push_back(x);
        idx /= u.order();
    }
    return out;
}

LevelSection zero_section(const QObj& x, int degree) {
    LevelSection s{x, degree, {}};
    for (auto& c : x.comps) {
        i64 l = c.obj.exponent();
        s.pieces.push_back(Piece{l, std::vector<i64>(tuple_count(l, c.rank_bound(), degree), 0)});
    }
    return s;
}

LevelSection constant_section(const QObj& x, i64 c) {
    LevelSection s = zero_section(x, 0);
    for (auto& p : s.pieces) p.values[0] = c;
    return s;
}

LevelSection make_section(const QObj& x, int degree, std::vector<Piece> pieces) {
    if (pieces.size() != x.size()) throw std::invalid_argument("make_section: one piece per component required");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Component& c = x.comps[i];
        if (pieces[i].level % c.obj.exponent() != 0)
            throw std::invalid_argument("make_section: level must be a multiple of the exponent");
        check_piece_shape(pieces[i], c.rank_bound(), degree);
        if (!piece_invariant(pieces[i], c, degree)) throw std::invalid_argument("make_section: vector is not invariant");
    }
    return LevelSection{x, degree, std::move(pieces)};
}

LevelSection bs_elem(const FinMod& n, const Element& b, bool punctured) {
    Element bb = n.reduce(b);
    if (punctured && n.is_zero(bb)) throw std::invalid_argument("bs_elem: punctured section needs b != 0");
    const i64 l = n.exponent();
    ModHom stdn = std_surjection(n, l);
    LevelSpace sp(l, n.rank_bound());
    Piece p{l, std::vector<i64>(sp.elems, 0)};
    for (i64 i = 0; i < sp.elems; ++i)
        if (stdn.apply(sp.u.element(i)) == bb) p.values[i] = 1;
    return LevelSection{QObj::representable(n), 1, {p}};
}

Piece refine_piece(const Piece& p, int d, int r, i64 level) {
    if (level % p.level != 0) throw std::invalid_argument("refine: level must be a multiple");
    if (level == p.level) return p;
    LevelSpace fine(level, d), coarse(p.level, d);
    std::vector<i64> red(fine.elems);
    for (i64 i = 0; i < fine.elems; ++i) red[i] = coarse.u.index(coarse.u.reduce(fine.u.element(i)));
    Piece out{level, std::vector<i64>(tuple_count(level, d, r))};
    for (i64 t = 0; t < static_cast<i64>(out.values.size()); ++t)
        out.values[t] = p.values[map_tuple(t, r, fine.elems, coarse.elems, red)];
    return out;
}

LevelSection refine(const LevelSection& s, const std::vector<i64>& levels) {
    LevelSection out = s;
    for (std::size_t i = 0; i < s.pieces.size(); ++i)
        out.pieces[i] = refine_piece(s.pieces[i], s.target.comps[i].rank_bound(), s.degree, levels[i]);
    return out;
}

LevelSection coarsen(const LevelSection& s) {
    LevelSection out = s;
    for (std::size_t i = 0; i < s.pieces.size(); ++i) out.pieces[i] = coarsen_piece(s.pieces[i], s.target.comps[i], s.degree);
    return out;
}

namespace {

// Refines both sections to common levels.
std::pair<LevelSection, LevelSection> align(const LevelSection& a, const LevelSection& b) {
    check_same_shape(a, b);
    std::vector<i64> levels;
    for (std::size_t i = 0; i < a.pieces.size(); ++i) levels.push_back(lcm(a.pieces[i].level, b.pieces[i].level));
    return {refine(a, levels), refine(b, levels)};
}

}  // namespace

LevelSection add(const LevelSection& a, const LevelSection& b) {
    auto [x, y] = align(a, b);
    for (std::size_t i = 0; i < x.pieces.size(); ++i)
        for (std::size_t t = 0; t < x.pieces[i].values.size(); ++t)
            x.pieces[i].values[t] = add_checked(x.pieces[i].values[t], y.pieces[i].values[t]);
    return coarsen(x);
}

LevelSection scale(const LevelSection& a, i64 c) {
    LevelSection x = a;
    for (auto& p : x.pieces)
        for (auto& v : p.values) v = mul_checked(v, c);
    return coarsen(x);
}

LevelSection divide_exact(const LevelSection& a, i64 c) {
    if (c == 0) throw std::domain_error("divide_exact: division by zero");
    LevelSection x = a;
    for (auto& p : x.pieces)
        for (auto& v : p.values) {
            if (v % c != 0) throw std::domain_error("divide_exact: entry not divisible");
            v /= c;
        }
    return x;
}

bool equal_sections(const LevelSection& a, const LevelSection& b) {
    auto [x, y] = align(a, b);
    for (std::size_t i = 0; i < x.pieces.size(); ++i)
        if (x.pieces[i].values != y.pieces[i].values) return false;
    return true;
}

// ---------------------------------------------------------------- pullback

LevelSection pullback(const LevelSection& s, const FMorphism& f) {
    if (s.target.size() != f.tgt.size()) throw std::invalid_argument("pullback: endpoint mismatch");
    for (std::size_t j = 0; j < f.tgt.size(); ++j)
        if (!(s.target.comps[j].obj == f.tgt.comps[j].obj) || s.target.comps[j].group != f.tgt.comps[j].group)
            throw std::invalid_argument("pullback: endpoint mismatch");
    const int r = s.degree;
    LevelSection out{f.src, r, {}};
    for (std::size_t i = 0; i < f.reps.size(); ++i) {
        const Piece& p = s.pieces[f.pi0[i]];
        const int d = f.src.comps[i].rank_bound();
        LevelLift lift = lift_to_level(f.reps[i].f, p.level);
        const CdMorphism& gt = lift.gt;
        LevelSpace src(lift.level, d), tgt(p.level, d);
        std::vector<i64> img(src.elems, -1);
        for (i64 x = 0; x < src.elems; ++x) {
            Element e = src.u.element(x);
            if (gt.outer().contains(e)) img[x] = tgt.u.index(gt.eval(e));
        }
        Piece q{lift.level, std::vector<i64>(tuple_count(lift.level, d, r), 0)};
        for (i64 t = 0; t < static_cast<i64>(q.values.size()); ++t) {
            i64 t2 = map_tuple(t, r, src.elems, tgt.elems, img);
            if (t2 >= 0) q.values[t] = p.values[t2];
        }
        out.pieces.push_back(coarsen_piece(q, f.src.comps[i], r));
    }
    return out;
}

LevelSection pullback(const LevelSection& s, const CdMorphism& f) { return pullback(s, from_cd(f)); }

// ---------------------------------------------------------------- transfer

// For a component fibration with representative f' : U_m ->> Y and a
// section y over (X, A):
//   q_B^* f_* y = (1 / (|A| |K_X|)) sum_{S in G_B} u o S,   u = y~ o T0,
// where y~ is y at level L = lcm(level, m), T0 satisfies f' o T0 = std_Y,
// G_B is the level group of (Y, B) and K_X that of the representable X.
LevelSection transfer(const LevelSection& s, const FMorphism& f) {
    if (s.target.size() != f.src.size()) throw std::invalid_argument("transfer: endpoint mismatch");
    if (!is_fibration(f)) throw std::invalid_argument("transfer: morphism is not a fibration on every component");
    const int r = s.degree;
    LevelSection out = zero_section(f.tgt, r);
    for (std::size_t i = 0; i < f.reps.size(); ++i) {
        const Component& xa = f.src.comps[i];
        const Component& yb = f.tgt.comps[f.pi0[i]];
        const int d = xa.rank_bound();
        const i64 lv = lcm(s.pieces[i].level, f.reps[i].level);
        Piece y = refine_piece(s.pieces[i], d, r, lv);
        Rep rep = refine_rep(f.reps[i], lv);
        LevelSpace sp(lv, d);
        std::vector<i64> u = y.values;
        if (sp.u.k() > 0) {
            IMat phi(yb.obj.k(), d);
            for (int j = 0; j < d; ++j) {
                Element e(d, 0);
                e[j] = 1;
                phi.set_column(j, rep.f.eval(e));
            }
            IMat t = lift_surjection(ModHom(sp.u, yb.obj, phi));
            u = permute(y.values, r, sp.elems, matrix_perm(sp, mat_inv_mod(t, lv)));
        }
        // sum over S in G_B of u o S, computed orbit by orbit:
        // |G_B| / |orbit| times the orbit sum of u
        const i64 den = mul_checked(static_cast<i64>(xa.group.size()), level_group_order(Component::representable(xa.obj), lv));
        const i64 gsize = level_group_order(yb, lv);
        std::vector<std::vector<i64>> perms;
        for (auto& g : level_generators(yb, lv)) perms.push_back(matrix_perm(sp, g));
        Piece w{lv, std::vector<i64>(u.size(), 0)};
        std::vector<char> seen(u.size(), 0);
        std::vector<i64> orbit;
        for (i64 x0 = 0; x0 < static_cast<i64>(u.size()); ++x0) {
            if (u[x0] == 0 || seen[x0]) continue;
            orbit.assign(1, x0);
            seen[x0] = 1;
            i64 total = 0;
            for (std::size_t k = 0; k < orbit.size(); ++k) {
                total = add_checked(total, u[orbit[k]]);
                for (auto& perm : perms) {
                    i64 tx = map_tuple(orbit[k], r, sp.elems, sp.elems, perm);
                    if (!seen[tx]) {
                        seen[tx] = 1;
                        orbit.push_back(tx);
                    }
                }
            }
            i64 num = mul_checked(total, gsize);
            i64 div = mul_checked(static_cast<i64>(orbit.size()), den);
            if (num % div != 0) throw std::logic_error("transfer: non-integral result");
            for (auto x : orbit) w.values[x] = num / div;
        }
        LevelSection part = zero_section(f.tgt, r);
        part.pieces[f.pi0[i]] = w;
        out = add(out, part);
    }
    return coarsen(out);
}

LevelSection transfer(const LevelSection& s, const CdMorphism& f) { return transfer(s, from_cd(f)); }

// ---------------------------------------------------------------- product

LevelSection product(const std::vector<LevelSection>& ss) {
    if (ss.empty()) throw std::invalid_argument("product: empty sequence");
    LevelSection acc = ss[0];
    for (std::size_t n = 1; n < ss.size(); ++n) {
        const LevelSection& b = ss[n];
        LevelSection shape = b;
        shape.degree = acc.degree;
        check_same_shape(acc, shape);
        LevelSection out{acc.target, acc.degree + b.degree, {}};
        for (std::size_t i = 0; i < acc.pieces.size(); ++i) {
            const int d = acc.target.comps[i].rank_bound();
            i64 l = lcm(acc.pieces[i].level, b.pieces[i].level);
            Piece pa = refine_piece(acc.pieces[i], d, acc.degree, l);
            Piece pb = refine_piece(b.pieces[i], d, b.degree, l);
            Piece q{l, std::vector<i64>(tuple_count(l, d, out.degree), 0)};
            const i64 na = static_cast<i64>(pa.values.size());
            for (i64 x = 0; x < na; ++x) {
                if (pa.values[x] == 0) continue;
                for (i64 y = 0; y < static_cast<i64>(pb.values.size()); ++y)
                    if (pb.values[y] != 0) q.values[x + y * na] = mul_checked(pa.values[x], pb.values[y]);
            }
            out.pieces.push_back(coarsen_piece(q, acc.target.comps[i], out.degree));
        }
        acc = std::move(out);
    }
    return acc;
}

// ---------------------------------------------------------------- predicates

bool is_invariant(const LevelSection& s) {
    for (std::size_t i = 0; i < s.pieces.size(); ++i)
        if (!piece_invariant(s.pieces[i], s.target.comps[i], s.degree)) return false;
    return true;
}

bool is_punctured(const LevelSection& s) {
    for (std::size_t i = 0; i < s.pieces.size(); ++i) {
        const Component& c = s.target.comps[i];
        const Piece& p = s.pieces[i];
        LevelSpace sp(p.level, c.rank_bound());
        ModHom stdn = std_surjection(c.obj, p.level);
        std::vector<char> to_zero(sp.elems);
        for (i64 x = 0; x < sp.elems; ++x) to_zero[x] = c.obj.is_zero(stdn.apply(sp.u.element(x)));
        for (i64 t = 0; t < static_cast<i64>(p.values.size()); ++t) {
            if (p.values[t] == 0) continue;
            i64 rest = t;
            for (int k = 0; k < s.degree; ++k) {
                if (to_zero[rest % sp.elems]) return false;
                rest /= sp.elems;
            }
        }
    }
    return true;
}

bool belongs_to(const LevelSection& s, const SheafSpec& spec) {
    switch (spec.kind) {
        case SheafKind::BS: return s.degree == 1;
        case SheafKind::BS_star: return s.degree == 1 && is_punctured(s);
        case SheafKind::GBS: return s.degree == spec.degree;
    }
    return false;
}

std::string dump(const LevelSection& s) {
    LevelSection c = coarsen(s);
    std::ostringstream os;
    os << "esys-section/1\n";
    os << "degree " << c.degree << "\n";
    os << "components " << c.pieces.size() << "\n";
    for (std::size_t i = 0; i < c.pieces.size(); ++i) {
        const Component& comp = c.target.comps[i];
        const Piece& p = c.pieces[i];
        const int d = comp.rank_bound();
        os << "component " << i << " object " << comp.obj.str() << " group " << comp.group.size() << " level " << p.level
           << "\n";
        for (i64 t = 0; t < static_cast<i64>(p.values.size()); ++t) {
            if (p.values[t] == 0) continue;
            for (auto& y : tuple_at(p.level, d, c.degree, t)) {
                os << "(";
                for (int j = 0; j < d; ++j) os << (j ? "," : "") << y[j];
                os << ")";
            }
            os << " " << p.values[t] << "\n";
        }
    }
    os << "end\n";
    return os.str();
}

// ---------------------------------------------------------------- descent

std::optional<LevelSection> descend(const LevelSection& s, const FMorphism& c) {
    if (c.reps.size() != 1 || c.tgt.size() != 1 || s.target.size() != 1)
        throw std::invalid_argument("descend: single-component covering expected");
    if (!is_fibration(c)) throw std::invalid_argument("descend: covering must be a fibration");
    const Component& yb = c.tgt.comps[0];
    const int d = yb.rank_bound(), r = s.degree;
    const i64 lv = lcm(s.pieces[0].level, c.reps[0].level);
    Piece y = refine_piece(s.pieces[0], d, r, lv);
    Rep rep = refine_rep(c.reps[0], lv);
    LevelSpace sp(lv, d);
    Piece t = y;
    if (sp.u.k() > 0) {
        IMat phi(yb.obj.k(), d);
        for (int j = 0; j < d; ++j) {
            Element e(d, 0);
            e[j] = 1;
            phi.set_column(j, rep.f.eval(e));
        }
        // t(x) = y(T^{-1} x) where std_Y o T = f'
        IMat tm = lift_surjection(ModHom(sp.u, yb.obj, phi));
        t.values = permute(y.values, r, sp.elems, matrix_perm(sp, mat_inv_mod(tm, lv)));
    }
    if (!piece_invariant(t, yb, r)) return std::nullopt;
    LevelSection out{c.tgt, r, {coarsen_piece(t, yb, r)}};
    if (!equal_sections(pullback(out, c), s)) throw std::logic_error("descend: pullback of the descended section differs");
    return out;
}

bool presheaf_descends(const CdMorphism& c, const std::vector<i64>& values, int r) {
    if (!c.is_fibration()) throw std::invalid_argument("presheaf_descends: fibration expected");
    const FinMod& z = c.src();
    const FinMod& x = c.tgt();
    std::vector<i64> img(z.order());
    for (i64 i = 0; i < z.order(); ++i) img[i] = x.index(c.eval(z.element(i)));
    i64 total = 1, ttotal = 1;
    for (int k = 0; k < r; ++k) {
        total = mul_checked(total, z.order());
        ttotal = mul_checked(ttotal, x.order());
    }
    if (static_cast<i64>(values.size()) != total) throw std::invalid_argument("presheaf_descends: wrong vector size");
    std::vector<i64> seen(ttotal, 0);
    std::vector<char> set(ttotal, 0);
    for (i64 t = 0; t < total; ++t) {
        i64 t2 = map_tuple(t, r, z.order(), x.order(), img);
        if (!set[t2]) {
            set[t2] = 1;
            seen[t2] = values[t];
        } else if (seen[t2] != values[t]) {
            return false;
        }
    }
    return true;
}

}  // namespace esys
