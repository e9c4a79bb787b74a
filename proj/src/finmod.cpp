#include "esys/finmod.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace esys {

Bounds& bounds() {
    static Bounds b;
    return b;
}

// ---------------------------------------------------------------- FinMod

FinMod::FinMod(Vec invariant_factors, int rank_bound) : inv_(std::move(invariant_factors)), d_(rank_bound) {
    if (static_cast<int>(inv_.size()) > d_)
        throw std::invalid_argument("module " + str() + " needs more than " + std::to_string(d_) + " generators");
    for (std::size_t i = 0; i < inv_.size(); ++i) {
        if (inv_[i] < 2) throw std::invalid_argument("invariant factors must be >= 2");
        if (i > 0 && inv_[i] % inv_[i - 1] != 0) throw std::invalid_argument("invariant factors must form a divisibility chain");
        order_ = mul_checked(order_, inv_[i]);
    }
}

FinMod FinMod::cyclic(i64 n, int rank_bound) {
    if (n < 1) throw std::invalid_argument("cyclic order must be positive");
    return n == 1 ? zero(rank_bound) : FinMod({n}, rank_bound);
}

FinMod FinMod::free(i64 m, int d) {
    if (m < 1) throw std::invalid_argument("free module modulus must be positive");
    return m == 1 ? zero(d) : FinMod(Vec(d, m), d);
}

bool FinMod::is_free() const {
    if (inv_.empty()) return true;
    if (k() != d_) return false;
    return inv_.front() == inv_.back();
}

Element FinMod::reduce(const Vec& x) const {
    Element r(k());
    for (int i = 0; i < k(); ++i) r[i] = mod(x[i], inv_[i]);
    return r;
}

bool FinMod::is_zero(const Element& x) const {
    for (int i = 0; i < k(); ++i)
        if (mod(x[i], inv_[i]) != 0) return false;
    return true;
}

i64 FinMod::index(const Element& x) const {
    i64 idx = 0, stride = 1;
    for (int i = 0; i < k(); ++i) {
        idx += mod(x[i], inv_[i]) * stride;
        stride *= inv_[i];
    }
    return idx;
}

Element FinMod::element(i64 idx) const {
    Element x(k());
    for (int i = 0; i < k(); ++i) {
        x[i] = idx % inv_[i];
        idx /= inv_[i];
    }
    return x;
}

Element FinMod::add(const Element& a, const Element& b) const {
    Element r(k());
    for (int i = 0; i < k(); ++i) r[i] = mod(a[i] + b[i], inv_[i]);
    return r;
}

Element FinMod::scale(i64 c, const Element& a) const {
    Element r(k());
    for (int i = 0; i < k(); ++i) r[i] = mulmod(c, a[i], inv_[i]);
    return r;
}

i64 FinMod::element_order(const Element& a) const {
    i64 o = 1;
    for (int i = 0; i < k(); ++i) o = lcm(o, inv_[i] / gcd(inv_[i], a[i]));
    return o;
}

std::vector<Element> FinMod::elements() const {
    if (order_ > bounds().module_elements) throw BoundError("module too large: " + str());
    std::vector<Element> out;
    out.reserve(order_);
    for (i64 i = 0; i < order_; ++i) out.push_back(element(i));
    return out;
}

std::string FinMod::str() const {
    if (inv_.empty()) return "0";
    std::ostringstream os;
    for (int i = 0; i < k(); ++i) os << (i ? "+" : "") << "Z/" << inv_[i];
    return os.str();
}

FinMod snf_present(const IMat& relations, int rank_bound) {
    SnfResult s = snf(relations);
    Vec f;
    if (relations.cols() < relations.rows()) throw std::invalid_argument("infinite module");
    for (i64 x : s.diag) {
        if (x == 0) throw std::invalid_argument("infinite module");
        if (x > 1) f.push_back(x);
    }
    return FinMod(f, rank_bound < 0 ? relations.rows() : rank_bound);
}

// ---------------------------------------------------------------- Submodule

namespace {

IMat relation_matrix(const FinMod& n) { return IMat::diag(n.factors()); }

}  // namespace

Submodule::Submodule(FinMod parent, IMat hnf_basis) : parent_(std::move(parent)), h_(std::move(hnf_basis)) {}

Submodule Submodule::whole(const FinMod& n) { return Submodule(n, IMat::identity(n.k())); }

Submodule Submodule::zero(const FinMod& n) { return Submodule(n, relation_matrix(n)); }

Submodule Submodule::generated(const FinMod& n, const std::vector<Element>& gens) {
    IMat g = IMat::from_columns(n.k(), gens);
    for (int j = 0; j < g.cols(); ++j)
        for (int i = 0; i < n.k(); ++i) g(i, j) = mod(g(i, j), n.factors()[i]);
    return Submodule(n, hnf(g.hcat(relation_matrix(n))).h);
}

i64 Submodule::order() const {
    i64 o = parent_.order();
    for (int i = 0; i < h_.rows(); ++i) o /= h_(i, i);
    return o;
}

bool Submodule::contains(const Element& x) const { return solve_lower(h_, x).has_value(); }

bool Submodule::leq(const Submodule& o) const {
    for (int j = 0; j < h_.cols(); ++j)
        if (!o.contains(h_.column(j))) return false;
    return true;
}

std::vector<Element> Submodule::generators() const {
    std::vector<Element> out;
    for (int j = 0; j < h_.cols(); ++j) {
        Element e = parent_.reduce(h_.column(j));
        if (!parent_.is_zero(e)) out.push_back(e);
    }
    return out;
}

std::vector<Element> Submodule::elements() const {
    std::vector<Element> out;
    for (auto& x : parent_.elements())
        if (contains(x)) out.push_back(x);
    return out;
}

Submodule Submodule::sum(const Submodule& o) const {
    auto g = generators();
    auto g2 = o.generators();
    g.insert(g.end(), g2.begin(), g2.end());
    return generated(parent_, g);
}

std::string Submodule::str() const { return "<" + h_.str() + " in " + parent_.str() + ">"; }

std::vector<Submodule> enumerate_submodules(const FinMod& n) {
    if (n.order() > bounds().module_elements) throw BoundError("module too large: " + n.str());
    const int k = n.k();
    std::vector<Submodule> out;
    IMat h(k, k);
    // Rows are filled top to bottom: pivot first, then the entries left of it.
    std::function<void(int)> by_row = [&](int row) {
        if (row == k) {
            for (int j = 0; j < k; ++j) {
                Vec dj(k, 0);
                dj[j] = n.factors()[j];
                if (!solve_lower(h, dj)) return;
            }
            out.emplace_back(n, h);
            return;
        }
        for (i64 p : divisors(n.factors()[row])) {
            h(row, row) = p;
            std::function<void(int)> fill = [&](int col) {
                if (col == row) {
                    by_row(row + 1);
                    return;
                }
                for (i64 v = 0; v < p; ++v) {
                    h(row, col) = v;
                    fill(col + 1);
                }
                h(row, col) = 0;
            };
            fill(0);
        }
    };
    by_row(0);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- SubQuotient

SubQuotient::SubQuotient(const Submodule& s1, const Submodule& s2) : s1_(s1), s2_(s2) {
    const FinMod& n = s1.parent();
    const int k = n.k();
    IMat c(k, k);
    for (int j = 0; j < k; ++j) {
        auto col = solve_lower(s2.basis(), s1.basis().column(j));
        if (!col) throw std::invalid_argument("subquotient: inner submodule not contained in outer");
        c.set_column(j, *col);
    }
    SnfResult s = snf(c);
    u_ = s.u;
    diag_ = s.diag;
    Vec f;
    for (int i = 0; i < k; ++i)
        if (diag_[i] > 1) {
            keep_.push_back(i);
            f.push_back(diag_[i]);
        }
    q_ = FinMod(f, n.rank_bound());
    for (int i : keep_) {
        Vec e = s.u_inv.column(i);
        lifts_.push_back(n.reduce(s2.basis() * e));
    }
}

Element SubQuotient::project(const Element& x) const {
    auto c = solve_lower(s2_.basis(), x);
    if (!c) throw std::invalid_argument("subquotient: element outside the outer submodule");
    Element out(keep_.size());
    for (std::size_t j = 0; j < keep_.size(); ++j) {
        i64 acc = 0;
        i64 s = diag_[keep_[j]];
        for (int t = 0; t < u_.cols(); ++t) acc = mod(acc + mulmod(u_(keep_[j], t), (*c)[t], s), s);
        out[j] = acc;
    }
    return out;
}

Element SubQuotient::lift_element(const Element& q) const {
    const FinMod& n = s1_.parent();
    Element x = n.zero_element();
    for (std::size_t j = 0; j < lifts_.size(); ++j) x = n.add(x, n.scale(q[j], lifts_[j]));
    return x;
}

// ---------------------------------------------------------------- ModHom

ModHom::ModHom(FinMod source, FinMod target, IMat matrix)
    : src_(std::move(source)), tgt_(std::move(target)), a_(std::move(matrix)) {
    if (a_.rows() != tgt_.k() || a_.cols() != src_.k()) throw std::invalid_argument("hom matrix shape mismatch");
    for (int i = 0; i < a_.rows(); ++i)
        for (int j = 0; j < a_.cols(); ++j) a_(i, j) = mod(a_(i, j), tgt_.factors()[i]);
}

ModHom ModHom::identity(const FinMod& n) { return ModHom(n, n, IMat::identity(n.k())); }

ModHom ModHom::zero(const FinMod& s, const FinMod& t) { return ModHom(s, t, IMat(t.k(), s.k())); }

Element ModHom::apply(const Element& x) const {
    Element y(tgt_.k(), 0);
    for (int i = 0; i < tgt_.k(); ++i) {
        i64 m = tgt_.factors()[i], acc = 0;
        for (int j = 0; j < src_.k(); ++j) acc = mod(acc + mulmod(a_(i, j), x[j], m), m);
        y[i] = acc;
    }
    return y;
}

ModHom ModHom::after(const ModHom& f) const {
    if (!(f.tgt_.factors() == src_.factors())) throw std::invalid_argument("hom composition endpoint mismatch");
    IMat m(tgt_.k(), f.src_.k());
    for (int j = 0; j < f.src_.k(); ++j) m.set_column(j, apply(f.a_.column(j)));
    return ModHom(f.src_, tgt_, m);
}

ModHom ModHom::plus(const ModHom& o) const {
    IMat m(tgt_.k(), src_.k());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = a_(i, j) + o.a_(i, j);
    return ModHom(src_, tgt_, m);
}

bool ModHom::well_defined() const {
    for (int j = 0; j < src_.k(); ++j)
        if (!tgt_.is_zero(tgt_.scale(src_.factors()[j], a_.column(j)))) return false;
    return true;
}

Submodule ModHom::image() const {
    std::vector<Element> g;
    for (int j = 0; j < src_.k(); ++j) g.push_back(a_.column(j));
    return Submodule::generated(tgt_, g);
}

bool ModHom::is_surjective() const { return image().order() == tgt_.order(); }

bool ModHom::is_bijective() const { return src_.order() == tgt_.order() && is_surjective(); }

Submodule ModHom::preimage(const Submodule& s) const {
    const int ks = src_.k(), kt = tgt_.k();
    if (kt == 0) return Submodule::whole(src_);
    IMat big(kt, ks + kt);
    for (int i = 0; i < kt; ++i) {
        for (int j = 0; j < ks; ++j) big(i, j) = a_(i, j);
        for (int j = 0; j < kt; ++j) big(i, ks + j) = -s.basis()(i, j);
    }
    IMat ker = kernel_basis(big);
    std::vector<Element> gens;
    for (int c = 0; c < ker.cols(); ++c) {
        Element x(ks);
        for (int i = 0; i < ks; ++i) x[i] = ker(i, c);
        gens.push_back(src_.reduce(x));
    }
    return Submodule::generated(src_, gens);
}

Submodule ModHom::kernel() const { return preimage(Submodule::zero(tgt_)); }

ModHom ModHom::inverse() const {
    if (!is_bijective()) throw std::invalid_argument("inverse of a non-bijective hom");
    IMat inv(src_.k(), tgt_.k());
    for (int l = 0; l < tgt_.k(); ++l) {
        Vec e(tgt_.k(), 0);
        e[l] = 1;
        auto x = solve_mod(a_, tgt_.factors(), e);
        if (!x) throw std::logic_error("inverse: unsolvable system for a bijection");
        inv.set_column(l, src_.reduce(*x));
    }
    return ModHom(tgt_, src_, inv);
}

i64 hom_count(const FinMod& m, const FinMod& n) {
    i64 c = 1;
    for (i64 a : m.factors())
        for (i64 b : n.factors()) c = mul_checked(c, gcd(a, b));
    return c;
}

std::vector<ModHom> hom_modules(const FinMod& m, const FinMod& n) {
    if (hom_count(m, n) > bounds().hom_candidates) throw BoundError("hom set too large: " + m.str() + " -> " + n.str());
    // Images of generator j range over the m_j-torsion of n.
    std::vector<std::vector<Element>> choices;
    for (i64 mj : m.factors()) {
        std::vector<Element> opts;
        Vec step(n.k()), count(n.k());
        i64 total = 1;
        for (int i = 0; i < n.k(); ++i) {
            i64 g = gcd(mj, n.factors()[i]);
            step[i] = n.factors()[i] / g;
            count[i] = g;
            total *= g;
        }
        for (i64 t = 0; t < total; ++t) {
            Element x(n.k());
            i64 r = t;
            for (int i = 0; i < n.k(); ++i) {
                x[i] = (r % count[i]) * step[i];
                r /= count[i];
            }
            opts.push_back(x);
        }
        choices.push_back(std::move(opts));
    }
    std::vector<ModHom> out;
    std::vector<std::size_t> pos(choices.size(), 0);
    for (;;) {
        IMat a(n.k(), m.k());
        for (int j = 0; j < m.k(); ++j) a.set_column(j, choices[j][pos[j]]);
        out.emplace_back(m, n, a);
        int j = 0;
        while (j < m.k()) {
            if (++pos[j] < choices[j].size()) break;
            pos[j] = 0;
            ++j;
        }
        if (j == m.k()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 gl_order(int d, i64 m) {
    if (m == 1) return 1;
    i64 o = 1;
    for (int i = 0; i < d * d; ++i) o = mul_checked(o, m);
    for (auto [p, e] : factorize(m)) {
        i64 num = 1, den = 1;
        // prod_{i=1..d} (1 - p^{-i})
        for (int i = 1; i <= d; ++i) {
            i64 pi = pow_checked(p, i);
            num = mul_checked(num, pi - 1);
            den = mul_checked(den, pi);
        }
        o = o / den * num;
    }
    return o;
}

namespace {

std::vector<ModHom> enumerate_free_gl(const FinMod& n) {
    const int d = n.k();
    const i64 m = n.exponent();
    std::vector<ModHom> out;
    i64 total = 1;
    for (int i = 0; i < d * d; ++i) total = mul_checked(total, m);
    if (total > bounds().hom_candidates) throw BoundError("automorphism group too large: " + n.str());
    IMat a(d, d);
    for (i64 t = 0; t < total; ++t) {
        i64 r = t;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                a(i, j) = r % m;
                r /= m;
            }
        if (gcd(det(a), m) == 1) out.emplace_back(n, n, a);
    }
    return out;
}

}  // namespace

const std::vector<ModHom>& aut_group(const FinMod& n) {
    static std::mutex mu;
    static std::map<std::pair<Vec, int>, std::vector<ModHom>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n.factors(), n.rank_bound());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<ModHom> out;
    if (n.k() == 0) {
        out.push_back(ModHom::identity(n));
    } else if (n.is_free() || n.k() == 1) {
        if (n.k() == 1) {
            for (i64 u = 1; u < n.exponent(); ++u)
                if (gcd(u, n.exponent()) == 1) out.emplace_back(n, n, IMat::diag({u}));
        } else {
            out = enumerate_free_gl(n);
        }
    } else {
        for (auto& h : hom_modules(n, n))
            if (h.is_bijective()) out.push_back(h);
    }
    std::sort(out.begin(), out.end());
    return cache.emplace(key, std::move(out)).first->second;
}

DirectSum direct_sum(const FinMod& a, const FinMod& b, int rank_bound) {
    const int ka = a.k(), kb = b.k(), k = ka + kb;
    Vec rel = a.factors();
    rel.insert(rel.end(), b.factors().begin(), b.factors().end());
    SnfResult s = snf(IMat::diag(rel));
    std::vector<int> keep;
    Vec f;
    for (int i = 0; i < k; ++i)
        if (s.diag[i] > 1) {
            keep.push_back(i);
            f.push_back(s.diag[i]);
        }
    FinMod sum(f, rank_bound);
    auto to_sum = [&](int coord) {
        Element x(keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j) x[j] = mod(s.u(keep[j], coord), f[j]);
        return x;
    };
    IMat i1(sum.k(), ka), i2(sum.k(), kb), p1(ka, sum.k()), p2(kb, sum.k());
    for (int c = 0; c < ka; ++c) i1.set_column(c, to_sum(c));
    for (int c = 0; c < kb; ++c) i2.set_column(c, to_sum(ka + c));
    for (std::size_t j = 0; j < keep.size(); ++j) {
        Vec col = s.u_inv.column(keep[j]);
        for (int c = 0; c < ka; ++c) p1(c, j) = col[c];
        for (int c = 0; c < kb; ++c) p2(c, j) = col[ka + c];
    }
    DirectSum ds{sum, ModHom(a, sum, i1), ModHom(b, sum, i2), ModHom(sum, a, p1), ModHom(sum, b, p2)};
    return ds;
}

ModHom std_surjection(const FinMod& n, i64 m) {
    const int d = n.rank_bound();
    if (m % n.exponent() != 0) throw std::invalid_argument("cover level must be a multiple of the exponent");
    FinMod u = FinMod::free(m, d);
    IMat a(n.k(), u.k());
    for (int i = 0; i < n.k(); ++i) a(i, i) = 1;
    return ModHom(u, n, a);
}

IMat lift_surjection(const ModHom& phi) {
    const FinMod& u = phi.source();
    const FinMod& n = phi.target();
    const int d = n.rank_bound();
    if (u.k() == 0) return IMat::identity(d);
    if (!u.is_free() || u.k() != d) throw std::invalid_argument("lift_surjection expects a free source of rank d");
    const i64 m = u.exponent();
    auto fac = factorize(m);
    std::vector<IMat> parts;
    Vec moduli;
    for (auto [p, e] : fac) {
        i64 pe = pow_checked(p, e);
        IMat t(d, d);
        std::vector<Vec> basis;
        std::vector<bool> fixed(d, false);
        for (int i = 0; i < n.k(); ++i)
            if (n.factors()[i] % p == 0) {
                fixed[i] = true;
                basis.push_back(phi.matrix().row(i));
            }
        if (rank_mod_p(basis, p) != static_cast<int>(basis.size()))
            throw std::invalid_argument("lift_surjection: map is not surjective");
        int next_std = 0;
        for (int i = 0; i < d; ++i)
            if (fixed[i])
                for (int j = 0; j < d; ++j) t(i, j) = mod(phi.matrix()(i, j), pe);
        for (int i = 0; i < d; ++i) {
            if (fixed[i]) continue;
            // Smallest standard vector keeping the rows independent mod p.
            for (; next_std < d; ++next_std) {
                Vec e(d, 0);
                e[next_std] = 1;
                auto trial = basis;
                trial.push_back(e);
                if (rank_mod_p(trial, p) == static_cast<int>(trial.size())) {
                    basis.push_back(e);
                    for (int j = 0; j < d; ++j) t(i, j) = e[j];
                    ++next_std;
                    break;
                }
            }
        }
        parts.push_back(t);
        moduli.push_back(pe);
    }
    IMat t(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Vec res;
            for (auto& pt : parts) res.push_back(pt(i, j));
            t(i, j) = crt(res, moduli);
        }
    return t;
}

FinMod parse_module(const std::string& text, int rank_bound) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    if (s == "0") return FinMod::zero(rank_bound);
    Vec f;
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (s.compare(pos, 2, "Z/") != 0) throw std::invalid_argument("bad module syntax '" + text + "' (expected Z/a+Z/b)");
        pos += 2;
        std::size_t end = pos;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        if (end == pos) throw std::invalid_argument("bad module syntax '" + text + "'");
        f.push_back(std::stoll(s.substr(pos, end - pos)));
        pos = end;
        if (pos < s.size()) {
            if (s[pos] != '+') throw std::invalid_argument("bad module syntax '" + text + "'");
            ++pos;
        }
    }
    Vec nontriv;
    for (i64 x : f) {
        if (x < 1) throw std::invalid_argument("bad module syntax '" + text + "'");
        if (x > 1) nontriv.push_back(x);
    }
    bool chain = true;
    for (std::size_t i = 1; i < nontriv.size(); ++i)
        if (nontriv[i] % nontriv[i - 1] != 0) chain = false;
    if (!chain || nontriv.size() != f.size()) {
        FinMod norm = snf_present(IMat::diag(f.empty() ? Vec{1} : f), static_cast<int>(std::max<std::size_t>(f.size(), 1)));
        throw std::invalid_argument("'" + text + "' is not in invariant-factor form; write it as " + norm.str());
    }
    return FinMod(nontriv, rank_bound);
}

}  // namespace esys
