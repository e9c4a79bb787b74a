#include "esys/cd_category.hpp"

#include <algorithm>
#include <sstream>

namespace esys {

CdMorphism::CdMorphism(FinMod src, FinMod tgt, Submodule n1, Submodule n2, IMat alpha)
    : src_(std::move(src)), tgt_(std::move(tgt)), alpha_(std::move(alpha)) {
    if (src_.rank_bound() != tgt_.rank_bound()) throw std::invalid_argument("morphism: rank bound mismatch");
    if (!n1.leq(n2)) throw std::invalid_argument("morphism: inner submodule not contained in outer");
    q_ = std::make_shared<const SubQuotient>(n1, n2);
    if (q_->module().factors() != tgt_.factors()) throw std::invalid_argument("morphism: subquotient not isomorphic to target");
    ModHom a(q_->module(), tgt_, alpha_);
    if (!a.is_bijective()) throw std::invalid_argument("morphism: alpha is not an isomorphism");
    alpha_ = a.matrix();
}

Element CdMorphism::eval(const Element& x) const {
    return ModHom(q_->module(), tgt_, alpha_).apply(q_->project(x));
}

bool CdMorphism::operator==(const CdMorphism& o) const {
    return src_ == o.src_ && tgt_ == o.tgt_ && inner() == o.inner() && outer() == o.outer() && alpha_ == o.alpha_;
}

std::string CdMorphism::str() const {
    std::ostringstream os;
    auto gens = [](const Submodule& s) {
        std::string out = "<";
        for (auto& g : s.generators()) {
            if (out.size() > 1) out += ",";
            out += "(";
            for (std::size_t i = 0; i < g.size(); ++i) out += (i ? "," : "") + std::to_string(g[i]);
            out += ")";
        }
        return out + ">";
    };
    os << src_.str() << " -> " << tgt_.str() << " [N1 " << gens(inner()) << ", N2 " << gens(outer()) << ", alpha "
       << alpha_.str() << "]";
    return os.str();
}

CdMorphism morphism_from_map(const FinMod& src, const FinMod& tgt, const Submodule& n1, const Submodule& n2,
                             const std::function<Element(const Element&)>& on_outer) {
    SubQuotient q(n1, n2);
    IMat a(tgt.k(), q.module().k());
    for (int j = 0; j < q.module().k(); ++j) a.set_column(j, on_outer(q.lift(j)));
    return CdMorphism(src, tgt, n1, n2, a);
}

CdMorphism identity_morphism(const FinMod& n) { return iso_morphism(ModHom::identity(n)); }

CdMorphism iso_morphism(const ModHom& beta) {
    const FinMod& n = beta.source();
    return morphism_from_map(n, beta.target(), Submodule::zero(n), Submodule::whole(n),
                             [&](const Element& x) { return beta.apply(x); });
}

CdMorphism fibration_from_surjection(const ModHom& phi) {
    if (!phi.is_surjective()) throw std::invalid_argument("fibration_from_surjection: map is not surjective");
    const FinMod& u = phi.source();
    return morphism_from_map(u, phi.target(), phi.kernel(), Submodule::whole(u),
                             [&](const Element& x) { return phi.apply(x); });
}

CdMorphism level_fibration(const FinMod& n, i64 m) { return fibration_from_surjection(std_surjection(n, m)); }

namespace {

// Preimage under f's structure map (outer ->> tgt) of a submodule of tgt.
Submodule pull_back_submodule(const CdMorphism& f, const Submodule& g) {
    ModHom a(f.quotient().module(), f.tgt(), f.alpha());
    ModHom ainv = a.inverse();
    auto gens = f.inner().generators();
    for (auto& y : g.generators()) gens.push_back(f.quotient().lift_element(ainv.apply(y)));
    return Submodule::generated(f.src(), gens);
}

}  // namespace

CdMorphism compose(const CdMorphism& g, const CdMorphism& f) {
    if (!(f.tgt() == g.src())) throw std::invalid_argument("compose: endpoint mismatch");
    Submodule h1 = pull_back_submodule(f, g.inner());
    Submodule h2 = pull_back_submodule(f, g.outer());
    return morphism_from_map(f.src(), g.tgt(), h1, h2, [&](const Element& x) { return g.eval(f.eval(x)); });
}

Factorization factorize(const CdMorphism& f) {
    const FinMod& n = f.src();
    SubQuotient q0(Submodule::zero(n), f.outer());
    const FinMod& x = q0.module();
    CdMorphism r = morphism_from_map(n, x, Submodule::zero(n), f.outer(), [&](const Element& e) { return q0.project(e); });
    std::vector<Element> img;
    for (auto& e : f.inner().generators()) img.push_back(q0.project(e));
    CdMorphism m = morphism_from_map(x, f.tgt(), Submodule::generated(x, img), Submodule::whole(x),
                                     [&](const Element& y) { return f.eval(q0.lift_element(y)); });
    return {r, m};
}

std::vector<CdMorphism> hom_set(const FinMod& n, const FinMod& n2) {
    if (n.rank_bound() != n2.rank_bound()) throw std::invalid_argument("hom_set: rank bound mismatch");
    std::vector<CdMorphism> out;
    if (n.order() % n2.order() != 0) return out;
    auto subs = enumerate_submodules(n);
    const auto& auts = aut_group(n2);
    for (auto& outer : subs) {
        if (outer.order() % n2.order() != 0) continue;
        for (auto& inner : subs) {
            if (inner.order() * n2.order() != outer.order() || !inner.leq(outer)) continue;
            SubQuotient q(inner, outer);
            if (q.module().factors() != n2.factors()) continue;
            for (auto& a : auts) out.emplace_back(n, n2, inner, outer, a.matrix());
        }
    }
    return out;
}

std::vector<ModHom> relative_aut(const CdMorphism& f) {
    std::vector<ModHom> out;
    const SubQuotient& q = f.quotient();
    for (auto& s : aut_group(f.src())) {
        bool ok = true;
        for (auto& x : f.inner().generators())
            if (!f.inner().contains(s.apply(x))) ok = false;
        for (auto& x : f.outer().generators())
            if (ok && !f.outer().contains(s.apply(x))) ok = false;
        for (int j = 0; ok && j < q.module().k(); ++j) {
            Element lj = q.lift(j);
            if (q.project(s.apply(lj)) != q.project(lj)) ok = false;
        }
        if (ok) out.push_back(s);
    }
    return out;
}

GaloisCover galois_cover_for(const CdMorphism& f) {
    const FinMod& n = f.src();
    const int d = n.rank_bound(), k = n.k();
    const i64 a = SubQuotient(Submodule::zero(n), f.outer()).module().exponent();
    const i64 b = SubQuotient(f.outer(), Submodule::whole(n)).module().exponent();
    const i64 ab = mul_checked(a, b);
    FinMod m = FinMod::free(ab, d);
    if (m.k() == 0) return {m, identity_morphism(n)};
    // L = phi^{-1}(N2) for phi : Z^d ->> N sending e_i to the i-th generator.
    IMat bl = IMat::identity(d);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) bl(i, j) = f.outer().basis()(i, j);
    i64 dl = det(bl);
    IMat adj = adjugate(bl);  // bl^{-1} = adj / dl
    auto to_m = [&](const Vec& x) {  // point of L -> coordinates in M = L/abL
        Vec y = adj * x;
        for (auto& v : y) {
            if (v % dl != 0) throw std::logic_error("galois cover: point outside L");
            v /= dl;
        }
        return m.reduce(y);
    };
    std::vector<Element> g2, g1;
    for (int i = 0; i < d; ++i) {
        Vec e(d, 0);
        e[i] = b;
        g2.push_back(to_m(e));
        if (i < k) e[i] = mul_checked(b, n.factors()[i]);
        g1.push_back(to_m(e));
    }
    Submodule n2 = Submodule::generated(m, g2), n1 = Submodule::generated(m, g1);
    CdMorphism h = morphism_from_map(m, n, n1, n2, [&](const Element& w) {
        Vec x = bl * w;
        Element y(k);
        for (int i = 0; i < k; ++i) {
            if (x[i] % b != 0) throw std::logic_error("galois cover: element outside bZ^d");
            y[i] = x[i] / b;
        }
        return n.reduce(y);
    });
    return {m, h};
}

std::vector<CdMorphism> lifts_through(const CdMorphism& f, const CdMorphism& c) {
    if (!(f.tgt() == c.tgt())) throw std::invalid_argument("lifts_through: targets differ");
    const FinMod& m = c.src();
    const FinMod& n = f.src();
    std::vector<CdMorphism> out;
    if (m.order() % n.order() != 0) return out;
    const Submodule &c1 = c.inner(), &c2 = c.outer();
    const i64 f1 = f.inner().order(), f2 = f.outer().order();
    auto subs = enumerate_submodules(m);
    const auto& auts = aut_group(n);
    const SubQuotient& cq = c.quotient();
    auto c1g = c1.generators(), c2g = c2.generators();
    for (auto& b1 : subs) {
        if (b1.order() * f1 != c1.order() || b1.order() * f2 != c2.order() || !b1.leq(c1)) continue;
        for (auto& b2 : subs) {
            if (b2.order() != b1.order() * n.order() || !c2.leq(b2)) continue;
            SubQuotient q(b1, b2);
            if (q.module().factors() != n.factors()) continue;
            std::vector<Element> p1, p2, pl;
            for (auto& x : c1g) p1.push_back(q.project(x));
            for (auto& x : c2g) p2.push_back(q.project(x));
            for (int j = 0; j < cq.module().k(); ++j) pl.push_back(q.project(cq.lift(j)));
            for (auto& beta : auts) {
                bool ok = true;
                for (auto& y : p1)
                    if (ok && !f.inner().contains(beta.apply(y))) ok = false;
                for (auto& y : p2)
                    if (ok && !f.outer().contains(beta.apply(y))) ok = false;
                for (int j = 0; ok && j < static_cast<int>(pl.size()); ++j)
                    if (f.eval(beta.apply(pl[j])) != c.alpha().column(j)) ok = false;
                if (ok) out.emplace_back(m, n, b1, b2, beta.matrix());
            }
        }
    }
    return out;
}

i64 degree(const CdMorphism& f) {
    GaloisCover cov = galois_cover_for(f);
    return static_cast<i64>(lifts_through(f, compose(f, cov.h)).size());
}

bool is_galois(const CdMorphism& f) {
    GaloisCover cov = galois_cover_for(f);
    auto fiber = lifts_through(f, compose(f, cov.h));
    auto aut = relative_aut(f);
    if (aut.size() != fiber.size()) return false;
    for (auto& s : aut) {
        CdMorphism y = compose(iso_morphism(s), cov.h);
        if (std::find(fiber.begin(), fiber.end(), y) == fiber.end()) return false;
    }
    return true;
}

Submodule orthogonal(const Submodule& s) {
    const FinMod& n = s.parent();
    const int k = n.k();
    if (k == 0) return s;
    // lattice D * B^{-T} with D the relation matrix and B the basis of s
    const IMat& b = s.basis();
    i64 dt = det(b);
    IMat m = IMat::diag(n.factors()) * adjugate(b).transpose();
    std::vector<Element> gens;
    for (int j = 0; j < k; ++j) {
        Element g(k);
        for (int i = 0; i < k; ++i) {
            if (m(i, j) % dt != 0) throw std::logic_error("orthogonal: non-integral dual basis");
            g[i] = m(i, j) / dt;
        }
        gens.push_back(n.reduce(g));
    }
    return Submodule::generated(n, gens);
}

CdMorphism dualize(const CdMorphism& f) {
    const FinMod& n = f.src();
    const FinMod& t = f.tgt();
    // x_l in N2 with f(x_l) = e_l
    ModHom a(f.quotient().module(), t, f.alpha());
    ModHom ainv = a.inverse();
    std::vector<Element> xs;
    for (int l = 0; l < t.k(); ++l) {
        Element e(t.k(), 0);
        e[l] = 1;
        xs.push_back(f.quotient().lift_element(ainv.apply(e)));
    }
    const i64 e_n = n.exponent();
    auto pairing_scaled = [&](const Element& x, const Element& y) {  // e_n * <x, y> mod e_n
        i64 acc = 0;
        for (int i = 0; i < n.k(); ++i) acc = mod(acc + mulmod(x[i] * (e_n / n.factors()[i]), y[i], e_n), e_n);
        return acc;
    };
    return morphism_from_map(n, t, orthogonal(f.outer()), orthogonal(f.inner()), [&](const Element& y) {
        Element z(t.k());
        for (int l = 0; l < t.k(); ++l) {
            i64 v = pairing_scaled(xs[l], y);  // = e_n * <x_l, y>, and d'_l * <x_l, y> is integral mod d'_l
            i64 dl = t.factors()[l];
            z[l] = mod(v / (e_n / dl), dl);
        }
        return z;
    });
}

}  // namespace esys
