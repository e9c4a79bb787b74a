#include "esys/euler.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace esys {

namespace {

std::set<i64> support(i64 n) {
    std::set<i64> out;
    for (auto& [q, e] : factorize(n)) out.insert(q);
    return out;
}

bool subset(const std::set<i64>& a, const std::set<i64>& b) {
    for (auto x : a)
        if (!b.count(x)) return false;
    return true;
}

LevelSection kappa_over(const std::vector<i64>& orders, const std::vector<i64>& b, int d, bool punctured) {
    Summands s = summands(orders, d);
    std::vector<LevelSection> factors;
    for (int j = 0; j < d; ++j) {
        FinMod nj = FinMod::cyclic(orders[j], d);
        CdMorphism pr = morphism_from_map(s.sum, nj, Submodule::zero(s.sum), s.inj[j].image(),
                                          [&](const Element& x) { return s.proj[j].apply(x); });
        Element bj = nj.k() == 0 ? Element{} : Element{mod(b[j], orders[j])};
        factors.push_back(pullback(bs_elem(nj, bj, punctured), pr));
    }
    return product(factors);
}

}  // namespace

std::string EulerInstance::str() const {
    std::ostringstream os;
    os << "d=" << d;
    for (int i = 0; i < d; ++i) os << " Z/" << n[i] << "->Z/" << n_prime[i] << " b=" << b[i];
    if (p) os << " p=" << p;
    os << (situation == Situation::I ? " I" : " II");
    return os.str();
}

Summands summands(const std::vector<i64>& orders, int d) {
    Summands out;
    out.sum = FinMod::cyclic(orders.at(0), d);
    out.inj.push_back(ModHom::identity(out.sum));
    out.proj.push_back(ModHom::identity(out.sum));
    for (std::size_t j = 1; j < orders.size(); ++j) {
        DirectSum ds = direct_sum(out.sum, FinMod::cyclic(orders[j], d), d);
        for (auto& h : out.inj) h = ds.inj1.after(h);
        for (auto& h : out.proj) h = h.after(ds.proj1);
        out.inj.push_back(ds.inj2);
        out.proj.push_back(ds.proj2);
        out.sum = ds.sum;
    }
    return out;
}

void validate(const EulerInstance& inst) {
    const int d = inst.d;
    if (d < 1) throw std::invalid_argument("euler: d must be positive");
    if (static_cast<int>(inst.n.size()) != d || static_cast<int>(inst.n_prime.size()) != d ||
        static_cast<int>(inst.b.size()) != d)
        throw std::invalid_argument("euler: need d modules, quotients and generators");
    for (int i = 0; i < d; ++i) {
        if (inst.n[i] < 1 || inst.n_prime[i] < 1 || inst.n[i] % inst.n_prime[i] != 0)
            throw std::invalid_argument("euler: Z/" + std::to_string(inst.n_prime[i]) + " is not a quotient of Z/" +
                                        std::to_string(inst.n[i]));
        if (gcd(mod(inst.b[i], inst.n[i]), inst.n[i]) != 1 && inst.n[i] != 1)
            throw std::invalid_argument("euler: b_" + std::to_string(i + 1) + " does not generate Z/" + std::to_string(inst.n[i]));
        if (inst.situation == Situation::II && inst.n_prime[i] == 1)
            throw std::invalid_argument("euler: Situation II needs every quotient non-zero");
    }
    if (inst.p != 0 && !is_prime(inst.p)) throw std::invalid_argument("euler: p must be prime");
}

bool clause1_applies(const EulerInstance& inst) {
    for (int i = 0; i < inst.d; ++i)
        for (int j = 0; j < inst.d; ++j)
            if (!subset(support(inst.n[i] / inst.n_prime[i]), support(inst.n_prime[j]))) return false;
    return true;
}

bool clause2_applies(const EulerInstance& inst) {
    if (inst.p == 0) return false;
    for (int i = 0; i < inst.d; ++i) {
        if (!subset(support(inst.n[i] / inst.n_prime[i]), {inst.p})) return false;
        if (inst.n[i] % inst.p != 0) return false;
    }
    return true;
}

int clause2_e(const EulerInstance& inst) {
    int e = 0;
    for (int i = 0; i < inst.d; ++i)
        if (inst.n_prime[i] % inst.p != 0) ++e;
    return e;
}

FinMod bn(const EulerInstance& inst) { return summands(inst.n, inst.d).sum; }
FinMod bn_prime(const EulerInstance& inst) { return summands(inst.n_prime, inst.d).sum; }

LevelSection build_kappa(const EulerInstance& inst) {
    validate(inst);
    return kappa_over(inst.n, inst.b, inst.d, inst.situation == Situation::II);
}

LevelSection build_kappa_prime(const EulerInstance& inst) {
    validate(inst);
    return kappa_over(inst.n_prime, inst.b, inst.d, inst.situation == Situation::II);
}

CdMorphism quotient_morphism(const EulerInstance& inst) {
    Summands a = summands(inst.n, inst.d), b = summands(inst.n_prime, inst.d);
    ModHom total = ModHom::zero(a.sum, b.sum);
    for (int j = 0; j < inst.d; ++j) {
        FinMod nj = FinMod::cyclic(inst.n[j], inst.d), npj = FinMod::cyclic(inst.n_prime[j], inst.d);
        IMat red(npj.k(), nj.k());
        if (npj.k() == 1) red(0, 0) = 1;
        total = total.plus(b.inj[j].after(ModHom(nj, npj, red)).after(a.proj[j]));
    }
    return fibration_from_surjection(total);
}

namespace {

NormRelationReport start(const EulerInstance& inst, int clause) {
    NormRelationReport rep;
    rep.instance = inst;
    rep.clause = clause;
    rep.lhs = transfer(build_kappa(inst), quotient_morphism(inst));
    return rep;
}

void finish(NormRelationReport& rep) {
    rep.verdict = equal_sections(rep.lhs, rep.rhs);
    if (rep.instance.situation == Situation::II) {
        rep.punctured = is_punctured(rep.lhs) && is_punctured(rep.rhs);
        for (auto& t : rep.terms) rep.punctured = rep.punctured && is_punctured(t.value);
        rep.verdict = rep.verdict && rep.punctured;
    }
}

}  // namespace

NormRelationReport verify_theorem1(const EulerInstance& inst) {
    validate(inst);
    if (!clause1_applies(inst))
        throw std::invalid_argument("verify_theorem1: support of some N''_i is not contained in every Supp(N'_j): " +
                                    inst.str());
    NormRelationReport rep = start(inst, 1);
    rep.rhs = build_kappa_prime(inst);
    finish(rep);
    return rep;
}

NormRelationReport verify_theorem2(const EulerInstance& inst) {
    validate(inst);
    if (!clause2_applies(inst))
        throw std::invalid_argument("verify_theorem2: need Supp(N''_i) in {p} in Supp(N_i) for every i: " + inst.str());
    NormRelationReport rep = start(inst, 2);
    const LevelSection kp = build_kappa_prime(inst);
    const QObj target = QObj::representable(bn_prime(inst));
    const int e = clause2_e(inst);
    rep.rhs = zero_section(target, inst.d);
    for (int r = 0; r <= e; ++r) {
        i64 c = pow_checked(inst.p, r * (r - 1) / 2);
        if (r % 2) c = -c;
        LevelSection t = hecke_apply(HeckeDescriptor{FinMod(Vec(r, inst.p), inst.d), target}, kp);
        rep.rhs = add(rep.rhs, scale(t, c));
        rep.terms.push_back({r, c, std::move(t)});
    }
    finish(rep);
    return rep;
}

}  // namespace esys
