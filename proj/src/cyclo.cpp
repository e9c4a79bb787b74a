#include "esys/cyclo.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace esys {

using boost::multiprecision::cpp_rational;

namespace {

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact quotient of a by the monic polynomial m.
Poly divide_monic(Poly a, const Poly& m) {
    const std::size_t dm = m.size() - 1;
    if (a.size() < m.size()) return {};
    Poly q(a.size() - dm, 0);
    for (std::size_t i = a.size(); i-- > dm;) {
        BigInt c = a[i];
        if (c == 0) continue;
        q[i - dm] = c;
        for (std::size_t j = 0; j <= dm; ++j) a[i - dm + j] -= c * m[j];
    }
    trim(a);
    if (!a.empty()) throw std::logic_error("cyclotomic_poly: inexact division");
    return q;
}

}  // namespace

const Poly& cyclotomic_poly(i64 n) {
    if (n < 1 || n > 10000) throw std::invalid_argument("cyclotomic_poly: need 1 <= n <= 10000");
    static std::mutex mu;
    static std::map<i64, Poly> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    Poly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (i64 d : divisors(n))
        if (d < n) p = divide_monic(p, cyclotomic_poly(d));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, std::move(p)).first->second;
}

std::string poly_str(const Poly& p) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- CycloElem

CycloElem::CycloElem(i64 n, const Poly& p) : n_(n) {
    const Poly& phi = cyclotomic_poly(n);
    const std::size_t deg = phi.size() - 1;
    // fold with x^n = 1 first, then reduce by Phi_n
    Poly a(std::max<std::size_t>(static_cast<std::size_t>(n), deg), 0);
    for (std::size_t i = 0; i < p.size(); ++i) a[i % n] += p[i];
    for (std::size_t i = a.size(); i-- > deg;) {
        BigInt c = a[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= deg; ++j) a[i - deg + j] -= c * phi[j];
    }
    a.resize(deg);
    c_ = std::move(a);
}

CycloElem CycloElem::zeta_pow(i64 n, i64 k) {
    Poly p(mod(k, n) + 1, 0);
    p[mod(k, n)] = 1;
    return CycloElem(n, p);
}

CycloElem CycloElem::siegel(i64 n, i64 b) { return one(n) - zeta_pow(n, b); }

bool CycloElem::is_zero() const {
    for (auto& c : c_)
        if (c != 0) return false;
    return true;
}

CycloElem CycloElem::operator*(const CycloElem& o) const {
    if (n_ != o.n_) throw std::invalid_argument("CycloElem: conductor mismatch");
    Poly p(static_cast<std::size_t>(n_), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) p[(i + j) % n_] += c_[i] * o.c_[j];
    }
    return CycloElem(n_, p);
}

CycloElem CycloElem::operator+(const CycloElem& o) const {
    if (n_ != o.n_) throw std::invalid_argument("CycloElem: conductor mismatch");
    CycloElem r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

CycloElem CycloElem::operator-(const CycloElem& o) const {
    if (n_ != o.n_) throw std::invalid_argument("CycloElem: conductor mismatch");
    CycloElem r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

std::string CycloElem::str() const { return "Z[zeta_" + std::to_string(n_) + "] " + poly_str(c_); }

// ---------------------------------------------------------------- Galois

CycloElem galois_apply(i64 t, const CycloElem& a) {
    const i64 n = a.conductor();
    if (gcd(mod(t, n), n) != 1 && n != 1) throw std::invalid_argument("galois_apply: t is not a unit mod n");
    Poly p(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) p[mulmod(static_cast<i64>(i), t, n)] += a.coeffs()[i];
    return CycloElem(n, p);
}

CycloElem embed(const CycloElem& a, i64 m) {
    const i64 n = a.conductor();
    if (m % n != 0) throw std::invalid_argument("embed: conductor does not divide the target");
    Poly p(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) p[(static_cast<i64>(i) * (m / n)) % m] += a.coeffs()[i];
    return CycloElem(m, p);
}

std::optional<CycloElem> restrict_to(const CycloElem& a, i64 n) {
    const i64 m = a.conductor();
    if (m % n != 0) throw std::invalid_argument("restrict_to: conductor mismatch");
    const int rows = static_cast<int>(a.coeffs().size());
    const int cols = static_cast<int>(cyclotomic_poly(n).size()) - 1;
    // augmented system [embed(x^k) | a]
    std::vector<std::vector<cpp_rational>> mat(rows, std::vector<cpp_rational>(cols + 1));
    for (int k = 0; k < cols; ++k) {
        CycloElem e = embed(CycloElem::zeta_pow(n, k), m);
        for (int r = 0; r < rows; ++r) mat[r][k] = cpp_rational(e.coeffs()[r]);
    }
    for (int r = 0; r < rows; ++r) mat[r][cols] = cpp_rational(a.coeffs()[r]);
    std::vector<int> pivcol;
    int row = 0;
    for (int c = 0; c < cols && row < rows; ++c) {
        int piv = -1;
        for (int r = row; r < rows; ++r)
            if (mat[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(mat[row], mat[piv]);
        for (int r = 0; r < rows; ++r) {
            if (r == row || mat[r][c] == 0) continue;
            cpp_rational f = mat[r][c] / mat[row][c];
            for (int j = c; j <= cols; ++j) mat[r][j] -= f * mat[row][j];
        }
        pivcol.push_back(c);
        ++row;
    }
    for (int r = row; r < rows; ++r)
        if (mat[r][cols] != 0) return std::nullopt;
    Poly b(cols, 0);
    for (int r = 0; r < row; ++r) {
        cpp_rational v = mat[r][cols] / mat[r][pivcol[r]];
        if (denominator(v) != 1) return std::nullopt;
        b[pivcol[r]] = numerator(v);
    }
    CycloElem out(n, b);
    if (!(embed(out, m) == a)) return std::nullopt;
    return out;
}

std::vector<i64> relative_galois(i64 n, i64 p) {
    const i64 m = mul_checked(n, p);
    std::vector<i64> out;
    for (i64 t = 1; t <= m; ++t)
        if (mod(t, n) == mod(1, n) && gcd(t, m) == 1) out.push_back(t % m);
    return out;
}

CycloElem norm_down(const CycloElem& a, i64 n, i64 p) {
    if (a.conductor() != n * p) throw std::invalid_argument("norm_down: conductor must be n * p");
    if (a.is_zero()) throw std::invalid_argument("norm_down: zero element");
    CycloElem out = CycloElem::one(a.conductor());
    for (i64 t : relative_galois(n, p)) out = out * galois_apply(t, a);
    return out;
}

bool verify_distribution(i64 n, i64 k) {
    if (k < 1 || n % k != 0) throw std::invalid_argument("verify_distribution: k must divide n");
    const i64 np = n / k;
    for (i64 b = 1; b < np; ++b) {
        CycloElem prod = CycloElem::one(n);
        for (i64 j = 0; j < k; ++j) prod = prod * CycloElem::siegel(n, b + np * j);
        if (!(prod == embed(CycloElem::siegel(np, b), n))) return false;
    }
    return true;
}

NormRelationCheck verify_norm_relation(i64 n_prime, i64 p, i64 b) {
    if (!is_prime(p)) throw std::invalid_argument("verify_norm_relation: p must be prime");
    if (n_prime < 2 || n_prime % p == 0) throw std::invalid_argument("verify_norm_relation: need n' >= 2 and p not dividing n'");
    if (mod(b, n_prime) == 0) throw std::invalid_argument("verify_norm_relation: b must be non-zero mod n'");
    NormRelationCheck r{n_prime, p, mod(b, n_prime), 0, inv_mod(p, n_prime), {}, {}, {}, {}, false};
    r.b_lift = crt({r.b, 1}, {n_prime, p});
    const i64 m = n_prime * p;
    r.norm = norm_down(CycloElem::siegel(m, r.b_lift), n_prime, p);
    r.frobenius_term = embed(CycloElem::siegel(n_prime, r.b * r.p_inverse), m);
    r.product = r.norm * r.frobenius_term;
    r.target = embed(CycloElem::siegel(n_prime, r.b), m);
    r.ok = r.product == r.target && restrict_to(r.norm, n_prime).has_value();
    return r;
}

bool verify_tower(i64 n, i64 p) {
    if (!is_prime(p) || n < 1) throw std::invalid_argument("verify_tower: need p prime and n >= 1");
    const i64 m = n * p * p;
    CycloElem norm = norm_down(CycloElem::siegel(m, 1), n * p, p);
    return norm == embed(CycloElem::siegel(n * p, 1), m);
}

// ---------------------------------------------------------------- sections

std::pair<CycloElem, CycloElem> cyclotomic_image(const LevelSection& s) {
    if (s.degree != 1 || s.target.size() != 1 || s.target.comps[0].rank_bound() != 1)
        throw std::invalid_argument("cyclotomic_image: need a degree-1 section over a single d = 1 object");
    const Piece& pc = s.pieces[0];
    const i64 m = pc.level;
    if (pc.values[0] != 0) throw std::invalid_argument("cyclotomic_image: section does not vanish at 0");
    CycloElem num = CycloElem::one(m), den = CycloElem::one(m);
    for (i64 y = 1; y < m; ++y) {
        i64 v = pc.values[y];
        for (; v > 0; --v) num = num * CycloElem::siegel(m, y);
        for (; v < 0; ++v) den = den * CycloElem::siegel(m, y);
    }
    return {num, den};
}

bool same_image(const std::pair<CycloElem, CycloElem>& a, const std::pair<CycloElem, CycloElem>& b) {
    i64 l = lcm(lcm(a.first.conductor(), a.second.conductor()), lcm(b.first.conductor(), b.second.conductor()));
    return embed(a.first, l) * embed(b.second, l) == embed(b.first, l) * embed(a.second, l);
}

bool verify_transfer_is_norm(i64 n_prime, i64 p, i64 b) {
    NormRelationCheck r = verify_norm_relation(n_prime, p, b);
    FinMod src = FinMod::cyclic(n_prime * p, 1), tgt = FinMod::cyclic(n_prime, 1);
    CdMorphism red = fibration_from_surjection(ModHom(src, tgt, IMat::identity(1)));
    LevelSection t = transfer(bs_elem(src, {r.b_lift}), red);
    return same_image(cyclotomic_image(t), {r.norm, CycloElem::one(r.norm.conductor())});
}

bool verify_frobenius(i64 n_prime, i64 p, i64 b) {
    if (!is_prime(p) || n_prime % p == 0 || mod(b, n_prime) == 0)
        throw std::invalid_argument("verify_frobenius: need p prime, p not dividing n', b != 0");
    FinMod tgt = FinMod::cyclic(n_prime, 1);
    LevelSection t = hecke_apply(HeckeDescriptor{FinMod::cyclic(p, 1), QObj::representable(tgt)},
                                 bs_elem(tgt, {mod(b, n_prime)}));
    CycloElem want = CycloElem::siegel(n_prime, mulmod(b, inv_mod(p, n_prime), n_prime));
    return same_image(cyclotomic_image(t), {want, CycloElem::one(n_prime)});
}

}  // namespace esys
