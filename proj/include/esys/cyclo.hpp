#pragma once

// Exact arithmetic in Z[zeta_n] = Z[x]/(Phi_n) and the cyclotomic-unit
// instance of the norm relation.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "esys/hecke.hpp"

namespace esys {

using BigInt = boost::multiprecision::cpp_int;
using Poly = std::vector<BigInt>;  // low degree first, no trailing zeros

// Phi_n, cached; n <= 10^4.
const Poly& cyclotomic_poly(i64 n);
std::string poly_str(const Poly& p);

class CycloElem {
public:
    CycloElem() = default;
    // Reduces p modulo Phi_n.
    CycloElem(i64 n, const Poly& p);

    static CycloElem one(i64 n) { return CycloElem(n, {1}); }
    static CycloElem zeta_pow(i64 n, i64 k);
    // 1 - zeta_n^b
    static CycloElem siegel(i64 n, i64 b);

    i64 conductor() const { return n_; }
    // Exactly phi(n) coefficients.
    const Poly& coeffs() const { return c_; }
    bool is_zero() const;

    CycloElem operator*(const CycloElem& o) const;
    CycloElem operator+(const CycloElem& o) const;
    CycloElem operator-(const CycloElem& o) const;
    bool operator==(const CycloElem& o) const { return n_ == o.n_ && c_ == o.c_; }

    std::string str() const;

private:
    i64 n_ = 1;
    Poly c_;
};

// zeta_n -> zeta_n^t; throws std::invalid_argument unless gcd(t, n) = 1.
CycloElem galois_apply(i64 t, const CycloElem& a);
// Image under Z[zeta_n] -> Z[zeta_m], zeta_n = zeta_m^(m/n).
CycloElem embed(const CycloElem& a, i64 m);
// The b in Z[zeta_n] with embed(b) == a, if any.
std::optional<CycloElem> restrict_to(const CycloElem& a, i64 n);

// {t mod np : t = 1 mod n, gcd(t, np) = 1}.
std::vector<i64> relative_galois(i64 n, i64 p);
// Product of the conjugates of a (conductor np) over relative_galois(n, p).
CycloElem norm_down(const CycloElem& a, i64 n, i64 p);

// prod over y in Z/n with y = b mod n/k of (1 - zeta_n^y) equals
// 1 - zeta_(n/k)^b, for every b != 0 mod n/k.
bool verify_distribution(i64 n, i64 k);

struct NormRelationCheck {
    i64 n_prime, p, b, b_lift, p_inverse;
    CycloElem norm, frobenius_term, product, target;
    bool ok = false;
};
// Norm(1 - zeta_(n'p)^b~) * (1 - zeta_n'^(b p^-1)) == 1 - zeta_n'^b with
// b~ = b mod n', b~ = 1 mod p.
NormRelationCheck verify_norm_relation(i64 n_prime, i64 p, i64 b);
// Norm from conductor np^2 down to np of 1 - zeta_(np^2) equals 1 - zeta_np.
bool verify_tower(i64 n, i64 p);

// The cyclotomic image of a degree-1 section over a representable Z/n:
// prod (1 - zeta_M^y)^s(y) at the section level M, as numerator and
// denominator. Throws when s does not vanish at 0.
std::pair<CycloElem, CycloElem> cyclotomic_image(const LevelSection& s);
// Equality of images after clearing denominators at a common conductor.
bool same_image(const std::pair<CycloElem, CycloElem>& a, const std::pair<CycloElem, CycloElem>& b);

// Image of the transfer of [b~] along Z/n'p ->> Z/n' against the field norm
// of 1 - zeta_(n'p)^b~ (b~ as in verify_norm_relation).
bool verify_transfer_is_norm(i64 n_prime, i64 p, i64 b);
// The categorical T_[Z/p] [b] over Z/n' against 1 - zeta_n'^(b p^-1).
bool verify_frobenius(i64 n_prime, i64 p, i64 b);

}  // namespace esys
