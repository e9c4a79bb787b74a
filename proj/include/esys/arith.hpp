#pragma once

// Integer helpers shared by every module: checked 64-bit arithmetic,
// modular reduction and a few multiplicative functions.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace esys {

using i64 = std::int64_t;
using i128 = __int128;

struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

inline i64 add_checked(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline i64 sub_checked(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline i64 mul_checked(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

// Non-negative residue of a modulo m (m >= 1).
inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<i128>(mod(a, m)) * mod(b, m)) % m);
}

// Floor division for b > 0.
inline i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);

// Returns g = gcd(a,b) >= 0 together with x, y such that a*x + b*y = g.
struct Egcd {
    i64 g, x, y;
};
Egcd egcd(i64 a, i64 b);

// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
i64 inv_mod(i64 a, i64 m);

i64 pow_checked(i64 base, unsigned exp);

bool is_prime(i64 n);

// Prime factorisation as (prime, exponent) pairs in increasing order.
std::vector<std::pair<i64, int>> factorize(i64 n);

std::vector<i64> divisors(i64 n);

i64 euler_phi(i64 n);
i64 num_divisors(i64 n);

// Chinese remaindering of x = r_i mod m_i for pairwise coprime moduli.
i64 crt(const std::vector<i64>& residues, const std::vector<i64>& moduli);

// True when every prime factor of a divides b.
bool support_subset(i64 a, i64 b);

}  // namespace esys
