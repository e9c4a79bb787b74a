#include "esys/arith.hpp"

#include <algorithm>

namespace esys {

i64 gcd(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 lcm(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    i64 g = gcd(a, b);
    return mul_checked(a / g < 0 ? -(a / g) : a / g, b < 0 ? -b : b);
}

Egcd egcd(i64 a, i64 b) {
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

i64 inv_mod(i64 a, i64 m) {
    if (m == 1) return 0;
    Egcd e = egcd(mod(a, m), m);
    if (e.g != 1) throw std::domain_error("no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
    return mod(e.x, m);
}

i64 pow_checked(i64 base, unsigned exp) {
    i64 r = 1;
    for (unsigned i = 0; i < exp; ++i) r = mul_checked(r, base);
    return r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 1) throw std::domain_error("factorize expects a positive integer");
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> out;
    for (i64 k = 1; k * k <= n; ++k) {
        if (n % k != 0) continue;
        out.push_back(k);
        if (k != n / k) out.push_back(n / k);
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

i64 num_divisors(i64 n) {
    i64 r = 1;
    for (auto [p, e] : factorize(n)) r *= (e + 1);
    return r;
}

i64 crt(const std::vector<i64>& residues, const std::vector<i64>& moduli) {
    i64 x = 0, m = 1;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        i64 mi = moduli[i];
        i64 ri = mod(residues[i], mi);
        // x + m * t = ri (mod mi)
        i64 t = mulmod(mod(ri - x, mi), inv_mod(mod(m, mi), mi), mi);
        x = add_checked(x, mul_checked(m, t));
        m = mul_checked(m, mi);
        x = mod(x, m);
    }
    return x;
}

bool support_subset(i64 a, i64 b) {
    for (auto [p, e] : factorize(a))
        if (b % p != 0) return false;
    return true;
}

}  // namespace esys
