#ifndef SHAPE_NUMTHEORY_HPP
#define SHAPE_NUMTHEORY_HPP

// Small-integer number theory helpers for moduli that fit in 64 bits.

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace shape::nt {

using i64 = std::int64_t;

inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<__int128>(a) * b) % m);
}

inline i64 powmod(i64 base, i64 exp, i64 m) {
    i64 r = 1 % m;
    base = mod(base, m);
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Prime factorization as (p, e) pairs in increasing p.
inline std::vector<std::pair<i64, int>> factor(i64 n) {
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
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

inline i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [p, e] : factor(n)) r = r / p * (p - 1);
    return r;
}

inline int moebius(i64 n) {
    int s = 1;
    for (auto [p, e] : factor(n)) {
        if (e > 1) return 0;
        s = -s;
    }
    return s;
}

/// Units of ℤ/m in increasing order.
inline std::vector<i64> units(i64 m) {
    if (m == 1) return {0};
    std::vector<i64> u;
    for (i64 a = 1; a < m; ++a)
        if (std::gcd(a, m) == 1) u.push_back(a);
    return u;
}

/// Smallest generator of the cyclic group (ℤ/m)* (m = p or p^2, p odd).
inline i64 primitive_root(i64 m) {
    const i64 order = euler_phi(m);
    const auto fs = factor(order);
    for (i64 g = 2; g < m; ++g) {
        if (std::gcd(g, m) != 1) continue;
        bool ok = true;
        for (auto [q, e] : fs)
            if (powmod(g, order / q, m) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    return 1;
}

} // namespace shape::nt

#endif
