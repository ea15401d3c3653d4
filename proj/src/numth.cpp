#include "polylat/numth.hpp"

#include <cmath>
#include <numeric>

namespace polylat {

u64 mulmod(u64 a, u64 b, u64 m) {
    if (m == 0) throw usage_error("mulmod: zero modulus");
    return static_cast<u64>((static_cast<unsigned __int128>(a % m) * (b % m)) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    if (m == 0) throw usage_error("powmod: zero modulus");
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

i64 egcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    i64 x1, y1;
    i64 g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

u64 invmod(u64 a, u64 m) {
    if (m == 0) throw usage_error("invmod: zero modulus");
    a %= m;
    i64 x, y;
    i64 g = egcd(static_cast<i64>(a), static_cast<i64>(m), x, y);
    if (g != 1) throw usage_error("invmod: argument not a unit");
    i64 mm = static_cast<i64>(m);
    x %= mm;
    if (x < 0) x += mm;
    return static_cast<u64>(x);
}

namespace {

bool miller_rabin(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    // This witness set is known to be exact for all n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    if (n == 0) throw usage_error("factorize: zero input");
    std::vector<std::pair<u64, int>> out;
    for (u64 p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

int floor_log2(u64 n) {
    if (n == 0) throw usage_error("floor_log2: zero input");
    return 63 - __builtin_clzll(n);
}

long double log2_binomial(u64 n, u64 k) {
    if (k > n) return -std::numeric_limits<long double>::infinity();
    long double l = std::lgammal(static_cast<long double>(n) + 1) -
                    std::lgammal(static_cast<long double>(k) + 1) -
                    std::lgammal(static_cast<long double>(n - k) + 1);
    return l / std::log(2.0L);
}

} // namespace polylat
