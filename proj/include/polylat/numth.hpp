#pragma once
// Small number-theoretic utilities on 64-bit integers: modular arithmetic,
// deterministic Miller-Rabin primality, and trial-division factorization.
// Everything here is deterministic and allocation-light; moduli are assumed
// to fit in 64 bits (desk-scale guard, enforced by callers).

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace polylat {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// (a * b) mod m without overflow.
u64 mulmod(u64 a, u64 b, u64 m);

// a^e mod m; 0^0 = 1 by convention. m >= 1.
u64 powmod(u64 a, u64 e, u64 m);

u64 gcd_u64(u64 a, u64 b);

// Extended gcd: returns g = gcd(a, b) and x, y with a*x + b*y = g.
i64 egcd(i64 a, i64 b, i64& x, i64& y);

// Inverse of a mod m; throws usage_error when gcd(a, m) != 1.
u64 invmod(u64 a, u64 m);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(u64 n);

// Prime factorization by trial division; intended for n <= 2^40 or for
// inputs whose second-largest prime factor is small. Returns (p, e) pairs
// with p ascending.
std::vector<std::pair<u64, int>> factorize(u64 n);

// Distinct prime divisors, ascending.
std::vector<u64> prime_divisors(u64 n);

// floor(log2(n)) for n >= 1.
int floor_log2(u64 n);

// Exact binomial coefficient as long double log2; uses lgammal.
long double log2_binomial(u64 n, u64 k);

} // namespace polylat
