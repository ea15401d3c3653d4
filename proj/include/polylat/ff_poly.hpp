#pragma once
// Univariate polynomial arithmetic over a prime field F_q, plus the
// quotient-ring machinery the lattice construction needs: irreducibility
// testing (Rabin), a canonical generator for (F_q[x]/(c_j))^*, discrete
// logarithms (baby-step giant-step), and unit-group orders.
//
// Coefficients are stored lowest-degree first with no trailing zeros; the
// zero polynomial has an empty coefficient vector and degree() == -1.

#include "polylat/numth.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace polylat {

// Validated prime modulus for the base field. q >= 3 and prime.
struct PrimeModulus {
    u64 q;
    explicit PrimeModulus(u64 q_);
};

struct FieldPoly {
    u64 q = 0;
    std::vector<u64> c; // c[i] is the coefficient of x^i, each in [0, q)

    FieldPoly() = default;
    FieldPoly(u64 q_, std::vector<u64> coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    u64 lc() const; // leading coefficient; throws on zero polynomial
    u64 coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    void normalize(); // strip trailing zeros, reduce mod q

    bool operator==(const FieldPoly&) const = default;
};

FieldPoly poly_zero(u64 q);
FieldPoly poly_const(u64 q, u64 a);
FieldPoly poly_x(u64 q);
// x - alpha
FieldPoly poly_linear_root(u64 q, u64 alpha);

FieldPoly poly_add(const FieldPoly& a, const FieldPoly& b);
FieldPoly poly_sub(const FieldPoly& a, const FieldPoly& b);
FieldPoly poly_mul(const FieldPoly& a, const FieldPoly& b);
FieldPoly poly_scale(const FieldPoly& a, u64 k);

// Quotient and remainder; division by zero is a usage error.
struct PolyDivmod {
    FieldPoly quot, rem;
};
PolyDivmod poly_divmod(const FieldPoly& a, const FieldPoly& b);
FieldPoly poly_mod(const FieldPoly& a, const FieldPoly& m);

// Monic gcd; gcd(0, 0) = 0.
FieldPoly poly_gcd(FieldPoly a, FieldPoly b);

// g = gcd(a, b) monic, with u*a + v*b = g.
FieldPoly poly_ext_gcd(const FieldPoly& a, const FieldPoly& b, FieldPoly& u, FieldPoly& v);

u64 poly_eval(const FieldPoly& a, u64 x);

FieldPoly poly_make_monic(const FieldPoly& a);

// a^e mod m by square and multiply.
FieldPoly poly_pow_mod(const FieldPoly& a, u64 e, const FieldPoly& m);

// Inverse of a mod m; throws usage_error when gcd(a, m) != 1.
FieldPoly poly_inverse_mod(const FieldPoly& a, const FieldPoly& m);

// Rabin's test. Input must be nonconstant; monic is enforced internally.
bool is_irreducible(const FieldPoly& f);

// Element of F_q[x]/(modulus); modulus is monic irreducible for the group
// operations below.
struct QuotientRingElem {
    FieldPoly residue;
    FieldPoly modulus;

    QuotientRingElem(FieldPoly r, FieldPoly m);
    bool operator==(const QuotientRingElem&) const = default;
};

QuotientRingElem qre_make(const FieldPoly& r, const FieldPoly& m);
QuotientRingElem qre_mul(const QuotientRingElem& a, const QuotientRingElem& b);
QuotientRingElem qre_pow(const QuotientRingElem& a, u64 e);
QuotientRingElem qre_inverse(const QuotientRingElem& a);

// Canonical generator of (F_q[x]/(c_j))^* for irreducible c_j: candidates are
// enumerated by their base-q integer encoding (value sum c_i q^i, smallest
// first) and the first element of full multiplicative order q^deg - 1 wins.
// Deterministic; throws usage_error unless c_j is irreducible.
QuotientRingElem find_generator(const FieldPoly& c_j);

// Baby-step giant-step in (F_q[x]/(c_j))^*. beta must generate the group;
// y == 0 is a usage error. Returns e with beta^e = y.
u64 discrete_log(const QuotientRingElem& beta, const QuotientRingElem& y);

// Order of (F_q[x]/(c(x)))^* for c = prod f_i^{e_i} with the f_i distinct
// irreducibles: the product over i of q^{e_i n_i} - q^{(e_i - 1) n_i}.
struct UnitGroupOrder {
    mpz_class value;
    std::vector<mpz_class> factor_orders;
};
UnitGroupOrder unit_group_order(const std::vector<std::pair<FieldPoly, int>>& factors);

std::string poly_to_string(const FieldPoly& a);

} // namespace polylat
