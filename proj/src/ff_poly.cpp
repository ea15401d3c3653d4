#include "polylat/ff_poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace polylat {

PrimeModulus::PrimeModulus(u64 q_) : q(q_) {
    if (q < 3 || !is_prime_u64(q)) throw usage_error("PrimeModulus: q must be an odd prime >= 3");
}

FieldPoly::FieldPoly(u64 q_, std::vector<u64> coeffs) : q(q_), c(std::move(coeffs)) {
    if (q < 2) throw usage_error("FieldPoly: invalid field size");
    normalize();
}

u64 FieldPoly::lc() const {
    if (is_zero()) throw usage_error("FieldPoly::lc: zero polynomial");
    return c.back();
}

void FieldPoly::normalize() {
    for (auto& x : c) x %= q;
    while (!c.empty() && c.back() == 0) c.pop_back();
}

FieldPoly poly_zero(u64 q) { return FieldPoly(q, {}); }
FieldPoly poly_const(u64 q, u64 a) { return FieldPoly(q, {a}); }
FieldPoly poly_x(u64 q) { return FieldPoly(q, {0, 1}); }
FieldPoly poly_linear_root(u64 q, u64 alpha) { return FieldPoly(q, {(q - alpha % q) % q, 1}); }

namespace {
void check_same_field(const FieldPoly& a, const FieldPoly& b) {
    if (a.q != b.q) throw usage_error("FieldPoly: mixed field sizes");
}
} // namespace

FieldPoly poly_add(const FieldPoly& a, const FieldPoly& b) {
    check_same_field(a, b);
    std::vector<u64> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a.coeff(i) + b.coeff(i)) % a.q;
    return FieldPoly(a.q, std::move(c));
}

FieldPoly poly_sub(const FieldPoly& a, const FieldPoly& b) {
    check_same_field(a, b);
    std::vector<u64> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = (a.coeff(i) + a.q - b.coeff(i) % a.q) % a.q;
    return FieldPoly(a.q, std::move(c));
}

FieldPoly poly_mul(const FieldPoly& a, const FieldPoly& b) {
    check_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return poly_zero(a.q);
    std::vector<u64> c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        unsigned __int128 acc = 0;
        std::size_t lo = i >= b.c.size() ? i - b.c.size() + 1 : 0;
        std::size_t hi = std::min(i, a.c.size() - 1);
        for (std::size_t j = lo; j <= hi; ++j)
            acc += static_cast<unsigned __int128>(a.c[j]) * b.c[i - j];
        c[i] = static_cast<u64>(acc % a.q);
    }
    return FieldPoly(a.q, std::move(c));
}

FieldPoly poly_scale(const FieldPoly& a, u64 k) {
    std::vector<u64> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mulmod(a.c[i], k, a.q);
    return FieldPoly(a.q, std::move(c));
}

PolyDivmod poly_divmod(const FieldPoly& a, const FieldPoly& b) {
    check_same_field(a, b);
    if (b.is_zero()) throw usage_error("poly_divmod: division by zero polynomial");
    FieldPoly rem = a;
    if (a.degree() < b.degree()) return {poly_zero(a.q), rem};
    u64 inv_lead = invmod(b.lc(), b.q);
    std::vector<u64> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
        u64 factor = mulmod(rem.lc(), inv_lead, a.q);
        quot[shift] = factor;
        for (std::size_t i = 0; i < b.c.size(); ++i) {
            u64& r = rem.c[shift + i];
            r = (r + a.q - mulmod(factor, b.c[i], a.q)) % a.q;
        }
        rem.normalize();
    }
    return {FieldPoly(a.q, std::move(quot)), rem};
}

FieldPoly poly_mod(const FieldPoly& a, const FieldPoly& m) { return poly_divmod(a, m).rem; }

FieldPoly poly_make_monic(const FieldPoly& a) {
    if (a.is_zero()) return a;
    return poly_scale(a, invmod(a.lc(), a.q));
}

FieldPoly poly_gcd(FieldPoly a, FieldPoly b) {
    check_same_field(a, b);
    while (!b.is_zero()) {
        FieldPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_make_monic(a);
}

FieldPoly poly_ext_gcd(const FieldPoly& a, const FieldPoly& b, FieldPoly& u, FieldPoly& v) {
    check_same_field(a, b);
    FieldPoly r0 = a, r1 = b;
    FieldPoly s0 = poly_const(a.q, 1), s1 = poly_zero(a.q);
    FieldPoly t0 = poly_zero(a.q), t1 = poly_const(a.q, 1);
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(r0, r1);
        FieldPoly s2 = poly_sub(s0, poly_mul(q, s1));
        FieldPoly t2 = poly_sub(t0, poly_mul(q, t1));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!r0.is_zero()) {
        u64 k = invmod(r0.lc(), a.q);
        r0 = poly_scale(r0, k);
        s0 = poly_scale(s0, k);
        t0 = poly_scale(t0, k);
    }
    u = std::move(s0);
    v = std::move(t0);
    return r0;
}

u64 poly_eval(const FieldPoly& a, u64 x) {
    u64 r = 0;
    x %= a.q;
    for (std::size_t i = a.c.size(); i-- > 0;) r = (mulmod(r, x, a.q) + a.c[i]) % a.q;
    return r;
}

FieldPoly poly_pow_mod(const FieldPoly& a, u64 e, const FieldPoly& m) {
    check_same_field(a, m);
    if (m.degree() < 1) throw usage_error("poly_pow_mod: modulus must be nonconstant");
    FieldPoly base = poly_mod(a, m);
    FieldPoly r = poly_const(a.q, 1);
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, base), m);
        base = poly_mod(poly_mul(base, base), m);
        e >>= 1;
    }
    return r;
}

FieldPoly poly_inverse_mod(const FieldPoly& a, const FieldPoly& m) {
    FieldPoly u, v;
    FieldPoly g = poly_ext_gcd(poly_mod(a, m), m, u, v);
    if (!g.is_one()) throw usage_error("poly_inverse_mod: element is not a unit");
    return poly_mod(u, m);
}

bool is_irreducible(const FieldPoly& f_in) {
    if (f_in.degree() < 1) throw usage_error("is_irreducible: input must be nonconstant");
    FieldPoly f = poly_make_monic(f_in);
    int n = f.degree();
    if (n == 1) return true;
    u64 q = f.q;
    const FieldPoly x = poly_x(q);
    // frob(k) = x^(q^k) mod f by iterated q-th powers.
    auto frob = [&](int k) {
        FieldPoly y = poly_mod(x, f);
        for (int i = 0; i < k; ++i) y = poly_pow_mod(y, q, f);
        return y;
    };
    if (frob(n) != poly_mod(x, f)) return false;
    for (u64 p : prime_divisors(static_cast<u64>(n))) {
        FieldPoly z = frob(n / static_cast<int>(p));
        FieldPoly g = poly_gcd(poly_sub(z, x), f);
        if (g.degree() > 0) return false;
    }
    return true;
}

QuotientRingElem::QuotientRingElem(FieldPoly r, FieldPoly m)
    : residue(std::move(r)), modulus(std::move(m)) {
    if (residue.q != modulus.q) throw usage_error("QuotientRingElem: mixed field sizes");
    if (modulus.degree() < 1) throw usage_error("QuotientRingElem: modulus must be nonconstant");
    residue = poly_mod(residue, modulus);
}

QuotientRingElem qre_make(const FieldPoly& r, const FieldPoly& m) { return {r, m}; }

QuotientRingElem qre_mul(const QuotientRingElem& a, const QuotientRingElem& b) {
    if (a.modulus != b.modulus) throw usage_error("qre_mul: mixed moduli");
    return {poly_mod(poly_mul(a.residue, b.residue), a.modulus), a.modulus};
}

QuotientRingElem qre_pow(const QuotientRingElem& a, u64 e) {
    return {poly_pow_mod(a.residue, e, a.modulus), a.modulus};
}

QuotientRingElem qre_inverse(const QuotientRingElem& a) {
    return {poly_inverse_mod(a.residue, a.modulus), a.modulus};
}

namespace {

// q^d as u64 with an overflow guard; the desk-scale cap keeps q^d modest.
u64 pow_u64_checked(u64 q, int d) {
    u64 r = 1;
    for (int i = 0; i < d; ++i) {
        if (r > ~u64{0} / q) throw usage_error("field extension too large for 64-bit encoding");
        r *= q;
    }
    return r;
}

u64 encode_residue(const FieldPoly& r) {
    u64 v = 0;
    for (std::size_t i = r.c.size(); i-- > 0;) {
        v = v * r.q + r.c[i];
    }
    return v;
}

FieldPoly decode_residue(u64 q, u64 v) {
    std::vector<u64> c;
    while (v) {
        c.push_back(v % q);
        v /= q;
    }
    return FieldPoly(q, std::move(c));
}

} // namespace

QuotientRingElem find_generator(const FieldPoly& c_j) {
    if (!is_irreducible(c_j)) throw usage_error("find_generator: modulus must be irreducible");
    FieldPoly m = poly_make_monic(c_j);
    int d0 = m.degree();
    u64 q = m.q;
    u64 s = pow_u64_checked(q, d0) - 1;
    std::vector<u64> prime_facs = prime_divisors(s);
    for (u64 v = 1; v <= s; ++v) {
        QuotientRingElem cand(decode_residue(q, v), m);
        bool full = true;
        for (u64 p : prime_facs) {
            if (qre_pow(cand, s / p).residue.is_one()) { full = false; break; }
        }
        if (full) return cand;
    }
    throw internal_error("find_generator: no generator found (modulus not irreducible?)");
}

u64 discrete_log(const QuotientRingElem& beta, const QuotientRingElem& y) {
    if (beta.modulus != y.modulus) throw usage_error("discrete_log: mixed moduli");
    if (y.residue.is_zero()) throw usage_error("discrete_log: zero has no logarithm");
    u64 q = beta.modulus.q;
    int d0 = beta.modulus.degree();
    u64 s = pow_u64_checked(q, d0) - 1;
    u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(s))));
    if (m == 0) m = 1;
    std::unordered_map<u64, u64> baby;
    baby.reserve(static_cast<std::size_t>(m) * 2);
    QuotientRingElem g(poly_const(q, 1), beta.modulus);
    for (u64 j = 0; j < m; ++j) {
        baby.emplace(encode_residue(g.residue), j);
        g = qre_mul(g, beta);
    }
    // g is now beta^m; stride through y * beta^(-im).
    QuotientRingElem giant = qre_inverse(g);
    QuotientRingElem x = y;
    for (u64 i = 0; i * m <= s; ++i) {
        auto it = baby.find(encode_residue(x.residue));
        if (it != baby.end()) return (i * m + it->second) % s;
        x = qre_mul(x, giant);
    }
    throw internal_error("discrete_log: not found; base is not a generator or input not a unit");
}

UnitGroupOrder unit_group_order(const std::vector<std::pair<FieldPoly, int>>& factors) {
    if (factors.empty()) throw usage_error("unit_group_order: empty factorization");
    UnitGroupOrder out;
    out.value = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& [f, e] = factors[i];
        if (e < 1) throw usage_error("unit_group_order: multiplicity must be positive");
        if (!is_irreducible(f)) throw usage_error("unit_group_order: factor not irreducible");
        for (std::size_t j = 0; j < i; ++j) {
            if (poly_make_monic(factors[j].first) == poly_make_monic(f))
                throw usage_error("unit_group_order: repeated factor");
        }
        int ni = f.degree();
        mpz_class qz = static_cast<unsigned long>(f.q);
        mpz_class hi, lo;
        mpz_pow_ui(hi.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(e * ni));
        mpz_pow_ui(lo.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>((e - 1) * ni));
        mpz_class ord = hi - lo;
        out.factor_orders.push_back(ord);
        out.value *= ord;
    }
    return out;
}

std::string poly_to_string(const FieldPoly& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = a.c.size(); i-- > 0;) {
        if (a.c[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || a.c[i] != 1) os << a.c[i];
        if (i >= 1) {
            if (a.c[i] != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace polylat
