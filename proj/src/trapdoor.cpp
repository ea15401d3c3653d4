#include "polylat/trapdoor.hpp"

#include <algorithm>

namespace polylat {

namespace {

KeyParams params_of(const PolyLatticeInstance& inst) {
    KeyParams p;
    p.q = inst.q;
    p.n = inst.n();
    p.t = inst.t();
    p.d0 = inst.d0;
    p.d = inst.d();
    p.s = inst.s;
    return p;
}

FieldPoly modulus_product(const PolyLatticeInstance& inst) {
    FieldPoly c = poly_const(inst.q, 1);
    for (const auto& f : inst.c_factors) c = poly_mul(c, f);
    return c;
}

// Combine per-factor residues r_j into the unique r mod c = prod c_j.
FieldPoly crt_combine(const PolyLatticeInstance& inst, const std::vector<FieldPoly>& parts,
                      const FieldPoly& c_full) {
    if (parts.size() == 1) return parts[0];
    FieldPoly r = poly_zero(inst.q);
    for (std::size_t j = 0; j < parts.size(); ++j) {
        FieldPoly cofactor = poly_divmod(c_full, inst.c_factors[j]).quot;
        FieldPoly inv = poly_inverse_mod(poly_mod(cofactor, inst.c_factors[j]), inst.c_factors[j]);
        FieldPoly term = poly_mul(poly_mul(parts[j], inv), cofactor);
        r = poly_mod(poly_add(r, term), c_full);
    }
    return r;
}

// Scan the point set for roots, dividing each one out once. Succeeds when
// exactly d - 1 roots are found and the cofactor is the constant 1.
bool split_by_roots(const PolyLatticeInstance& inst, FieldPoly r, int want_weight,
                    std::vector<std::size_t>& positions) {
    positions.clear();
    for (std::size_t i = 0; i < inst.n() && r.degree() >= 1; ++i) {
        if (poly_eval(r, inst.alphas[i]) != 0) continue;
        r = poly_divmod(r, poly_linear_root(inst.q, inst.alphas[i])).quot;
        positions.push_back(i);
    }
    return static_cast<int>(positions.size()) == want_weight && r.is_one();
}

// Random monic irreducible of the given degree, distinct from prior picks.
FieldPoly random_irreducible(Rng& rng, u64 q, int degree, const std::vector<FieldPoly>& taken) {
    for (;;) {
        std::vector<u64> coeffs(static_cast<std::size_t>(degree) + 1);
        for (int i = 0; i < degree; ++i) coeffs[static_cast<std::size_t>(i)] = rng.below(q);
        coeffs[static_cast<std::size_t>(degree)] = 1;
        FieldPoly f(q, coeffs);
        if (!is_irreducible(f)) continue;
        if (std::find(taken.begin(), taken.end(), f) != taken.end()) continue;
        return f;
    }
}

Masking draw_masking(Rng& rng, std::size_t rows, std::size_t n) {
    Masking mask;
    mask.t_mat.assign(rows, ZVec(rows, ZZ(0)));
    mask.t_inv.assign(rows, ZVec(rows, ZZ(0)));
    for (std::size_t i = 0; i < rows; ++i) {
        mask.t_mat[i][i] = 1;
        mask.t_inv[i][i] = 1;
    }
    const ZZ cap = 4;
    std::size_t ops = 3 * rows;
    for (std::size_t op = 0; op < ops; ++op) {
        std::size_t i = rng.below(rows), j = rng.below(rows);
        if (i == j) continue;
        long sgn = rng.bit() ? 1 : -1;
        bool fits = true;
        for (std::size_t k = 0; k < rows && fits; ++k) {
            ZZ next = mask.t_mat[i][k] + sgn * mask.t_mat[j][k];
            if (abs(next) > cap) fits = false;
        }
        if (!fits) continue;
        // T <- E T (row op) and T^-1 <- T^-1 E^-1 (column op)
        for (std::size_t k = 0; k < rows; ++k) mask.t_mat[i][k] += sgn * mask.t_mat[j][k];
        for (std::size_t k = 0; k < rows; ++k) mask.t_inv[k][j] -= sgn * mask.t_inv[k][i];
    }
    mask.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) mask.perm[i] = i;
    rng.shuffle(mask.perm);
    return mask;
}

} // namespace

std::size_t PublicKey::size_bits() const {
    std::size_t rows = params.n - params.t;
    std::size_t cols = full_h ? params.n : params.t;
    std::size_t bits = static_cast<std::size_t>(1 + floor_log2(params.s - 1));
    return rows * cols * bits;
}

KeyPair keypair_from_instance(PolyLatticeInstance inst) {
    KeyPair kp;
    kp.pk.params = params_of(inst);
    kp.pk.h_right = public_right_block(inst);
    kp.sk.params = kp.pk.params;
    kp.sk.inst = std::move(inst);
    return kp;
}

KeyPair generate(u64 q, std::size_t n, int d, std::size_t t, u64 seed, bool with_masking) {
    PrimeModulus pm(q);
    if (t < 1 || d < 1 || d % static_cast<int>(t) != 0)
        throw usage_error("generate: t must divide d");
    int d0 = d / static_cast<int>(t);
    if (n <= t) throw usage_error("generate: need n > t");
    std::size_t field_need = (d0 == 1) ? n + t : n;
    if (field_need > q) throw usage_error("generate: not enough field elements");

    Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<u64> alphas;
        std::vector<FieldPoly> factors;
        if (d0 == 1) {
            std::vector<u64> pts = rng.distinct(q, n + t);
            alphas.assign(pts.begin(), pts.begin() + static_cast<long>(n));
            for (std::size_t j = 0; j < t; ++j)
                factors.push_back(poly_linear_root(q, pts[n + j]));
        } else {
            alphas = rng.distinct(q, n);
            for (std::size_t j = 0; j < t; ++j)
                factors.push_back(random_irreducible(rng, q, d0, factors));
        }
        PolyLatticeInstance inst;
        try {
            inst = build_lattice(q, std::move(factors), std::move(alphas));
        } catch (const singular_tail_error&) {
            continue;
        }
        KeyPair kp = keypair_from_instance(std::move(inst));
        if (with_masking)
            kp.sk.masking = draw_masking(rng, n - t, n);
        return kp;
    }
    throw singular_tail_error("generate: no invertible tail matrix in 64 attempts");
}

SampledInput sample_input(const PublicKey& pk, u64 seed) {
    Rng rng(seed);
    const KeyParams& p = pk.params;
    SampledInput out;
    out.m.resize(p.n - p.t);
    for (auto& v : out.m) v = rng.below(p.s);
    out.e.assign(p.n, 0);
    for (u64 pos : rng.distinct(p.n, static_cast<std::size_t>(p.d - 1)))
        out.e[static_cast<std::size_t>(pos)] = 1;
    return out;
}

std::vector<u64> evaluate(const PublicKey& pk, const std::vector<u64>& m,
                          const std::vector<int>& e) {
    const KeyParams& p = pk.params;
    if (m.size() != p.n - p.t) throw usage_error("evaluate: message length must be n - t");
    if (e.size() != p.n) throw usage_error("evaluate: error length must be n");
    for (u64 v : m)
        if (v >= p.s) throw usage_error("evaluate: message entry out of range");
    for (int v : e)
        if (v < -1 || v > 1) throw usage_error("evaluate: error entries must be -1, 0 or 1");

    auto with_err = [&](u64 acc, std::size_t i) {
        return (acc + p.s + static_cast<u64>(e[i] + 1) - 1) % p.s;
    };
    std::vector<u64> c(p.n);
    if (pk.full_h) {
        const U64Mat& h = *pk.full_h;
        for (std::size_t k = 0; k < p.n; ++k) {
            u64 acc = 0;
            for (std::size_t i = 0; i + p.t < p.n; ++i)
                acc = (acc + mulmod(m[i], h[i][k], p.s)) % p.s;
            c[k] = with_err(acc, k);
        }
        return c;
    }
    for (std::size_t i = 0; i + p.t < p.n; ++i) c[i] = with_err(m[i], i);
    for (std::size_t j = 0; j < p.t; ++j) {
        u64 acc = 0;
        for (std::size_t i = 0; i + p.t < p.n; ++i)
            acc = (acc + mulmod(m[i], pk.h_right[i][j], p.s)) % p.s;
        c[p.n - p.t + j] = with_err(acc, p.n - p.t + j);
    }
    return c;
}

InvertResult invert(const TrapdoorPrivateKey& sk, const std::vector<u64>& c) {
    return invert_weights(sk, c, sk.params.d - 1, sk.params.d - 1);
}

InvertResult invert_weights(const TrapdoorPrivateKey& sk,
                            const std::vector<u64>& c, int pos_weight,
                            int neg_weight) {
    const KeyParams& p = sk.params;
    const PolyLatticeInstance& inst = sk.inst;
    if (c.size() != p.n) throw usage_error("invert: input length must be n");
    for (u64 v : c)
        if (v >= p.s) throw usage_error("invert: entry out of range");
    if (pos_weight < 0 || neg_weight < 0 ||
        static_cast<std::size_t>(pos_weight) > p.n ||
        static_cast<std::size_t>(neg_weight) > p.n) {
        throw usage_error("invert: weight out of range");
    }

    std::vector<FieldPoly> parts;
    parts.reserve(p.t);
    for (std::size_t j = 0; j < p.t; ++j) {
        QuotientRingElem acc = qre_make(poly_const(p.q, 1), inst.c_factors[j]);
        for (std::size_t i = 0; i < p.n; ++i) {
            if (c[i] == 0) continue;
            QuotientRingElem base =
                qre_make(poly_linear_root(p.q, inst.alphas[i]), inst.c_factors[j]);
            acc = qre_mul(acc, qre_pow(base, c[i]));
        }
        parts.push_back(acc.residue);
    }
    FieldPoly c_full = modulus_product(inst);
    FieldPoly r = crt_combine(inst, parts, c_full);

    InvertResult res;
    std::vector<std::size_t> positions;
    int sign = 0;
    if (split_by_roots(inst, r, pos_weight, positions)) {
        sign = 1;
    } else {
        FieldPoly r_inv;
        bool invertible = true;
        try {
            r_inv = poly_inverse_mod(r, c_full);
        } catch (const usage_error&) {
            invertible = false;
        }
        if (invertible && split_by_roots(inst, r_inv, neg_weight, positions)) {
            sign = -1;
            res.used_inverse = true;
        }
    }
    if (sign == 0) return res;

    res.e.assign(p.n, 0);
    for (std::size_t i : positions) res.e[i] = sign;
    res.m.resize(p.n - p.t);
    for (std::size_t i = 0; i + p.t < p.n; ++i)
        res.m[i] = (c[i] + p.s - static_cast<u64>(res.e[i] + 1) + 1) % p.s;
    res.ok = true;
    return res;
}

PublicKey apply_masking(const TrapdoorPrivateKey& sk, const PublicKey& pk) {
    if (!sk.masking) throw usage_error("apply_masking: key has no masking data");
    const Masking& mask = *sk.masking;
    const KeyParams& p = pk.params;
    std::size_t rows = p.n - p.t;

    // H = (I | h_right) as exact integers, then T H, then the column shuffle.
    ZMat th(rows, ZVec(p.n, ZZ(0)));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < rows; ++k) {
            if (mask.t_mat[i][k] == 0) continue;
            th[i][k] += mask.t_mat[i][k];
            for (std::size_t j = 0; j < p.t; ++j)
                th[i][rows + j] += mask.t_mat[i][k] * ZZ(pk.h_right[k][j]);
        }
    }
    PublicKey out;
    out.params = p;
    U64Mat hp(rows, std::vector<u64>(p.n, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < p.n; ++k)
            hp[i][mask.perm[k]] = mpz_fdiv_ui(th[i][k].get_mpz_t(), p.s);
    out.full_h = std::move(hp);
    return out;
}

InvertResult invert_masked(const TrapdoorPrivateKey& sk, const std::vector<u64>& c) {
    if (!sk.masking) throw usage_error("invert_masked: key has no masking data");
    const Masking& mask = *sk.masking;
    const KeyParams& p = sk.params;
    if (c.size() != p.n) throw usage_error("invert_masked: input length must be n");

    std::vector<u64> unshuffled(p.n);
    for (std::size_t k = 0; k < p.n; ++k) unshuffled[k] = c[mask.perm[k]];
    InvertResult inner = invert(sk, unshuffled);
    if (!inner.ok) return inner;

    InvertResult res = inner;
    std::size_t rows = p.n - p.t;
    for (std::size_t i = 0; i < rows; ++i) {
        ZZ acc = 0;
        for (std::size_t k = 0; k < rows; ++k)
            if (mask.t_inv[k][i] != 0) acc += ZZ(inner.m[k]) * mask.t_inv[k][i];
        res.m[i] = mpz_fdiv_ui(acc.get_mpz_t(), p.s);
    }
    res.e.assign(p.n, 0);
    for (std::size_t k = 0; k < p.n; ++k) res.e[mask.perm[k]] = inner.e[k];
    return res;
}

} // namespace polylat
