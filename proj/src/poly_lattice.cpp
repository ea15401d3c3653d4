#include "polylat/poly_lattice.hpp"

#include <algorithm>
#include <utility>

namespace polylat {

namespace {

constexpr u64 kSCap = u64{1} << 40;

// Idempotents e_p of Z_s: e_p = 1 mod p^k, 0 mod the other prime powers.
// Used to steer a row addition so that one update fixes exactly one prime.
std::vector<std::pair<u64, u64>> crt_idempotents(u64 s) {
    std::vector<std::pair<u64, u64>> out;
    for (auto [p, e] : factorize(s)) {
        u64 pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        u64 rest = s / pe;
        u64 idem = mulmod(rest % s, invmod(rest % pe, pe), s);
        out.emplace_back(p, idem);
    }
    return out;
}

u64 sub_mod(u64 a, u64 b, u64 s) { return (a + s - b) % s; }

// log of (x - alpha) in factor j, base the canonical generator.
u64 point_log(const PolyLatticeInstance& inst, std::size_t j, u64 alpha) {
    QuotientRingElem elem = qre_make(poly_linear_root(inst.q, alpha), inst.c_factors[j]);
    return discrete_log(inst.betas[j], elem);
}

} // namespace

std::optional<U64Mat> matrix_inverse_mod(const U64Mat& a, u64 s) {
    if (s < 2) throw usage_error("matrix_inverse_mod: modulus must be >= 2");
    std::size_t t = a.size();
    if (t == 0) throw usage_error("matrix_inverse_mod: empty matrix");
    for (const auto& row : a)
        if (row.size() != t) throw usage_error("matrix_inverse_mod: matrix must be square");

    std::vector<std::vector<u64>> aug(t, std::vector<u64>(2 * t, 0));
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < t; ++j) aug[i][j] = a[i][j] % s;
        aug[i][t + i] = 1 % s;
    }

    const auto idem = crt_idempotents(s);
    for (std::size_t k = 0; k < t; ++k) {
        // Make the pivot a unit mod s: for each prime p dividing both the
        // pivot and s, add e_p times a lower row whose entry survives mod p.
        // The idempotent keeps the other primes' residues untouched, so a
        // matrix invertible mod s always yields a unit pivot here.
        for (auto [p, up] : idem) {
            if (aug[k][k] % p != 0) continue;
            std::size_t donor = t;
            for (std::size_t i = k + 1; i < t; ++i) {
                if (aug[i][k] % p != 0) {
                    donor = i;
                    break;
                }
            }
            if (donor == t) return std::nullopt;
            for (std::size_t j = 0; j < 2 * t; ++j)
                aug[k][j] = (aug[k][j] + mulmod(up, aug[donor][j], s)) % s;
        }
        u64 piv = aug[k][k];
        if (gcd_u64(piv, s) != 1) return std::nullopt;
        u64 inv = invmod(piv, s);
        for (std::size_t j = 0; j < 2 * t; ++j) aug[k][j] = mulmod(aug[k][j], inv, s);
        for (std::size_t r = 0; r < t; ++r) {
            if (r == k || aug[r][k] == 0) continue;
            u64 f = aug[r][k];
            for (std::size_t j = 0; j < 2 * t; ++j)
                aug[r][j] = sub_mod(aug[r][j], mulmod(f, aug[k][j], s), s);
        }
    }

    U64Mat out(t, std::vector<u64>(t));
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) out[i][j] = aug[i][t + j];
    return out;
}

PolyLatticeInstance build_lattice(u64 q, std::vector<FieldPoly> c_factors, std::vector<u64> alphas) {
    PrimeModulus pm(q);
    if (c_factors.empty()) throw usage_error("build_lattice: need at least one factor");
    for (auto& f : c_factors) {
        if (f.q != q) throw usage_error("build_lattice: factor over the wrong field");
        if (f.degree() < 1) throw usage_error("build_lattice: factors must be nonconstant");
        f = poly_make_monic(f);
    }
    int d0 = c_factors[0].degree();
    for (const auto& f : c_factors)
        if (f.degree() != d0) throw usage_error("build_lattice: factors must share one degree");

    u64 qd = 1;
    for (int i = 0; i < d0; ++i) {
        if (qd > kSCap / q) throw usage_error("build_lattice: q^d0 exceeds the 2^40 cap");
        qd *= q;
    }

    for (const auto& f : c_factors)
        if (!is_irreducible(f)) throw usage_error("build_lattice: factors must be irreducible");
    for (std::size_t i = 0; i < c_factors.size(); ++i)
        for (std::size_t j = i + 1; j < c_factors.size(); ++j)
            if (c_factors[i] == c_factors[j]) throw usage_error("build_lattice: repeated factor");

    std::size_t t = c_factors.size();
    std::size_t n = alphas.size();
    if (n <= t) throw usage_error("build_lattice: need more points than factors");
    for (u64 a : alphas)
        if (a >= q) throw usage_error("build_lattice: points must lie in F_q");
    {
        std::vector<u64> sorted = alphas;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw usage_error("build_lattice: repeated point");
    }
    for (const auto& f : c_factors)
        for (u64 a : alphas)
            if (poly_eval(f, a) == 0)
                throw usage_error("build_lattice: point is a root of the modulus");

    PolyLatticeInstance inst;
    inst.q = q;
    inst.d0 = d0;
    inst.s = qd - 1;
    inst.c_factors = std::move(c_factors);
    inst.alphas = std::move(alphas);
    inst.betas.reserve(t);
    for (const auto& f : inst.c_factors) inst.betas.push_back(find_generator(f));

    inst.m_mat.assign(t, std::vector<u64>(t, 0));
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j)
            inst.m_mat[i][j] = point_log(inst, j, inst.alphas[n - t + i]);

    auto inv = matrix_inverse_mod(inst.m_mat, inst.s);
    if (!inv) throw singular_tail_error("build_lattice: tail log matrix is singular mod s");
    inst.m_inv = std::move(*inv);

    inst.g_mat.assign(n - t, std::vector<u64>(t, 0));
    for (std::size_t i = 0; i + t < n; ++i) {
        std::vector<u64> y(t);
        for (std::size_t j = 0; j < t; ++j) y[j] = point_log(inst, j, inst.alphas[i]);
        for (std::size_t j = 0; j < t; ++j) {
            u64 acc = 0;
            for (std::size_t k = 0; k < t; ++k)
                acc = (acc + mulmod(y[k], inst.m_inv[k][j], inst.s)) % inst.s;
            inst.g_mat[i][j] = acc;
        }
    }
    return inst;
}

LatticeBasis lattice_basis(const PolyLatticeInstance& inst) {
    std::size_t n = inst.n(), t = inst.t();
    ZMat rows(n, ZVec(n, ZZ(0)));
    for (std::size_t i = 0; i + t < n; ++i) {
        rows[i][i] = 1;
        for (std::size_t j = 0; j < t; ++j) rows[i][n - t + j] = -ZZ(inst.g_mat[i][j]);
    }
    for (std::size_t j = 0; j < t; ++j) rows[n - t + j][n - t + j] = ZZ(inst.s);
    return make_basis(std::move(rows));
}

U64Mat public_right_block(const PolyLatticeInstance& inst) {
    std::size_t t = inst.t();
    U64Mat h(inst.g_mat.size(), std::vector<u64>(t));
    for (std::size_t i = 0; i < inst.g_mat.size(); ++i)
        for (std::size_t j = 0; j < t; ++j) h[i][j] = (inst.s - inst.g_mat[i][j]) % inst.s;
    return h;
}

std::vector<FieldPoly> phi_map(const PolyLatticeInstance& inst, const ZVec& u) {
    if (u.size() != inst.n()) throw usage_error("phi_map: wrong vector length");
    std::vector<FieldPoly> out;
    out.reserve(inst.t());
    for (std::size_t j = 0; j < inst.t(); ++j) {
        QuotientRingElem acc = qre_make(poly_const(inst.q, 1), inst.c_factors[j]);
        for (std::size_t i = 0; i < inst.n(); ++i) {
            u64 e = mpz_fdiv_ui(u[i].get_mpz_t(), inst.s);
            if (e == 0) continue;
            QuotientRingElem base =
                qre_make(poly_linear_root(inst.q, inst.alphas[i]), inst.c_factors[j]);
            acc = qre_mul(acc, qre_pow(base, e));
        }
        out.push_back(acc.residue);
    }
    return out;
}

bool is_lattice_member(const PolyLatticeInstance& inst, const ZVec& u) {
    for (const auto& r : phi_map(inst, u))
        if (!r.is_one()) return false;
    return true;
}

mpz_class lattice_volume(const PolyLatticeInstance& inst) {
    std::vector<std::pair<FieldPoly, int>> factors;
    factors.reserve(inst.t());
    for (const auto& f : inst.c_factors) factors.emplace_back(f, 1);
    return unit_group_order(factors).value;
}

FieldPoly poly_taylor_shift(const FieldPoly& f, u64 c) {
    if (f.is_zero()) return f;
    FieldPoly lin(f.q, {c % f.q, 1}); // x + c
    FieldPoly res = poly_zero(f.q);
    for (int i = f.degree(); i >= 0; --i)
        res = poly_add(poly_mul(res, lin), poly_const(f.q, f.c[static_cast<std::size_t>(i)]));
    return res;
}

} // namespace polylat
