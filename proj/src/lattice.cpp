#include "polylat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace polylat {

namespace {

constexpr double kTinyNorm = 1e-280;

struct FpState {
    std::vector<std::vector<double>> r;   // fp image of the integer rows
    std::vector<std::vector<double>> mu;  // mu[i][j], j < i
    std::vector<double> bsq;              // |b*_i|^2

    void load_row(const ZMat& rows, std::size_t i) {
        r[i].resize(rows[i].size());
        for (std::size_t j = 0; j < rows[i].size(); ++j) r[i][j] = rows[i][j].get_d();
    }

    // Modified Gram-Schmidt over doubles, from scratch.
    void recompute(const ZMat& rows) {
        std::size_t m = rows.size();
        std::size_t n = m ? rows[0].size() : 0;
        r.assign(m, {});
        mu.assign(m, std::vector<double>(m, 0.0));
        bsq.assign(m, 0.0);
        std::vector<std::vector<double>> bstar(m, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < m; ++i) {
            load_row(rows, i);
            bstar[i] = r[i];
            for (std::size_t j = 0; j < i; ++j) {
                double num = 0;
                for (std::size_t c = 0; c < n; ++c) num += bstar[i][c] * bstar[j][c];
                double m_ij = bsq[j] > kTinyNorm ? num / bsq[j] : 0.0;
                mu[i][j] = m_ij;
                if (m_ij != 0.0)
                    for (std::size_t c = 0; c < n; ++c) bstar[i][c] -= m_ij * bstar[j][c];
            }
            double nn = 0;
            for (double v : bstar[i]) nn += v * v;
            bsq[i] = nn;
        }
    }
};

void validate_basis(const LatticeBasis& b) {
    if (b.rows.empty()) throw usage_error("lattice: empty basis");
    std::size_t n = b.rows[0].size();
    if (n == 0) throw usage_error("lattice: zero ambient dimension");
    for (const auto& r : b.rows)
        if (r.size() != n) throw usage_error("lattice: ragged rows");
    if (b.rows.size() > n) throw usage_error("lattice: more rows than columns");
}

// Full size reduction of row k against rows k-1..0 using fp mu, with exact
// integer row updates. Returns true when the row changed.
bool size_reduce_row(ZMat& rows, FpState& st, std::size_t k) {
    bool changed = false;
    for (std::size_t j = k; j-- > 0;) {
        double mval = st.mu[k][j];
        if (std::fabs(mval) <= 0.5) continue;
        if (std::fabs(mval) > 9e15) throw internal_error("lll: mu overflow, basis out of range");
        long long q = llround(mval);
        ZZ qz(static_cast<long>(q));
        rows[k] = row_sub_scaled(rows[k], qz, rows[j]);
        double qd = static_cast<double>(q);
        for (std::size_t i = 0; i < j; ++i) st.mu[k][i] -= qd * st.mu[j][i];
        st.mu[k][j] -= qd;
        changed = true;
    }
    if (changed) st.load_row(rows, k);
    return changed;
}

// Floating-point LLL workhorse. With allow_removal, exactly-zero rows
// (which appear when a dependent row is inserted by BKZ) are deleted.
void lll_core(ZMat& rows, double delta, bool allow_removal, u64* swaps_out = nullptr) {
    if (allow_removal) {
        std::erase_if(rows, [](const ZVec& r) { return is_zero_row(r); });
    }
    if (rows.size() <= 1) return;
    FpState st;
    st.recompute(rows);
    std::size_t k = 1;
    u64 iters = 0, swaps = 0, since_recompute = 0;
    while (k < rows.size()) {
        if (++iters > 200000000ull) throw internal_error("lll: iteration budget exceeded");
        size_reduce_row(rows, st, k);
        if (allow_removal && is_zero_row(rows[k])) {
            rows.erase(rows.begin() + static_cast<long>(k));
            st.recompute(rows);
            k = 1;
            continue;
        }
        double mo = st.mu[k][k - 1];
        if (st.bsq[k] >= (delta - mo * mo) * st.bsq[k - 1]) {
            ++k;
            continue;
        }
        double bnew = st.bsq[k] + mo * mo * st.bsq[k - 1];
        if (!(bnew > kTinyNorm)) {
            // Projected pair is degenerate; refresh and let the removal or
            // overflow guards take over on the next pass.
            st.recompute(rows);
            if (allow_removal) {
                k = 1;
                continue;
            }
            throw internal_error("lll: degenerate projection on full-rank input");
        }
        std::swap(rows[k - 1], rows[k]);
        std::swap(st.r[k - 1], st.r[k]);
        double mu_new = mo * st.bsq[k - 1] / bnew;
        st.bsq[k] = st.bsq[k - 1] * st.bsq[k] / bnew;
        st.bsq[k - 1] = bnew;
        for (std::size_t j = 0; j + 1 < k; ++j) std::swap(st.mu[k - 1][j], st.mu[k][j]);
        st.mu[k][k - 1] = mu_new;
        for (std::size_t i = k + 1; i < rows.size(); ++i) {
            double t = st.mu[i][k];
            st.mu[i][k] = st.mu[i][k - 1] - mo * t;
            st.mu[i][k - 1] = t + mu_new * st.mu[i][k];
        }
        ++swaps;
        if (++since_recompute >= 4096) {
            st.recompute(rows);
            since_recompute = 0;
        }
        k = (k > 1) ? k - 1 : 1;
    }
    if (swaps_out) *swaps_out += swaps;
}

// Exact LLL refinement using integral Gram-Schmidt data; enforces
// |mu| <= 1/2 and the delta-Lovasz condition in integer arithmetic. Intended
// for input that is already nearly reduced.
void exact_lll_refine(ZMat& rows, long dnum, long dden) {
    std::size_t m = rows.size();
    if (m <= 1) return;
    for (u64 rounds = 0;; ++rounds) {
        if (rounds > 100000) throw internal_error("exact lll refinement did not converge");
        IntegralGS gs = integral_gs(rows);
        for (std::size_t i = 1; i < m; ++i) {
            for (std::size_t j = i; j-- > 0;) {
                ZZ q = round_half_away(gs.lam[i][j], gs.dd[j + 1]);
                if (q == 0) continue;
                rows[i] = row_sub_scaled(rows[i], q, rows[j]);
                for (std::size_t jj = 0; jj < j; ++jj) gs.lam[i][jj] -= q * gs.lam[j][jj];
                gs.lam[i][j] -= q * gs.dd[j + 1];
            }
        }
        std::size_t viol = m;
        for (std::size_t k = 1; k < m; ++k) {
            // delta-Lovasz: dd[k+1]*dd[k-1] >= delta*dd[k]^2 - lam^2
            ZZ lhs = dden * gs.dd[k + 1] * gs.dd[k - 1];
            ZZ rhs = dnum * gs.dd[k] * gs.dd[k] - dden * gs.lam[k][k - 1] * gs.lam[k][k - 1];
            if (lhs < rhs) { viol = k; break; }
        }
        if (viol == m) return;
        std::swap(rows[viol - 1], rows[viol]);
    }
}

constexpr std::size_t kExactLimit = 80;

struct EnumCtx {
    const std::vector<std::vector<double>>& mu;
    const std::vector<double>& bsq;
    std::size_t j, k;
    double cur_bound;
    const std::vector<double>* profile;
    u64 cap;
    u64 nodes = 0;
    bool aborted = false;
    bool found = false;
    double best_norm = 0;
    std::vector<long long> xcur, xbest;

    double level_bound(std::size_t fixed) const {
        double b = cur_bound;
        if (profile) {
            if (fixed > profile->size())
                throw usage_error("svp_enumerate: pruning profile shorter than rank");
            double p = (*profile)[fixed - 1];
            if (!(p > 0.0) || p > 1.0)
                throw usage_error("svp_enumerate: pruning profile entries must lie in (0, 1]");
            b *= p;
        }
        return b * (1 + 1e-9) + 1e-9;
    }
};

void enum_level(EnumCtx& cx, std::size_t i, double partial, bool top_zero) {
    if (cx.aborted) return;
    double c = 0;
    for (std::size_t l = i + 1; l <= cx.k; ++l)
        c -= static_cast<double>(cx.xcur[l]) * cx.mu[l][i];
    long long r0 = llround(c);
    int dir = (c >= static_cast<double>(r0)) ? 1 : -1;
    double bound = cx.level_bound(cx.k - i + 1);
    for (long long step = 0;; ++step) {
        long long x;
        if (top_zero) {
            x = step; // only the nonnegative half; the sign symmetry is global
        } else {
            long long off = (step + 1) / 2;
            x = (step % 2 == 1) ? r0 + dir * off : r0 - dir * off;
        }
        if (++cx.nodes > cx.cap) { cx.aborted = true; return; }
        double y = static_cast<double>(x) - c;
        double rho = partial + y * y * cx.bsq[i];
        if (rho > bound) break; // |y| is nondecreasing along the zigzag
        cx.xcur[i] = x;
        if (i == cx.j) {
            bool all_zero = top_zero && x == 0;
            if (!all_zero && (!cx.found || rho < cx.best_norm)) {
                cx.found = true;
                cx.best_norm = rho;
                cx.xbest.assign(cx.xcur.begin() + static_cast<long>(cx.j),
                                cx.xcur.begin() + static_cast<long>(cx.k) + 1);
                cx.cur_bound = std::min(cx.cur_bound, rho);
                bound = cx.level_bound(cx.k - i + 1);
            }
        } else {
            enum_level(cx, i - 1, rho, top_zero && x == 0);
            if (cx.aborted) return;
            bound = cx.level_bound(cx.k - i + 1); // best may have shrunk
        }
    }
}

// Enumerate the projected block [j, k]; returns coefficients relative to
// rows j..k when a nonzero vector with squared projected norm < bound exists.
EnumCtx enumerate_block(const FpState& st, std::size_t j, std::size_t k, double bound,
                        const std::vector<double>* profile, u64 cap) {
    EnumCtx cx{st.mu, st.bsq, j, k, bound, profile, cap};
    cx.xcur.assign(k + 1, 0);
    enum_level(cx, k, 0.0, true);
    return cx;
}

} // namespace

LatticeBasis make_basis(ZMat rows) {
    LatticeBasis b{std::move(rows)};
    validate_basis(b);
    return b;
}

ZVec apply_coeffs(const LatticeBasis& b, const ZVec& coeffs) {
    if (coeffs.size() != b.rank()) throw usage_error("apply_coeffs: size mismatch");
    ZVec v(b.ambient(), ZZ(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (std::size_t c = 0; c < v.size(); ++c) v[c] += coeffs[i] * b.rows[i][c];
    return v;
}

GramSchmidtData gram_schmidt(const LatticeBasis& b) {
    validate_basis(b);
    std::size_t m = b.rank();
    GramSchmidtData out;
    out.mu.resize(m);
    out.bstar_norm_sq.resize(m);
    if (m <= kExactLimit) {
        IntegralGS gs = integral_gs(b.rows);
        for (std::size_t i = 0; i < m; ++i) {
            out.mu[i].resize(i);
            for (std::size_t j = 0; j < i; ++j) {
                QQ v(gs.lam[i][j], gs.dd[j + 1]);
                v.canonicalize();
                out.mu[i][j] = v;
            }
            QQ nm(gs.dd[i + 1], gs.dd[i]);
            nm.canonicalize();
            out.bstar_norm_sq[i] = nm;
        }
        out.exact = true;
        return out;
    }
    FpState st;
    st.recompute(b.rows);
    for (std::size_t i = 0; i < m; ++i) {
        out.mu[i].resize(i);
        for (std::size_t j = 0; j < i; ++j) out.mu[i][j] = QQ(st.mu[i][j]);
        out.bstar_norm_sq[i] = QQ(st.bsq[i]);
    }
    out.exact = false;
    return out;
}

ReductionReport reduction_report(const LatticeBasis& b) {
    validate_basis(b);
    std::size_t m = b.rank();
    // log2 of the volume: exact determinant route at moderate rank, fp
    // Gram-Schmidt product beyond.
    double log2_vol = 0;
    if (m <= kExactLimit) {
        IntegralGS gs = integral_gs(b.rows);
        long exp2 = 0;
        double mant = mpz_get_d_2exp(&exp2, gs.dd[m].get_mpz_t());
        log2_vol = 0.5 * (std::log2(mant) + static_cast<double>(exp2));
    } else {
        FpState st;
        st.recompute(b.rows);
        for (std::size_t i = 0; i < m; ++i) {
            if (!(st.bsq[i] > 0)) throw usage_error("reduction_report: rank-deficient basis");
            log2_vol += 0.5 * std::log2(st.bsq[i]);
        }
    }
    auto log2_norm = [&](const ZVec& r) {
        ZZ n2 = norm_sq(r);
        if (n2 == 0) throw usage_error("reduction_report: zero row");
        long e = 0;
        double mant = mpz_get_d_2exp(&e, n2.get_mpz_t());
        return 0.5 * (std::log2(mant) + static_cast<double>(e));
    };
    ReductionReport rep;
    double l2b1 = log2_norm(b.rows[0]);
    double minlog = l2b1, sumlog = 0;
    for (const auto& r : b.rows) {
        double v = log2_norm(r);
        minlog = std::min(minlog, v);
        sumlog += v;
    }
    double md = static_cast<double>(m);
    rep.shortest_row_norm = std::exp2(minlog);
    rep.hermite_factor = std::exp2(l2b1 - log2_vol / md);
    rep.root_hermite = std::exp2((l2b1 - log2_vol / md) / md);
    rep.orthogonality_defect = std::exp2(sumlog - log2_vol);
    return rep;
}

LatticeBasis lll_reduce(const LatticeBasis& b, double delta) {
    validate_basis(b);
    if (!(delta > 0.25) || !(delta < 1.0))
        throw usage_error("lll_reduce: delta must lie in (1/4, 1)");
    ZMat rows = b.rows;
    if (rows.size() <= kExactLimit) {
        try {
            (void)integral_gs(rows);
        } catch (const internal_error&) {
            throw usage_error("lll_reduce: basis rows are linearly dependent");
        }
    }
    lll_core(rows, delta, false);
    if (rows.size() <= kExactLimit) {
        long dnum = std::lround(delta * 10000.0);
        exact_lll_refine(rows, dnum, 10000);
    }
    return LatticeBasis{std::move(rows)};
}

bool is_lll_reduced_exact(const LatticeBasis& b, long delta_num, long delta_den) {
    validate_basis(b);
    if (b.rank() > kExactLimit)
        throw usage_error("is_lll_reduced_exact: rank above the exactness limit");
    IntegralGS gs = integral_gs(b.rows);
    std::size_t m = b.rank();
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            // |mu_ij| <= 1/2 <=> |2 lam| <= dd[j+1]
            if (cmp(2 * abs(gs.lam[i][j]), gs.dd[j + 1]) > 0) return false;
        }
    for (std::size_t k = 1; k < m; ++k) {
        ZZ lhs = delta_den * gs.dd[k + 1] * gs.dd[k - 1];
        ZZ rhs = delta_num * gs.dd[k] * gs.dd[k] - delta_den * gs.lam[k][k - 1] * gs.lam[k][k - 1];
        if (lhs < rhs) return false;
    }
    return true;
}

LatticeBasis bkz_reduce(const LatticeBasis& b, int block_size, double delta, int max_tours,
                        BkzStats* stats) {
    validate_basis(b);
    std::size_t m = b.rank();
    if (block_size < 2) throw usage_error("bkz_reduce: block size must be at least 2");
    if (static_cast<std::size_t>(block_size) > m)
        throw usage_error("bkz_reduce: block size exceeds basis rank");
    if (max_tours < 1) throw usage_error("bkz_reduce: max_tours must be positive");
    ZMat rows = b.rows;
    lll_core(rows, delta, false);
    BkzStats local;
    const u64 block_cap = 100000000ull; // per-block enumeration budget
    FpState st;
    bool dirty = true;
    for (int tour = 0; tour < max_tours; ++tour) {
        ++local.tours;
        bool changed = false;
        for (std::size_t j = 0; j + 1 < m; ++j) {
            std::size_t k = std::min(j + static_cast<std::size_t>(block_size) - 1, m - 1);
            if (dirty) {
                st.recompute(rows);
                dirty = false;
            }
            double bound = delta * st.bsq[j];
            EnumCtx cx = enumerate_block(st, j, k, bound, nullptr, block_cap);
            local.enum_nodes += cx.nodes;
            if (!cx.found || cx.aborted || !(cx.best_norm < bound)) continue;
            // Insert the improving combination ahead of the block, then let
            // removal-LLL restore a basis of the same lattice.
            ZVec coeffs(m, ZZ(0));
            for (std::size_t i = j; i <= k; ++i)
                coeffs[i] = ZZ(static_cast<long>(cx.xbest[i - j]));
            ZVec v = apply_coeffs(LatticeBasis{rows}, coeffs);
            ZMat sub(rows.begin(), rows.begin() + static_cast<long>(k) + 1);
            sub.insert(sub.begin() + static_cast<long>(j), v);
            lll_core(sub, delta, true);
            if (sub.size() != k + 1)
                throw internal_error("bkz_reduce: insertion did not preserve rank");
            std::copy(sub.begin(), sub.end(), rows.begin());
            ++local.insertions;
            changed = true;
            dirty = true;
        }
        if (!changed) break;
    }
    lll_core(rows, delta, false);
    if (m <= kExactLimit) {
        long dnum = std::lround(delta * 10000.0);
        exact_lll_refine(rows, dnum, 10000);
    }
    if (stats) *stats = local;
    return LatticeBasis{std::move(rows)};
}

CvpResult babai_nearest_plane(const LatticeBasis& b, const ZVec& target) {
    validate_basis(b);
    if (target.size() != b.ambient()) throw usage_error("babai: target dimension mismatch");
    std::size_t m = b.rank();
    ZVec coeffs(m, ZZ(0));
    if (m <= kExactLimit) {
        IntegralGS gs = integral_gs(b.rows);
        std::vector<ZZ> lt = integral_gs_target(gs, b.rows, target);
        for (std::size_t i = m; i-- > 0;) {
            ZZ num = lt[i];
            for (std::size_t j = i + 1; j < m; ++j) num -= coeffs[j] * gs.lam[j][i];
            coeffs[i] = round_half_away(num, gs.dd[i + 1]);
        }
    } else {
        FpState st;
        st.recompute(b.rows);
        // b* vectors are needed explicitly for the projections
        std::size_t n = b.ambient();
        std::vector<std::vector<double>> bstar(m, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t c = 0; c < n; ++c) bstar[i][c] = b.rows[i][c].get_d();
            for (std::size_t j = 0; j < i; ++j)
                for (std::size_t c = 0; c < n; ++c) bstar[i][c] -= st.mu[i][j] * bstar[j][c];
        }
        ZVec resid = target;
        for (std::size_t i = m; i-- > 0;) {
            double num = 0;
            for (std::size_t c = 0; c < n; ++c) num += resid[c].get_d() * bstar[i][c];
            if (!(st.bsq[i] > 0)) throw usage_error("babai: rank-deficient basis");
            long long q = llround(num / st.bsq[i]);
            coeffs[i] = ZZ(static_cast<long>(q));
            if (q != 0) resid = row_sub_scaled(resid, coeffs[i], b.rows[i]);
        }
    }
    CvpResult res;
    res.closest = apply_coeffs(b, coeffs);
    res.error.resize(target.size());
    for (std::size_t c = 0; c < target.size(); ++c) res.error[c] = target[c] - res.closest[c];
    res.exact = false;
    return res;
}

LatticeBasis embed_cvp_to_svp(const LatticeBasis& b, const ZVec& target, const ZZ& embed_const) {
    validate_basis(b);
    if (target.size() != b.ambient()) throw usage_error("embed: target dimension mismatch");
    if (embed_const <= 0) throw usage_error("embed: embedding constant must be positive");
    ZMat rows;
    rows.reserve(b.rank() + 1);
    for (const auto& r : b.rows) {
        ZVec e = r;
        e.push_back(0);
        rows.push_back(std::move(e));
    }
    ZVec t = target;
    t.push_back(embed_const);
    rows.push_back(std::move(t));
    return LatticeBasis{std::move(rows)};
}

std::optional<ZVec> svp_enumerate(const LatticeBasis& b, double radius_sq,
                                  const std::vector<double>* profile, u64 node_cap,
                                  bool* aborted, u64* nodes_visited) {
    validate_basis(b);
    if (!(radius_sq > 0)) throw usage_error("svp_enumerate: radius must be positive");
    FpState st;
    st.recompute(b.rows);
    EnumCtx cx = enumerate_block(st, 0, b.rank() - 1, radius_sq, profile, node_cap);
    if (aborted) *aborted = cx.aborted;
    if (nodes_visited) *nodes_visited = cx.nodes;
    if (!cx.found) return std::nullopt;
    ZVec coeffs(b.rank());
    for (std::size_t i = 0; i < b.rank(); ++i) coeffs[i] = ZZ(static_cast<long>(cx.xbest[i]));
    return coeffs;
}

namespace {

void check_brute_budget(std::size_t m, long coeff_bound) {
    if (coeff_bound < 1) throw usage_error("brute force: coefficient bound must be positive");
    double states = 1;
    for (std::size_t i = 0; i < m; ++i) states *= 2.0 * static_cast<double>(coeff_bound) + 1.0;
    if (states > 1e8) throw usage_error("brute force: search space exceeds the guard (1e8 states)");
}

} // namespace

ZVec brute_force_svp(const LatticeBasis& b, long coeff_bound) {
    validate_basis(b);
    std::size_t m = b.rank();
    check_brute_budget(m, coeff_bound);
    std::vector<long> x(m, -coeff_bound);
    ZVec best;
    ZZ best_norm = -1;
    for (;;) {
        // skip combinations whose first nonzero coefficient is negative
        bool zero = true, skip = false;
        for (std::size_t i = 0; i < m; ++i) {
            if (x[i] != 0) {
                zero = false;
                skip = x[i] < 0;
                break;
            }
        }
        if (!zero && !skip) {
            ZVec coeffs(m);
            for (std::size_t i = 0; i < m; ++i) coeffs[i] = x[i];
            ZVec v = apply_coeffs(b, coeffs);
            ZZ n2 = norm_sq(v);
            if (n2 > 0 && (best_norm < 0 || n2 < best_norm)) {
                best_norm = n2;
                best = v;
            }
        }
        std::size_t i = m;
        while (i-- > 0) {
            if (x[i] < coeff_bound) {
                ++x[i];
                break;
            }
            x[i] = -coeff_bound;
            if (i == 0) {
                if (best_norm < 0) throw internal_error("brute_force_svp: no nonzero vector");
                return best;
            }
        }
    }
}

CvpResult brute_force_cvp(const LatticeBasis& b, const ZVec& target, long coeff_bound) {
    validate_basis(b);
    if (target.size() != b.ambient()) throw usage_error("brute force: target dimension mismatch");
    std::size_t m = b.rank();
    check_brute_budget(m, coeff_bound);
    // center the search box on the nearest-plane seed so the true closest
    // point is inside for any sensible bound
    CvpResult seed = babai_nearest_plane(b, target);
    ZVec center(m);
    // Recover seed coefficients by exact back-substitution on the integral GS.
    IntegralGS gs = integral_gs(b.rows);
    std::vector<ZZ> lt = integral_gs_target(gs, b.rows, seed.closest);
    for (std::size_t i = m; i-- > 0;) {
        ZZ num = lt[i];
        for (std::size_t j = i + 1; j < m; ++j) num -= center[j] * gs.lam[j][i];
        // the seed is a lattice point, so the division is exact
        ZZ c = round_half_away(num, gs.dd[i + 1]);
        center[i] = c;
    }
    std::vector<long> off(m, -coeff_bound);
    ZVec bestc;
    ZZ best_norm = -1;
    for (;;) {
        ZVec coeffs(m);
        for (std::size_t i = 0; i < m; ++i) coeffs[i] = center[i] + off[i];
        ZVec v = apply_coeffs(b, coeffs);
        ZZ n2 = 0;
        for (std::size_t c = 0; c < v.size(); ++c) {
            ZZ dcomp = target[c] - v[c];
            n2 += dcomp * dcomp;
        }
        if (best_norm < 0 || n2 < best_norm) {
            best_norm = n2;
            bestc = v;
        }
        std::size_t i = m;
        bool done = false;
        while (i-- > 0) {
            if (off[i] < coeff_bound) {
                ++off[i];
                break;
            }
            off[i] = -coeff_bound;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    CvpResult res;
    res.closest = bestc;
    res.error.resize(target.size());
    for (std::size_t c = 0; c < target.size(); ++c) res.error[c] = target[c] - res.closest[c];
    res.exact = true;
    return res;
}

} // namespace polylat
