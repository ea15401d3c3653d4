#include "polylat/matz.hpp"

namespace polylat {

ZZ dot(const ZVec& a, const ZVec& b) {
    if (a.size() != b.size()) throw usage_error("dot: size mismatch");
    ZZ s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

ZVec row_sub_scaled(const ZVec& a, const ZZ& k, const ZVec& b) {
    if (a.size() != b.size()) throw usage_error("row_sub_scaled: size mismatch");
    ZVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - k * b[i];
    return r;
}

bool is_zero_row(const ZVec& a) {
    for (const ZZ& v : a)
        if (v != 0) return false;
    return true;
}

ZZ norm_sq(const ZVec& a) { return dot(a, a); }

ZZ det_exact(ZMat a) {
    std::size_t n = a.size();
    if (n == 0) throw usage_error("det_exact: empty matrix");
    for (auto& r : a)
        if (r.size() != n) throw usage_error("det_exact: not square");
    int sign = 1;
    ZZ prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                ZZ t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

ZMat gram(const ZMat& rows) {
    std::size_t m = rows.size();
    ZMat g(m, ZVec(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            g[i][j] = dot(rows[i], rows[j]);
            g[j][i] = g[i][j];
        }
    return g;
}

IntegralGS integral_gs(const ZMat& rows) {
    std::size_t m = rows.size();
    if (m == 0) throw usage_error("integral_gs: empty basis");
    ZMat g = gram(rows);
    IntegralGS gs;
    gs.dd.assign(m + 1, ZZ(1));
    gs.lam.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        gs.lam[i].resize(i);
        for (std::size_t j = 0; j <= i; ++j) {
            ZZ u = g[i][j];
            for (std::size_t k = 0; k < j; ++k) {
                ZZ t = gs.dd[k + 1] * u - gs.lam[i][k] * gs.lam[j][k];
                mpz_divexact(u.get_mpz_t(), t.get_mpz_t(), gs.dd[k].get_mpz_t());
            }
            if (j < i)
                gs.lam[i][j] = u;
            else {
                if (u <= 0) throw internal_error("integral_gs: rows are linearly dependent");
                gs.dd[i + 1] = u;
            }
        }
    }
    return gs;
}

std::vector<ZZ> integral_gs_target(const IntegralGS& gs, const ZMat& rows, const ZVec& target) {
    std::size_t m = rows.size();
    std::vector<ZZ> lt(m);
    for (std::size_t j = 0; j < m; ++j) {
        ZZ u = dot(target, rows[j]);
        for (std::size_t k = 0; k < j; ++k) {
            ZZ t = gs.dd[k + 1] * u - lt[k] * gs.lam[j][k];
            mpz_divexact(u.get_mpz_t(), t.get_mpz_t(), gs.dd[k].get_mpz_t());
        }
        lt[j] = u;
    }
    return lt;
}

ZZ round_half_away(const ZZ& num, const ZZ& den) {
    if (den <= 0) throw usage_error("round_half_away: denominator must be positive");
    ZZ two_den = 2 * den;
    ZZ q;
    if (num >= 0) {
        ZZ t = 2 * num + den;
        mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), two_den.get_mpz_t());
        return q;
    }
    ZZ t = -2 * num + den;
    mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), two_den.get_mpz_t());
    return -q;
}

ZMat hnf(ZMat a) {
    if (a.empty()) return a;
    std::size_t m = a.size(), n = a[0].size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        // euclidean elimination below row r in this column
        for (;;) {
            std::size_t piv = m;
            for (std::size_t i = r; i < m; ++i) {
                if (a[i][col] == 0) continue;
                if (piv == m || cmp(abs(a[i][col]), abs(a[piv][col])) < 0) piv = i;
            }
            if (piv == m) break; // column clear below r
            std::swap(a[r], a[piv]);
            bool any = false;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (a[i][col] == 0) continue;
                ZZ q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
                if (q != 0) a[i] = row_sub_scaled(a[i], q, a[r]);
                if (a[i][col] != 0) any = true;
            }
            if (!any) break;
        }
        if (a[r][col] == 0) continue;
        if (a[r][col] < 0)
            for (auto& v : a[r]) v = -v;
        for (std::size_t i = 0; i < r; ++i) {
            ZZ q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
            if (q != 0) a[i] = row_sub_scaled(a[i], q, a[r]);
        }
        ++r;
    }
    a.resize(r);
    return a;
}

std::optional<ZMat> unimodular_transform(const ZMat& from, const ZMat& to) {
    std::size_t m = from.size();
    if (m == 0 || to.size() != m || from[0].size() != to[0].size())
        throw usage_error("unimodular_transform: shape mismatch");
    // Solve U * G = T * F^t where G = F * F^t; G is invertible for full row
    // rank F, and U = T * F^t * G^{-1} is the only candidate.
    ZMat g = gram(from);
    std::size_t n = from[0].size();
    ZMat rhs(m, ZVec(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) rhs[i][j] = dot(to[i], from[j]);
    // Row-reduce [G | I] over the rationals once, then apply to each rhs row.
    std::vector<std::vector<QQ>> aug(m, std::vector<QQ>(2 * m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug[i][j] = QQ(g[i][j]);
        aug[i][m + i] = 1;
    }
    for (std::size_t colp = 0; colp < m; ++colp) {
        std::size_t piv = colp;
        while (piv < m && aug[piv][colp] == 0) ++piv;
        if (piv == m) return std::nullopt; // from is not full rank
        std::swap(aug[colp], aug[piv]);
        QQ inv = 1 / aug[colp][colp];
        for (auto& v : aug[colp]) v *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == colp || aug[i][colp] == 0) continue;
            QQ f = aug[i][colp];
            for (std::size_t j = 0; j < 2 * m; ++j) aug[i][j] -= f * aug[colp][j];
        }
    }
    ZMat u(m, ZVec(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            QQ v = 0;
            for (std::size_t k = 0; k < m; ++k) v += QQ(rhs[i][k]) * aug[k][m + j];
            v.canonicalize();
            if (v.get_den() != 1) return std::nullopt;
            u[i][j] = v.get_num();
        }
    // verify exactly: to == u * from, det u = +-1
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t col = 0; col < n; ++col) {
            ZZ acc = 0;
            for (std::size_t k = 0; k < m; ++k) acc += u[i][k] * from[k][col];
            if (acc != to[i][col]) return std::nullopt;
        }
    ZZ d = det_exact(u);
    if (d != 1 && d != -1) return std::nullopt;
    return u;
}

} // namespace polylat
