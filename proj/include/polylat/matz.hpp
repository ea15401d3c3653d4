#pragma once
// Exact integer matrix helpers on GMP integers: Bareiss determinants, Gram
// matrices, integral Gram-Schmidt (the lambda/d recurrences of de Weger), row
// Hermite normal form, and recovery of the unimodular transform between two
// bases of the same lattice. These back the exactness guarantees of the
// lattice layer and its tests.

#include "polylat/numth.hpp"

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace polylat {

using ZZ = mpz_class;
using QQ = mpq_class;
using ZVec = std::vector<ZZ>;
using ZMat = std::vector<ZVec>;

ZZ dot(const ZVec& a, const ZVec& b);
ZVec row_sub_scaled(const ZVec& a, const ZZ& k, const ZVec& b); // a - k*b
bool is_zero_row(const ZVec& a);
ZZ norm_sq(const ZVec& a);

// Determinant by fraction-free (Bareiss) elimination; input square.
ZZ det_exact(ZMat a);

// G[i][j] = <rows[i], rows[j]>.
ZMat gram(const ZMat& rows);

// Integral Gram-Schmidt state: dd[0] = 1, dd[i+1] = det of the leading i+1 x
// i+1 Gram block, lam[i][j] = dd[j+1] * mu_ij for j < i. All entries exact;
// every division in the recurrences is exact. Throws internal_error when the
// rows are linearly dependent (some dd becomes nonpositive).
struct IntegralGS {
    std::vector<ZZ> dd;            // size m+1
    std::vector<std::vector<ZZ>> lam; // lower triangular, lam[i] has i entries
};
IntegralGS integral_gs(const ZMat& rows);

// lam_t[j] = dd[j+1] * mu_{t,j} for an extra target vector against an
// existing IntegralGS state.
std::vector<ZZ> integral_gs_target(const IntegralGS& gs, const ZMat& rows, const ZVec& target);

// Nearest integer to num/den (den > 0), ties rounded away from zero.
ZZ round_half_away(const ZZ& num, const ZZ& den);

// Row-style Hermite normal form: pivots positive, entries above each pivot
// reduced into [0, pivot). Zero rows sink to the bottom and are dropped.
ZMat hnf(ZMat a);

// U with to = U * from, exact and unimodular; nullopt when the bases do not
// generate the same lattice. Both inputs must be full row rank with the same
// shape.
std::optional<ZMat> unimodular_transform(const ZMat& from, const ZMat& to);

} // namespace polylat
