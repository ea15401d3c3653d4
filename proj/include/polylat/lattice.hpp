#pragma once
// Lattice reduction and decoding toolkit: LLL (floating-point guided with an
// exact integral refinement pass), BKZ with an exact enumeration sub-oracle,
// Babai nearest-plane (exact arithmetic at moderate dimension), Kannan
// embedding, Schnorr-Euchner enumeration with optional linear pruning, and
// small brute-force oracles used to validate everything else.
//
// Conventions: bases are rows of integer matrices; row i of the output of a
// reduction relates to the input by a unimodular transform. Exactness
// boundary: instances with at most 80 rows get exact rational Gram-Schmidt
// data, exact Babai rounding, and exact verification of the LLL predicates;
// larger instances run in double precision end to end.

#include "polylat/matz.hpp"

#include <optional>

namespace polylat {

struct LatticeBasis {
    ZMat rows; // m rows, each of the same length n, m <= n, full row rank

    std::size_t rank() const { return rows.size(); }
    std::size_t ambient() const { return rows.empty() ? 0 : rows[0].size(); }
};

LatticeBasis make_basis(ZMat rows);

// mu[i][j] for j < i, and |b*_i|^2, as exact rationals. exact is true when
// the values were computed with integer arithmetic (m <= 80); beyond that the
// entries are double-precision approximations promoted to rationals.
struct GramSchmidtData {
    std::vector<std::vector<QQ>> mu;
    std::vector<QQ> bstar_norm_sq;
    bool exact = false;
};
GramSchmidtData gram_schmidt(const LatticeBasis& b);

// Quality summary of a reduced basis. root_hermite is
// (|b_1| / vol^(1/m))^(1/m); orthogonality defect is prod |b_i| / vol.
struct ReductionReport {
    double shortest_row_norm = 0;
    double hermite_factor = 0;
    double root_hermite = 0;
    double orthogonality_defect = 0;
};
ReductionReport reduction_report(const LatticeBasis& b);

// delta in (1/4, 1]; default 0.99. Output spans the same lattice and, for
// m <= 80, satisfies the size-reduction and Lovasz conditions exactly.
LatticeBasis lll_reduce(const LatticeBasis& b, double delta = 0.99);

// Exact predicate check (m <= 80 only): |mu_ij| <= 1/2 and the delta-Lovasz
// inequality, both verified in integer arithmetic with delta = 99/100.
bool is_lll_reduced_exact(const LatticeBasis& b, long delta_num = 99, long delta_den = 100);

// Blockwise reduction: LLL plus enumeration of each projected block with
// insertion of improving vectors. Runs until a full tour makes no change or
// max_tours tours have run (default 8). Requires 2 <= block_size <= rank;
// anything else is a usage error.
struct BkzStats {
    int tours = 0;
    u64 insertions = 0;
    u64 enum_nodes = 0;
};
LatticeBasis bkz_reduce(const LatticeBasis& b, int block_size, double delta = 0.99,
                        int max_tours = 8, BkzStats* stats = nullptr);

// Nearest-plane decoding. exact on the result is always false here; only the
// brute-force oracle reports exact = true.
struct CvpResult {
    ZVec closest; // lattice point
    ZVec error;   // target - closest
    bool exact = false;
};
CvpResult babai_nearest_plane(const LatticeBasis& b, const ZVec& target);

// Kannan embedding: rows (b_i | 0) plus (target | embed_const).
LatticeBasis embed_cvp_to_svp(const LatticeBasis& b, const ZVec& target, const ZZ& embed_const);

// Schnorr-Euchner enumeration for a nonzero vector of squared norm <
// radius_sq, over the given basis. Optional linear pruning profile: with l
// topmost coordinates fixed, partial squared norms are capped at
// profile[l-1] * bound (profile entries in (0, 1], all-ones = no pruning).
// node_cap aborts the search; aborted (if provided) reports truncation.
// Returns the coefficient combination applied to the rows, not the vector.
std::optional<ZVec> svp_enumerate(const LatticeBasis& b, double radius_sq,
                                  const std::vector<double>* profile = nullptr,
                                  u64 node_cap = ~u64{0}, bool* aborted = nullptr,
                                  u64* nodes_visited = nullptr);

// Exhaustive oracles for tiny instances; coefficient box |x_i| <= coeff_bound.
// Guarded: refuse when (2*coeff_bound+1)^m exceeds 1e8 states.
ZVec brute_force_svp(const LatticeBasis& b, long coeff_bound);
CvpResult brute_force_cvp(const LatticeBasis& b, const ZVec& target, long coeff_bound);

// v = coeffs * rows.
ZVec apply_coeffs(const LatticeBasis& b, const ZVec& coeffs);

} // namespace polylat
