#pragma once
// The polynomial lattice construction: given a prime q, a squarefree modulus
// c(x) = c_1(x) ... c_t(x) (distinct monic irreducibles of a common degree
// d0) and n distinct evaluation points alpha_i with c(alpha_i) != 0, the map
//   phi(u) = prod_i (x - alpha_i)^(u_i)  in (F_q[x]/(c(x)))^*
// sends Z^n onto a subgroup; its kernel is a full-rank lattice of volume
// s^t, s = q^d0 - 1. A basis is
//   B = [ I_(n-t)  -G ]
//       [ 0      s I_t ]
// where row i of G solves (x - alpha_i) * prod_j (x - alpha_(n-t+j))^(-G_ij)
// = 1 modulo every c_j: writing y_i and M for the discrete logs of the head
// and tail points per factor (base: the canonical generator of each factor
// field), G = y M^(-1) mod s. M must be invertible mod s; keygen treats a
// singular M as a retryable event.

#include "polylat/ff_poly.hpp"
#include "polylat/lattice.hpp"

#include <optional>

namespace polylat {

// Tail log matrix not invertible mod s; the caller should resample.
struct singular_tail_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using U64Mat = std::vector<std::vector<u64>>;

struct PolyLatticeInstance {
    u64 q = 0;
    int d0 = 0;
    u64 s = 0;                        // q^d0 - 1
    std::vector<FieldPoly> c_factors; // t distinct monic irreducibles, degree d0
    std::vector<u64> alphas;          // n points; last t are the tail
    std::vector<QuotientRingElem> betas; // canonical generator per factor
    U64Mat m_mat;   // t x t: logs of tail points per factor
    U64Mat m_inv;   // inverse of m_mat mod s
    U64Mat g_mat;   // (n-t) x t: head rows of G

    std::size_t n() const { return alphas.size(); }
    std::size_t t() const { return c_factors.size(); }
    int d() const { return d0 * static_cast<int>(t()); } // deg c(x)
};

// Builds the instance. usage_error on malformed input (repeated points,
// mixed degrees, reducible factors, points hitting roots of c, s above the
// 2^40 desk cap); singular_tail_error when M is not invertible mod s.
PolyLatticeInstance build_lattice(u64 q, std::vector<FieldPoly> c_factors,
                                  std::vector<u64> alphas);

// The lattice basis B described above; integer entries, det = s^t.
LatticeBasis lattice_basis(const PolyLatticeInstance& inst);

// Public matrix H right block: (-G) mod s, shape (n-t) x t.
U64Mat public_right_block(const PolyLatticeInstance& inst);

// phi(u) per factor; exponents are taken mod the group order s, so negative
// entries are fine.
std::vector<FieldPoly> phi_map(const PolyLatticeInstance& inst, const ZVec& u);

// u in L <=> phi(u) = 1 in every factor.
bool is_lattice_member(const PolyLatticeInstance& inst, const ZVec& u);

// Order of the full unit group (F_q[x]/(c(x)))^*; equals s^t here because
// c is squarefree with equal-degree factors.
mpz_class lattice_volume(const PolyLatticeInstance& inst);

// Inverse of a square matrix mod s, or nullopt when det(A) shares a factor
// with s. Pivots are made unit by CRT-guided row additions, so an invertible
// input never fails.
std::optional<U64Mat> matrix_inverse_mod(const U64Mat& a, u64 s);

// f(x + c) by Horner, used for the translation symmetry of the construction.
FieldPoly poly_taylor_shift(const FieldPoly& f, u64 c);

} // namespace polylat
