#pragma once
// The trapdoor function built on the polynomial lattice. Keys pair a secret
// (the factored modulus c(x) and the ordered point set) with a public matrix
// H = (I_(n-t) | -G) over Z_s, s = q^d0 - 1. Evaluate sends (m, e) to
// c = mH + e mod s where e is binary of weight d - 1, d = deg c(x).
// Invert exponentiates the points by the ciphertext coordinates, which inside
// each factor field collapses mH to 1, leaving r(x) = prod (x - alpha_i)^e_i;
// because that product is squarefree of degree d - 1 < d it is recovered
// exactly, and a root scan over the point set reads off e. A remark variant
// accepts all-negative errors by scanning 1/r(x) instead. Optional masking
// hides the (I | -G) shape behind H' = T H P with T unimodular and P a
// permutation.

#include "polylat/poly_lattice.hpp"
#include "polylat/rng.hpp"

namespace polylat {

struct KeyParams {
    u64 q = 0;
    std::size_t n = 0;
    int d = 0; // deg c(x) = d0 * t
    std::size_t t = 0;
    int d0 = 0;
    u64 s = 0; // q^d0 - 1

    bool operator==(const KeyParams&) const = default;
};

struct Masking {
    ZMat t_mat;  // unimodular, small entries
    ZMat t_inv;  // exact integer inverse
    std::vector<std::size_t> perm; // column k of H lands in column perm[k]
};

struct TrapdoorPrivateKey {
    PolyLatticeInstance inst;
    KeyParams params;
    std::optional<Masking> masking;
};

struct PublicKey {
    KeyParams params;
    U64Mat h_right;                // (-G) mod s, shape (n-t) x t
    std::optional<U64Mat> full_h;  // masked keys only: T H P, shape (n-t) x n

    // Stored bits: entries * (1 + floor(log2(s - 1))). The implicit identity
    // block of an unmasked key costs nothing.
    std::size_t size_bits() const;
};

struct KeyPair {
    TrapdoorPrivateKey sk;
    PublicKey pk;
};

// Samples the point set and the t distinct monic irreducible degree-(d/t)
// factors, then assembles the lattice data. Deterministic in seed. Retries
// up to 64 times when the tail log matrix comes out singular and throws
// singular_tail_error if every attempt fails. with_masking additionally
// draws (T, P).
KeyPair generate(u64 q, std::size_t n, int d, std::size_t t, u64 seed,
                 bool with_masking = false);

// Wraps an explicitly built instance (tests, attack drivers).
KeyPair keypair_from_instance(PolyLatticeInstance inst);

struct SampledInput {
    std::vector<u64> m;  // length n - t, entries in [0, s)
    std::vector<int> e;  // length n, binary, weight d - 1
};

// Uniform message and uniform weight-(d-1) binary error.
SampledInput sample_input(const PublicKey& pk, u64 seed);

// c = mH + e mod s. Accepts error entries in {-1, 0, 1} so the remark
// variants and tamper experiments can reuse it; honest errors are binary.
std::vector<u64> evaluate(const PublicKey& pk, const std::vector<u64>& m,
                          const std::vector<int>& e);

struct InvertResult {
    bool ok = false;
    std::vector<u64> m;
    std::vector<int> e;
    bool used_inverse = false; // true when 1/r(x) produced the split
};

// Inversion for unmasked keys. ok = false signals an inconsistent input
// (no split of weight d - 1 with unit cofactor, in either direction).
InvertResult invert(const TrapdoorPrivateKey& sk, const std::vector<u64>& c);

// Generalized inversion: accept a product of pos_weight distinct points, or
// on the inverse scan a product of neg_weight points. invert() is the
// (d-1, d-1) case. Exact recovery needs the accepted weight to stay below
// deg c(x); callers arranging other error shapes (for instance the weight
// (n-d+1) all-negative form produced by ciphertext cap reduction) pass the
// weights they expect.
InvertResult invert_weights(const TrapdoorPrivateKey& sk,
                            const std::vector<u64>& c, int pos_weight,
                            int neg_weight);

// H' = T H P for a key generated with masking.
PublicKey apply_masking(const TrapdoorPrivateKey& sk, const PublicKey& pk);

// Inversion against a masked ciphertext: undoes P, inverts, undoes T.
InvertResult invert_masked(const TrapdoorPrivateKey& sk, const std::vector<u64>& c);

} // namespace polylat
