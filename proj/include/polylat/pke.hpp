#pragma once
// Encryption on top of the trapdoor function. The message vector m is viewed
// as num_planes(s) bit planes, least significant first. Encryption draws a
// mask z and the error e, then fixes
//   plane 0 = P xor z,  plane 1 = z,  plane 2 = Hash(P || z || e),
// filling the remaining planes randomly; per coordinate, the top bits are
// resampled until the recombined value lies in [0, s). Decryption inverts
// the trapdoor, insists e is binary of weight exactly d - 1, recovers
// P' = plane0 xor plane1, and accepts only when the binding hash matches.
// The planes-0..2 layout needs s >= 8, i.e. q^d0 >= 9.
//
// The naive variant (plane 0 = P, everything else random, no binding) exists
// only to demonstrate the related-message parity leak; see the attacks
// module.

#include "polylat/hash.hpp"
#include "polylat/trapdoor.hpp"

namespace polylat {

using BitVec = std::vector<int>; // entries in {0, 1}

enum class DecryptFailure { InversionFailure, BadError, HashMismatch };

struct DecryptResult {
    bool ok = false;
    BitVec plaintext;
    std::optional<DecryptFailure> failure;
};

// 1 + floor(log2(s)): number of bit planes of Z_s.
std::size_t num_planes(u64 s);

// Binding digest of (P, z, e), expanded to p.size() bits. Each field enters
// the hash with a 32-bit big-endian bit count, so lengths cannot collide.
BitVec hash_bind(const BitVec& p, const BitVec& z, const std::vector<int>& e);

std::vector<u64> encrypt(const PublicKey& pk, const BitVec& p, u64 seed);

DecryptResult decrypt(const TrapdoorPrivateKey& sk, const std::vector<u64>& c);

// Naive least-significant-plane encoding; no mask, no binding.
std::vector<u64> naive_encrypt(const PublicKey& pk, const BitVec& p, u64 seed);

DecryptResult naive_decrypt(const TrapdoorPrivateKey& sk, const std::vector<u64>& c);

} // namespace polylat
