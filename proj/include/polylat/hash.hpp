#pragma once
// SHA-256 (via OpenSSL) plus the counter-mode expanders used for ciphertext
// binding, plane filling, and trial-seed derivation. Every variable-length
// field that enters a hash is prefixed with its 32-bit big-endian byte
// length, so concatenations cannot collide.

#include "polylat/numth.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace polylat {

using Bytes = std::vector<unsigned char>;

std::array<unsigned char, 32> sha256(const Bytes& data);

// Appends the 32-bit big-endian length of `field`, then the field itself.
void append_length_prefixed(Bytes& out, const Bytes& field);
void append_u32_be(Bytes& out, u32 v);
void append_u64_be(Bytes& out, u64 v);

// Counter-mode bit expander: block i is SHA256(input || counter_be32(i)), and
// bits are consumed most-significant-first within each digest byte. Returns
// nbits entries in {0,1}.
std::vector<int> hash_expand_bits(const Bytes& input, std::size_t nbits);

// Same expander exposed at byte granularity.
Bytes hash_expand_bytes(const Bytes& input, std::size_t nbytes);

std::string hex_digest(const std::array<unsigned char, 32>& d);

} // namespace polylat
