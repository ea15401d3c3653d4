#include "polylat/hash.hpp"
#include "polylat/rng.hpp"

#include <openssl/evp.h>

namespace polylat {

std::array<unsigned char, 32> sha256(const Bytes& data) {
    std::array<unsigned char, 32> out{};
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) ||
        len != 32)
        throw internal_error("sha256: digest failure");
    return out;
}

void append_u32_be(Bytes& out, u32 v) {
    out.push_back(static_cast<unsigned char>(v >> 24));
    out.push_back(static_cast<unsigned char>(v >> 16));
    out.push_back(static_cast<unsigned char>(v >> 8));
    out.push_back(static_cast<unsigned char>(v));
}

void append_u64_be(Bytes& out, u64 v) {
    append_u32_be(out, static_cast<u32>(v >> 32));
    append_u32_be(out, static_cast<u32>(v));
}

void append_length_prefixed(Bytes& out, const Bytes& field) {
    if (field.size() > 0xffffffffull)
        throw usage_error("append_length_prefixed: field too long");
    append_u32_be(out, static_cast<u32>(field.size()));
    out.insert(out.end(), field.begin(), field.end());
}

Bytes hash_expand_bytes(const Bytes& input, std::size_t nbytes) {
    Bytes out;
    out.reserve(nbytes);
    u32 counter = 0;
    while (out.size() < nbytes) {
        Bytes block = input;
        append_u32_be(block, counter++);
        auto d = sha256(block);
        for (unsigned char b : d) {
            if (out.size() == nbytes) break;
            out.push_back(b);
        }
    }
    return out;
}

std::vector<int> hash_expand_bits(const Bytes& input, std::size_t nbits) {
    Bytes bytes = hash_expand_bytes(input, (nbits + 7) / 8);
    std::vector<int> bits;
    bits.reserve(nbits);
    for (std::size_t i = 0; i < nbits; ++i)
        bits.push_back((bytes[i / 8] >> (7 - (i % 8))) & 1);
    return bits;
}

std::string hex_digest(const std::array<unsigned char, 32>& d) {
    static const char* hexd = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (unsigned char b : d) {
        s.push_back(hexd[b >> 4]);
        s.push_back(hexd[b & 15]);
    }
    return s;
}

u64 derive_seed(u64 master, const std::string& label, u64 index) {
    Bytes in;
    append_u64_be(in, master);
    Bytes lab(label.begin(), label.end());
    append_length_prefixed(in, lab);
    append_u64_be(in, index);
    auto d = sha256(in);
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | d[static_cast<std::size_t>(i)];
    return v;
}

} // namespace polylat
