#include "polylat/pke.hpp"

namespace polylat {

namespace {

void check_bits(const BitVec& v, const char* what) {
    for (int b : v)
        if (b != 0 && b != 1) throw usage_error(std::string(what) + ": entries must be bits");
}

// 32-bit big-endian bit count, then the bits packed most-significant-first.
void append_bits(Bytes& out, const std::vector<int>& bits) {
    append_u32_be(out, static_cast<u32>(bits.size()));
    unsigned char cur = 0;
    int filled = 0;
    for (int b : bits) {
        cur = static_cast<unsigned char>((cur << 1) | (b & 1));
        if (++filled == 8) {
            out.push_back(cur);
            cur = 0;
            filled = 0;
        }
    }
    if (filled > 0) out.push_back(static_cast<unsigned char>(cur << (8 - filled)));
}

// Random planes >= first_free, resampled per coordinate until the combined
// value fits below s. The fixed low planes are never touched.
std::vector<u64> combine_planes(Rng& rng, const std::vector<BitVec>& fixed, std::size_t count,
                                std::size_t planes, u64 s) {
    std::vector<u64> m(count);
    for (std::size_t i = 0; i < count; ++i) {
        u64 base = 0;
        for (std::size_t j = 0; j < fixed.size(); ++j)
            base |= static_cast<u64>(fixed[j][i]) << j;
        for (;;) {
            u64 v = base;
            for (std::size_t j = fixed.size(); j < planes; ++j)
                v |= static_cast<u64>(rng.bit() ? 1 : 0) << j;
            if (v < s) {
                m[i] = v;
                break;
            }
        }
    }
    return m;
}

DecryptResult fail_with(DecryptFailure f) {
    DecryptResult r;
    r.failure = f;
    return r;
}

// Shared inversion preamble: trapdoor inversion plus the binary weight test.
bool recover_planes(const TrapdoorPrivateKey& sk, const std::vector<u64>& c,
                    std::vector<BitVec>& planes, std::vector<int>& e, DecryptResult& err) {
    InvertResult inv = invert(sk, c);
    if (!inv.ok) {
        err = fail_with(DecryptFailure::InversionFailure);
        return false;
    }
    int weight = 0;
    for (int b : inv.e) {
        if (b != 0 && b != 1) {
            err = fail_with(DecryptFailure::BadError);
            return false;
        }
        weight += b;
    }
    if (weight != sk.params.d - 1) {
        err = fail_with(DecryptFailure::BadError);
        return false;
    }
    std::size_t count = sk.params.n - sk.params.t;
    std::size_t np = num_planes(sk.params.s);
    planes.assign(np, BitVec(count, 0));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < np; ++j) planes[j][i] = static_cast<int>((inv.m[i] >> j) & 1);
    e = std::move(inv.e);
    return true;
}

} // namespace

std::size_t num_planes(u64 s) {
    if (s < 1) throw usage_error("num_planes: s must be positive");
    return static_cast<std::size_t>(floor_log2(s)) + 1;
}

BitVec hash_bind(const BitVec& p, const BitVec& z, const std::vector<int>& e) {
    if (z.size() != p.size()) throw usage_error("hash_bind: mask length mismatch");
    check_bits(p, "hash_bind plaintext");
    check_bits(z, "hash_bind mask");
    for (int b : e)
        if (b != 0 && b != 1) throw usage_error("hash_bind error: entries must be bits");
    Bytes input{'b', 'i', 'n', 'd'};
    append_bits(input, p);
    append_bits(input, z);
    append_bits(input, e);
    return hash_expand_bits(input, p.size());
}

std::vector<u64> encrypt(const PublicKey& pk, const BitVec& p, u64 seed) {
    const KeyParams& kp = pk.params;
    if (kp.s < 8) throw usage_error("encrypt: needs q^d0 >= 9 for the three fixed planes");
    if (p.size() != kp.n - kp.t) throw usage_error("encrypt: plaintext length must be n - t");
    check_bits(p, "encrypt plaintext");

    Rng rng(seed);
    std::size_t count = kp.n - kp.t;
    BitVec z(count);
    for (auto& b : z) b = rng.bit() ? 1 : 0;
    std::vector<int> e(kp.n, 0);
    for (u64 pos : rng.distinct(kp.n, static_cast<std::size_t>(kp.d - 1)))
        e[static_cast<std::size_t>(pos)] = 1;

    std::vector<BitVec> fixed(3, BitVec(count));
    for (std::size_t i = 0; i < count; ++i) {
        fixed[0][i] = p[i] ^ z[i];
        fixed[1][i] = z[i];
    }
    fixed[2] = hash_bind(p, z, e);

    std::vector<u64> m = combine_planes(rng, fixed, count, num_planes(kp.s), kp.s);
    return evaluate(pk, m, e);
}

DecryptResult decrypt(const TrapdoorPrivateKey& sk, const std::vector<u64>& c) {
    if (sk.params.s < 8) throw usage_error("decrypt: needs q^d0 >= 9");
    std::vector<BitVec> planes;
    std::vector<int> e;
    DecryptResult res;
    if (!recover_planes(sk, c, planes, e, res)) return res;

    std::size_t count = sk.params.n - sk.params.t;
    BitVec p(count);
    for (std::size_t i = 0; i < count; ++i) p[i] = planes[0][i] ^ planes[1][i];
    if (hash_bind(p, planes[1], e) != planes[2]) return fail_with(DecryptFailure::HashMismatch);

    res.ok = true;
    res.plaintext = std::move(p);
    return res;
}

std::vector<u64> naive_encrypt(const PublicKey& pk, const BitVec& p, u64 seed) {
    const KeyParams& kp = pk.params;
    if (p.size() != kp.n - kp.t) throw usage_error("naive_encrypt: plaintext length must be n - t");
    check_bits(p, "naive_encrypt plaintext");

    Rng rng(seed);
    std::vector<int> e(kp.n, 0);
    for (u64 pos : rng.distinct(kp.n, static_cast<std::size_t>(kp.d - 1)))
        e[static_cast<std::size_t>(pos)] = 1;
    std::vector<BitVec> fixed(1, p);
    std::vector<u64> m = combine_planes(rng, fixed, p.size(), num_planes(kp.s), kp.s);
    return evaluate(pk, m, e);
}

DecryptResult naive_decrypt(const TrapdoorPrivateKey& sk, const std::vector<u64>& c) {
    std::vector<BitVec> planes;
    std::vector<int> e;
    DecryptResult res;
    if (!recover_planes(sk, c, planes, e, res)) return res;
    res.ok = true;
    res.plaintext = std::move(planes[0]);
    return res;
}

} // namespace polylat
