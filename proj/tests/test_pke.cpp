#include "doctest.h"

#include "polylat/pke.hpp"

using namespace polylat;

namespace {

BitVec random_bits(Rng& rng, std::size_t k) {
    BitVec v(k);
    for (auto& b : v) b = rng.bit() ? 1 : 0;
    return v;
}

} // namespace

TEST_CASE("plane count") {
    CHECK(num_planes(262) == 9); // q = 263, d0 = 1
    CHECK(num_planes(10) == 4);
    CHECK(num_planes(8) == 4);
    CHECK(num_planes(6) == 3);
    CHECK(num_planes(1) == 1);
    CHECK_THROWS_AS(num_planes(0), usage_error);
}

TEST_CASE("binding hash is deterministic, sized, and sensitive") {
    Rng rng(12u);
    BitVec p = random_bits(rng, 32), z = random_bits(rng, 32);
    std::vector<int> e(40, 0);
    e[3] = e[17] = e[31] = 1;

    BitVec h1 = hash_bind(p, z, e);
    CHECK(h1.size() == 32);
    CHECK(h1 == hash_bind(p, z, e));

    auto flipped = e;
    flipped[5] = 1;
    BitVec h2 = hash_bind(p, z, flipped);
    int diff = 0;
    for (std::size_t i = 0; i < 32; ++i) diff += h1[i] != h2[i];
    CHECK(diff >= 4); // avalanche: about half the bits should move

    auto pz = p;
    pz[0] ^= 1;
    CHECK(hash_bind(pz, z, e) != h1);
    CHECK_THROWS_AS(hash_bind(p, random_bits(rng, 31), e), usage_error);
}

TEST_CASE("encrypt/decrypt roundtrip across parameter sets") {
    struct Cell {
        u64 q;
        std::size_t n;
        int d;
        std::size_t t;
    };
    for (Cell cell : {Cell{11, 8, 2, 2}, Cell{13, 9, 4, 2}, Cell{17, 12, 4, 4}}) {
        KeyPair kp = generate(cell.q, cell.n, cell.d, cell.t, 2000 + cell.q);
        Rng rng(5u);
        for (u64 trial = 0; trial < 100; ++trial) {
            BitVec p = random_bits(rng, cell.n - cell.t);
            auto c = encrypt(kp.pk, p, 10000 + trial);
            auto res = decrypt(kp.sk, c);
            REQUIRE(res.ok);
            CHECK(res.plaintext == p);
        }
    }
}

TEST_CASE("encryption is randomized but replay decrypts identically") {
    KeyPair kp = generate(11, 8, 2, 2, 77);
    BitVec p{1, 0, 1, 1, 0, 0};
    auto c1 = encrypt(kp.pk, p, 1);
    auto c2 = encrypt(kp.pk, p, 2);
    CHECK(c1 != c2);
    CHECK(encrypt(kp.pk, p, 1) == c1);
    auto r1 = decrypt(kp.sk, c1);
    auto r2 = decrypt(kp.sk, c1);
    REQUIRE(r1.ok);
    CHECK(r1.plaintext == r2.plaintext);
}

TEST_CASE("tampered ciphertexts fail to decrypt") {
    KeyPair kp = generate(13, 9, 4, 2, 3);
    Rng rng(9u);
    int failed = 0;
    for (u64 trial = 0; trial < 30; ++trial) {
        BitVec p = random_bits(rng, 7);
        auto c = encrypt(kp.pk, p, 500 + trial);
        std::size_t pos = static_cast<std::size_t>(rng.below(9));
        c[pos] = (c[pos] + 1 + rng.below(kp.pk.params.s - 1)) % kp.pk.params.s;
        auto res = decrypt(kp.sk, c);
        if (!res.ok) ++failed;
    }
    CHECK(failed >= 28);
}

TEST_CASE("a wrong binding plane is reported as a hash mismatch") {
    KeyPair kp = generate(11, 8, 2, 2, 41);
    BitVec p{1, 1, 0, 1, 0, 0}, z{0, 1, 1, 0, 1, 0};
    std::vector<int> e(8, 0);
    e[2] = 1;
    BitVec bind = hash_bind(p, z, e);
    bind[0] ^= 1;
    std::vector<u64> m(6);
    for (std::size_t i = 0; i < 6; ++i)
        m[i] = static_cast<u64>((p[i] ^ z[i])) | static_cast<u64>(z[i]) << 1 |
               static_cast<u64>(bind[i]) << 2;
    auto c = evaluate(kp.pk, m, e);
    auto res = decrypt(kp.sk, c);
    REQUIRE(!res.ok);
    CHECK(res.failure == DecryptFailure::HashMismatch);
}

TEST_CASE("negative-error preimages are reported as bad errors") {
    int bad_error_seen = 0;
    for (u64 seed = 1; seed <= 10; ++seed) {
        KeyPair kp = generate(11, 8, 2, 2, seed);
        BitVec p{0, 1, 0, 0, 1, 1};
        auto c = encrypt(kp.pk, p, seed + 100);
        // re-encode the same lattice point with the error negated: c' = c - 2e
        auto inv = invert(kp.sk, c);
        REQUIRE(inv.ok);
        auto c_neg = c;
        for (std::size_t i = 0; i < 8; ++i) {
            u64 sub = static_cast<u64>(2 * inv.e[i]);
            c_neg[i] = (c_neg[i] + kp.pk.params.s - sub) % kp.pk.params.s;
        }
        auto res = decrypt(kp.sk, c_neg);
        REQUIRE(!res.ok);
        if (res.failure == DecryptFailure::BadError) ++bad_error_seen;
    }
    CHECK(bad_error_seen >= 5);
}

TEST_CASE("needs at least eight residues") {
    KeyPair kp = generate(7, 5, 2, 2, 11); // s = 6
    BitVec p{1, 0, 1};
    CHECK_THROWS_AS(encrypt(kp.pk, p, 1), usage_error);
    CHECK_THROWS_AS(decrypt(kp.sk, {0, 0, 0, 0, 0}), usage_error);
    KeyPair ok = generate(11, 8, 2, 2, 11);
    CHECK_THROWS_AS(encrypt(ok.pk, {1, 0}, 1), usage_error);
    CHECK_THROWS_AS(encrypt(ok.pk, {1, 0, 2, 0, 0, 0}, 1), usage_error);
}

TEST_CASE("naive encoding roundtrips") {
    KeyPair kp = generate(11, 8, 2, 2, 63);
    Rng rng(2u);
    for (u64 trial = 0; trial < 50; ++trial) {
        BitVec p = random_bits(rng, 6);
        auto c = naive_encrypt(kp.pk, p, 900 + trial);
        auto res = naive_decrypt(kp.sk, c);
        REQUIRE(res.ok);
        CHECK(res.plaintext == p);
    }
}

TEST_CASE("naive encoding leaks the error parity across related messages") {
    // same plaintext twice: c1 + c2 = (m1 + m2)H + e1 + e2 with m1 + m2
    // even coordinatewise and s even, so c1 + c2 mod 2 = e1 + e2 mod 2
    KeyPair kp = generate(11, 8, 2, 2, 15);
    Rng rng(7u);
    for (int pair = 0; pair < 20; ++pair) {
        BitVec p = random_bits(rng, 6);
        u64 s1 = 3000 + static_cast<u64>(pair) * 2, s2 = s1 + 1;
        auto c1 = naive_encrypt(kp.pk, p, s1);
        auto c2 = naive_encrypt(kp.pk, p, s2);
        auto e1 = invert(kp.sk, c1), e2 = invert(kp.sk, c2);
        REQUIRE(e1.ok);
        REQUIRE(e2.ok);
        for (std::size_t i = 0; i < 8; ++i)
            CHECK((c1[i] + c2[i]) % 2 == static_cast<u64>(e1.e[i] + e2.e[i]) % 2);
    }
}

TEST_CASE("the masked scheme does not show the parity leak") {
    KeyPair kp = generate(11, 8, 2, 2, 29);
    Rng rng(13u);
    int matches = 0, total = 0;
    for (int pair = 0; pair < 30; ++pair) {
        BitVec p = random_bits(rng, 6);
        u64 s1 = 4000 + static_cast<u64>(pair) * 2, s2 = s1 + 1;
        auto c1 = encrypt(kp.pk, p, s1);
        auto c2 = encrypt(kp.pk, p, s2);
        auto e1 = invert(kp.sk, c1), e2 = invert(kp.sk, c2);
        REQUIRE(e1.ok);
        REQUIRE(e2.ok);
        for (std::size_t i = 0; i < 8; ++i) {
            matches += (c1[i] + c2[i]) % 2 == static_cast<u64>(e1.e[i] + e2.e[i]) % 2;
            ++total;
        }
    }
    // fresh masks randomize the message parity: agreement should sit near 1/2
    CHECK(matches > total / 2 - 40);
    CHECK(matches < total / 2 + 40);
}
