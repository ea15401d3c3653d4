#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "polylat/attacks.hpp"
#include "polylat/numth.hpp"
#include "polylat/params.hpp"

using namespace polylat;

namespace {

int weight_of(const std::vector<int>& e) {
    int w = 0;
    for (int v : e) w += (v == 1) ? 1 : 0;
    return w;
}

// A t = 1 instance over F_17 with modulus degree 2 whose public column hides
// deliberately small exponents: the modulus is chosen so that x generates
// the unit group, and head points are taken as x - x^g mod c for the
// smallest exponents g >= 2 that produce a monic linear power. The tail
// point is zero, so M = [log_x x] = [1] is always invertible.
struct PlantedGcdInstance {
    PolyLatticeInstance inst;
    std::vector<u64> exponents;
};

PlantedGcdInstance planted_small_exponent_instance(std::size_t heads) {
    const u64 q = 17;
    const u64 s = q * q - 1;  // 288 = 2^5 * 3^2
    for (u64 b = 0; b < q; ++b) {
        for (u64 c0 = 0; c0 < q; ++c0) {
            FieldPoly cand(q, {c0, b, 1});
            if (!is_irreducible(cand)) continue;
            QuotientRingElem x = qre_make(poly_x(q), cand);
            if (qre_pow(x, s / 2).residue.is_one()) continue;
            if (qre_pow(x, s / 3).residue.is_one()) continue;
            // x is primitive; hunt for small exponents with monic linear
            // powers and nonzero constant offset.
            std::vector<u64> alphas, gs;
            for (u64 g = 2; g < 400 && alphas.size() < heads; ++g) {
                FieldPoly pw = qre_pow(x, g).residue;
                if (pw.degree() != 1 || pw.coeff(1) != 1) continue;
                u64 alpha = (q - pw.coeff(0)) % q;
                if (alpha == 0) continue;
                if (std::find(alphas.begin(), alphas.end(), alpha) !=
                    alphas.end()) {
                    continue;
                }
                alphas.push_back(alpha);
                gs.push_back(g);
            }
            if (alphas.size() < heads) continue;
            alphas.push_back(0);  // tail
            PlantedGcdInstance out{build_lattice(q, {cand}, alphas),
                                   std::move(gs)};
            return out;
        }
    }
    throw std::logic_error("no planted gcd instance found");
}

}  // namespace

TEST_CASE("public lattice basis on the frozen toy key") {
    KeyPair kp = keypair_from_instance(build_lattice(
        7,
        {FieldPoly(7, {2, 1}), FieldPoly(7, {1, 1})},
        {1, 3, 0, 2}));
    LatticeBasis b = public_lattice_basis(kp.pk);
    REQUIRE(b.rank() == 4);
    ZMat want = {{ZZ(1), ZZ(0), ZZ(5), ZZ(1)},
                 {ZZ(0), ZZ(1), ZZ(1), ZZ(5)},
                 {ZZ(0), ZZ(0), ZZ(6), ZZ(0)},
                 {ZZ(0), ZZ(0), ZZ(0), ZZ(6)}};
    CHECK(b.rows == want);
    // Every image of evaluate lies in the lattice modulo nothing: c - e is
    // an integer combination of the rows.
    SampledInput in = sample_input(kp.pk, 5);
    std::vector<u64> c = evaluate(kp.pk, in.m, in.e);
    ZVec diff(4);
    for (std::size_t i = 0; i < 4; ++i) {
        diff[i] = ZZ(static_cast<long>(c[i]) - in.e[i]);
    }
    CvpResult hit = brute_force_cvp(b, diff, 8);
    CHECK(std::all_of(hit.error.begin(), hit.error.end(),
                      [](const ZZ& v) { return v == 0; }));
}

TEST_CASE("error_search_ell variants") {
    CHECK(error_search_ell(12, 4, 4) == 2);
    CHECK(error_search_ell(12, 4, 4, true) == 6);
    CHECK(error_search_ell(230, 29, 29) == 24);  // round, not ceil
    CHECK(error_search_ell(6, 1, 1) == 0);
    CHECK_THROWS_AS(error_search_ell(12, 12, 4), usage_error);
}

TEST_CASE("error search attack") {
    SUBCASE("recovers the planted error on a toy instance") {
        for (u64 seed : {1, 2, 3, 4, 5}) {
            AttackInstance inst = make_attack_instance(17, 12, 4, 4, seed);
            AttackOutcome out =
                error_search_attack(inst.kp.pk, inst.c, 1000000);
            CAPTURE(seed);
            REQUIRE(out.success);
            CHECK(verify_outcome(inst.kp.pk, inst.c, out));
            CHECK(weight_of(out.recovered_error) == 3);
            CHECK(out.tries >= 1);
        }
    }
    SUBCASE("weight-zero error succeeds immediately") {
        AttackInstance inst = make_attack_instance(11, 6, 1, 1, 9);
        AttackOutcome out = error_search_attack(inst.kp.pk, inst.c, 10);
        REQUIRE(out.success);
        CHECK(out.tries == 1);
        CHECK(weight_of(out.recovered_error) == 0);
        CHECK(out.recovered_message == inst.input.m);
    }
    SUBCASE("budget exhaustion reports failure honestly") {
        AttackInstance inst = make_attack_instance(17, 12, 4, 4, 7);
        AttackOutcome full = error_search_attack(inst.kp.pk, inst.c, 1000000);
        REQUIRE(full.success);
        REQUIRE(full.tries > 2);
        AttackOutcome cut = error_search_attack(inst.kp.pk, inst.c, 2);
        CHECK(!cut.success);
        CHECK(cut.tries == 2);
    }
    SUBCASE("mean tries tracks the binomial estimate") {
        // Expected count: most errors place about ell = 2 ones on the head,
        // so the search finishes within a few weight classes around
        // C(8, 2) = 28 candidates.
        double total = 0;
        int runs = 0;
        for (u64 seed = 100; seed < 140; ++seed) {
            AttackInstance inst = make_attack_instance(17, 12, 4, 4, seed);
            AttackOutcome out =
                error_search_attack(inst.kp.pk, inst.c, 1000000);
            REQUIRE(out.success);
            total += static_cast<double>(out.tries);
            ++runs;
        }
        double mean = total / runs;
        CHECK(mean > 28.0 / 6.0);
        CHECK(mean < 28.0 * 6.0);
    }
    SUBCASE("masked keys are rejected") {
        KeyPair kp = generate(13, 9, 4, 2, 3, true);
        PublicKey masked = apply_masking(kp.sk, kp.pk);
        std::vector<u64> c(9, 0);
        CHECK_THROWS_AS(error_search_attack(masked, c, 10), usage_error);
    }
}

TEST_CASE("trapdoor search attack") {
    SUBCASE("recovers an equivalent trapdoor at toy scale") {
        // Smallest workable fields: with t = 1 and a linear modulus the n
        // points and the modulus root must all be distinct in F_q, so
        // n + 1 <= q. q = 7, n = 5 is the closest feasible relative of the
        // q = 5, n = 5 sketch (which violates that count).
        AttackInstance inst = make_attack_instance(7, 5, 1, 1, 2);
        AttackOutcome out = trapdoor_search_attack(inst.kp.pk);
        REQUIRE(out.success);
        REQUIRE(out.recovered_instance.has_value());
        CHECK(verify_outcome(inst.kp.pk, inst.c, out));
        CHECK(public_right_block(*out.recovered_instance) ==
              inst.kp.pk.h_right);
        // The recovered key functions as the real one.
        KeyPair rec = keypair_from_instance(*out.recovered_instance);
        for (u64 seed = 20; seed < 25; ++seed) {
            SampledInput in = sample_input(inst.kp.pk, seed);
            std::vector<u64> c = evaluate(inst.kp.pk, in.m, in.e);
            InvertResult r = invert(rec.sk, c);
            REQUIRE(r.ok);
            CHECK(r.m == in.m);
            CHECK(r.e == in.e);
        }
        // Work counter stays within the q^d * q * n enumeration shape.
        CHECK(out.tries >= 1);
        CHECK(out.tries <= 7ULL * 7ULL * 5ULL);
    }
    SUBCASE("q = 5 maximal point set") {
        AttackInstance inst = make_attack_instance(5, 4, 1, 1, 4);
        AttackOutcome out = trapdoor_search_attack(inst.kp.pk);
        REQUIRE(out.success);
        CHECK(public_right_block(*out.recovered_instance) ==
              inst.kp.pk.h_right);
    }
    SUBCASE("refuses non-toy parameters") {
        KeyPair kp = generate(263, 8, 2, 1, 3);
        AttackOutcome out = trapdoor_search_attack(kp.pk);
        CHECK(!out.success);
        CHECK(out.refused);
        CHECK(out.refusal_reason.find("exceeds bound") != std::string::npos);
    }
    SUBCASE("refuses t >= 2") {
        KeyPair kp = generate(17, 8, 2, 2, 3);
        AttackOutcome out = trapdoor_search_attack(kp.pk);
        CHECK(out.refused);
    }
}

TEST_CASE("babai inversion attack") {
    int successes = 0;
    for (u64 seed = 1; seed <= 8; ++seed) {
        AttackInstance inst = make_attack_instance(37, 24, 12, 12, seed);
        AttackOutcome out = babai_inversion_attack(inst, 10);
        CHECK(out.block_size == 10);
        CHECK(out.measured_delta > 0.8);
        CHECK(out.measured_delta < 1.3);
        CHECK(out.reduction_seconds >= 0.0);
        if (out.success) {
            ++successes;
            CHECK(verify_outcome(inst.kp.pk, inst.c, out));
            CHECK(out.recovered_error == inst.input.e);
            CHECK(out.recovered_message == inst.input.m);
        }
    }
    // Desk-scale regime where decoding is comfortably feasible.
    CHECK(successes >= 6);
}

TEST_CASE("embedding attack") {
    SUBCASE("short planted vector norm identity") {
        AttackInstance inst = make_attack_instance(37, 24, 12, 12, 11);
        long norm_sq = 1;
        for (int v : inst.input.e) norm_sq += v * v;
        CHECK(norm_sq == 12);  // (d - 1) ones plus the embedding one
    }
    SUBCASE("succeeds at desk scale and reports both criteria") {
        int successes = 0;
        for (u64 seed = 1; seed <= 8; ++seed) {
            AttackInstance inst = make_attack_instance(37, 24, 12, 12, seed);
            AttackOutcome out = embedding_attack(inst, 10);
            CHECK(out.success == (out.success_row || out.success_enum));
            CHECK(out.measured_delta > 0.8);
            CHECK(out.epsilon_at_delta > 0.0);
            if (out.success) {
                ++successes;
                CHECK(verify_outcome(inst.kp.pk, inst.c, out));
            }
        }
        CHECK(successes >= 6);
    }
    SUBCASE("larger embedding constant still works") {
        AttackInstance inst = make_attack_instance(37, 24, 12, 12, 3);
        AttackOutcome out = embedding_attack(inst, 10, 2);
        CHECK(out.success == (out.success_row || out.success_enum));
        if (out.success) CHECK(verify_outcome(inst.kp.pk, inst.c, out));
    }
    SUBCASE("invalid embedding constant") {
        AttackInstance inst = make_attack_instance(17, 12, 4, 4, 1);
        CHECK_THROWS_AS(embedding_attack(inst, 2, 0), usage_error);
    }
}

TEST_CASE("enhanced embedding attack") {
    AttackInstance inst = make_attack_instance(37, 24, 12, 12, 5);
    SUBCASE("k = 0 matches the plain embedding attack") {
        AttackOutcome plain = embedding_attack(inst, 10);
        AttackOutcome enh = enhanced_embedding_attack(inst, 0, 10, 77);
        CHECK(enh.success_row == plain.success_row);
        CHECK(enh.success_enum == plain.success_enum);
        CHECK(enh.guess_cost_log2 == doctest::Approx(0.0));
    }
    SUBCASE("guess cost accounting") {
        AttackOutcome out = enhanced_embedding_attack(inst, 5, 10, 77);
        // C(n - d, k) = C(12, 5) = 792 branches.
        CHECK(out.guess_cost_log2 ==
              doctest::Approx(std::log2(792.0)).epsilon(1e-9));
        if (out.success) CHECK(verify_outcome(inst.kp.pk, inst.c, out));
    }
    SUBCASE("partial guessing keeps the attack effective") {
        AttackOutcome out = enhanced_embedding_attack(inst, 6, 10, 13);
        CHECK(out.success);
        CHECK(verify_outcome(inst.kp.pk, inst.c, out));
    }
    SUBCASE("guessing every error position is a membership check") {
        AttackOutcome out = enhanced_embedding_attack(inst, 11, 2, 9);
        REQUIRE(out.success);
        CHECK(out.tries == 1);
        CHECK(out.recovered_error == inst.input.e);
        CHECK(out.recovered_message == inst.input.m);
        CHECK(verify_outcome(inst.kp.pk, inst.c, out));
    }
    SUBCASE("k out of range") {
        CHECK_THROWS_AS(enhanced_embedding_attack(inst, 12, 2, 1),
                        usage_error);
        CHECK_THROWS_AS(enhanced_embedding_attack(inst, -1, 2, 1),
                        usage_error);
    }
}

TEST_CASE("gcd attack on t = 1 keys") {
    SUBCASE("planted small exponents yield full key recovery") {
        PlantedGcdInstance planted = planted_small_exponent_instance(4);
        REQUIRE(planted.inst.alphas.size() == 5);
        CHECK(planted.inst.alphas.back() == 0);
        for (u64 g : planted.exponents) CHECK(g <= 400);

        KeyPair kp = keypair_from_instance(planted.inst);
        AttackOutcome out = gcd_trapdoor_attack_t1(kp.pk, 500);
        REQUIRE(out.success);
        REQUIRE(out.recovered_instance.has_value());
        CHECK(public_right_block(*out.recovered_instance) == kp.pk.h_right);
        CHECK(out.recovered_instance->alphas.back() == 0);

        KeyPair rec = keypair_from_instance(*out.recovered_instance);
        SampledInput in = sample_input(kp.pk, 31);
        std::vector<u64> c = evaluate(kp.pk, in.m, in.e);
        InvertResult r = invert(rec.sk, c);
        REQUIRE(r.ok);
        CHECK(r.m == in.m);
        CHECK(r.e == in.e);
    }
    SUBCASE("generic exponents are refused") {
        KeyPair kp = generate(263, 8, 2, 1, 3);
        AttackOutcome out = gcd_trapdoor_attack_t1(kp.pk);
        CHECK(!out.success);
        CHECK(out.refused);
        CHECK(out.refusal_reason.find("g_bound") != std::string::npos);
    }
    SUBCASE("large candidate space is refused") {
        KeyPair kp = generate(101, 8, 3, 1, 5);
        AttackOutcome out = gcd_trapdoor_attack_t1(kp.pk);
        CHECK(out.refused);
        CHECK(out.refusal_reason.find("guard") != std::string::npos);
    }
    SUBCASE("t must be 1") {
        KeyPair kp = generate(17, 8, 2, 2, 3);
        CHECK_THROWS_AS(gcd_trapdoor_attack_t1(kp.pk), usage_error);
    }
}

TEST_CASE("related message attack") {
    SUBCASE("identical errors cancel and the overlap search recovers them") {
        KeyPair kp = generate(17, 12, 3, 3, 21);
        BitVec p = {1, 0, 1, 1, 0, 1, 0, 0, 1};
        std::vector<u64> c = naive_encrypt(kp.pk, p, 500);
        RelatedMessageResult res =
            related_message_attack(kp.pk, c, c, 100000);
        CHECK(res.parity_positions.empty());
        REQUIRE(res.success);
        CHECK(res.plaintext == p);
        CHECK(res.e1 == res.e2);
    }
    SUBCASE("naive encoding pair with disjoint supports is broken") {
        KeyPair kp = generate(37, 30, 6, 6, 8);
        BitVec p(24);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = (i * 7 % 3) == 0;
        std::vector<u64> c1 = naive_encrypt(kp.pk, p, 1000);
        bool demonstrated = false;
        for (u64 seed = 1001; seed < 1080 && !demonstrated; ++seed) {
            std::vector<u64> c2 = naive_encrypt(kp.pk, p, seed);
            RelatedMessageResult res =
                related_message_attack(kp.pk, c1, c2, 2000000);
            if (res.parity_positions.size() == 10) {
                // Fully disjoint supports: strongest leak.
                REQUIRE(res.success);
                CHECK(res.plaintext == p);
                int w1 = 0, w2 = 0;
                for (int v : res.e1) w1 += v;
                for (int v : res.e2) w2 += v;
                CHECK(w1 == 5);
                CHECK(w2 == 5);
                demonstrated = true;
            }
        }
        CHECK(demonstrated);
    }
    SUBCASE("hash-bound encoding resists the attack") {
        KeyPair kp = generate(37, 30, 6, 6, 8);
        BitVec p(24, 1);
        std::vector<u64> c1 = encrypt(kp.pk, p, 71);
        std::vector<u64> c2 = encrypt(kp.pk, p, 72);
        RelatedMessageResult res =
            related_message_attack(kp.pk, c1, c2, 200000);
        CHECK(!res.success);
        // Parity positions carry no error-support structure; their count
        // concentrates near n/2 instead of 2(d-1).
        CHECK(res.parity_positions.size() > 2 * 5);
    }
    SUBCASE("odd parity count fails fast") {
        KeyPair kp = generate(17, 12, 3, 3, 21);
        BitVec p(9, 0);
        std::vector<u64> c1 = naive_encrypt(kp.pk, p, 600);
        std::vector<u64> c2 = c1;
        c2[0] = (c2[0] + 1) % kp.pk.params.s;
        RelatedMessageResult res =
            related_message_attack(kp.pk, c1, c2, 1000);
        CHECK(!res.success);
        CHECK(res.parity_positions.size() % 2 == 1);
        CHECK(res.tries == 0);
    }
}

TEST_CASE("ciphertext cap reduction") {
    SUBCASE("heavy-error keys get rewritten to light negative errors") {
        KeyPair kp = generate(17, 8, 6, 6, 2);
        SampledInput in = sample_input(kp.pk, 40);
        std::vector<u64> c = evaluate(kp.pk, in.m, in.e);
        CapReduction red = d_cap_reduction(kp.pk, c);
        REQUIRE(red.applied);
        // Inversion with the expected weights recovers the message: the
        // rewritten error is e - 1, all entries in {-1, 0}, weight n - d + 1.
        InvertResult r = invert_weights(kp.sk, red.c_out, 5, 3);
        REQUIRE(r.ok);
        CHECK(r.used_inverse);
        CHECK(r.m == in.m);
        int negs = 0;
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK(r.e[i] == in.e[i] - 1);
            negs += (r.e[i] == -1) ? 1 : 0;
        }
        CHECK(negs == 3);  // n - d + 1
    }
    SUBCASE("identity when d is already capped") {
        KeyPair kp = generate(17, 12, 4, 4, 2);
        SampledInput in = sample_input(kp.pk, 4);
        std::vector<u64> c = evaluate(kp.pk, in.m, in.e);
        CapReduction red = d_cap_reduction(kp.pk, c);
        CHECK(!red.applied);
        CHECK(red.c_out == c);
    }
}
