#include "polylat/attacks.hpp"

#include "polylat/params.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace polylat {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

AttackOutcome outcome_for(const char* name, const PublicKey& pk, u64 seed) {
    AttackOutcome out;
    out.attack_name = name;
    out.n = pk.params.n;
    out.d = pk.params.d;
    out.q = pk.params.q;
    out.trial_seed = seed;
    return out;
}

void require_unmasked(const PublicKey& pk, const char* who) {
    if (pk.full_h) {
        throw usage_error(std::string(who) +
                          ": masked keys expose no identity block");
    }
}

// Advance idx (strictly increasing positions, values < limit) to the next
// combination of the same size; false once exhausted.
bool next_combination(std::vector<std::size_t>& idx, std::size_t limit) {
    std::size_t k = idx.size();
    if (k == 0) return false;
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (idx[i] + (k - i) < limit) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    return idx;
}

// Tail coordinates of c - m H for a message that differs from the head of c
// exactly on support (where the error bit is 1): base_j + sum over the
// support rows of h_right, all mod s.
void tail_with_support(const PublicKey& pk, const std::vector<u64>& base,
                       const std::vector<std::size_t>& head_support,
                       std::vector<u64>& out) {
    const KeyParams& p = pk.params;
    out = base;
    for (std::size_t i : head_support) {
        for (std::size_t j = 0; j < p.t; ++j) {
            out[j] = (out[j] + pk.h_right[i][j]) % p.s;
        }
    }
}

// base_j = c_tail_j - sum_i c_head_i * h_right[i][j] mod s.
std::vector<u64> tail_base(const PublicKey& pk, const std::vector<u64>& c) {
    const KeyParams& p = pk.params;
    std::vector<u64> base(p.t);
    for (std::size_t j = 0; j < p.t; ++j) {
        u64 acc = 0;
        for (std::size_t i = 0; i + p.t < p.n; ++i) {
            acc = (acc + mulmod(c[i], pk.h_right[i][j], p.s)) % p.s;
        }
        base[j] = (c[p.n - p.t + j] + p.s - acc) % p.s;
    }
    return base;
}

// Message implied by an error support on the head coordinates.
std::vector<u64> message_for_support(const PublicKey& pk,
                                     const std::vector<u64>& c,
                                     const std::vector<std::size_t>& support) {
    const KeyParams& p = pk.params;
    std::vector<u64> m(c.begin(), c.begin() + (p.n - p.t));
    for (std::size_t i : support) m[i] = (m[i] + p.s - 1) % p.s;
    return m;
}

struct EmbeddingCore {
    bool success_row = false;
    bool success_enum = false;
    std::vector<int> extracted;  // full-length error, valid when either fired
    double seconds = 0.0;
    u64 nodes = 0;
    double delta = 0.0;
};

// Shared body of the embedding attacks: embed target into the public
// lattice, reduce, check rows against +-(expected | ec), then enumerate
// within the Gaussian-heuristic radius and check the found vector.
EmbeddingCore run_embedding(const PublicKey& pk, const std::vector<u64>& c,
                            const std::vector<int>& expected, int block_size,
                            long embed_const) {
    const KeyParams& p = pk.params;
    EmbeddingCore core;

    LatticeBasis pub = public_lattice_basis(pk);
    ZVec target(p.n);
    for (std::size_t i = 0; i < p.n; ++i) target[i] = ZZ(static_cast<unsigned long>(c[i]));
    LatticeBasis emb = embed_cvp_to_svp(pub, target, ZZ(embed_const));

    auto t0 = Clock::now();
    BkzStats stats;
    LatticeBasis red = bkz_reduce(emb, block_size, 0.99, 8, &stats);
    core.seconds = seconds_since(t0);
    core.nodes = stats.enum_nodes;
    core.delta = reduction_report(red).root_hermite;

    std::size_t m = p.n + 1;
    ZZ ec(embed_const);
    auto matches = [&](const ZVec& row, std::vector<int>& ext) {
        if (row[p.n] != ec && row[p.n] != -ec) return false;
        bool flip = (row[p.n] == -ec);
        ext.assign(p.n, 0);
        for (std::size_t i = 0; i < p.n; ++i) {
            ZZ v = flip ? ZZ(-row[i]) : row[i];
            if (v != 0 && v != 1) return false;
            ext[i] = static_cast<int>(v.get_si());
        }
        for (std::size_t i = 0; i < p.n; ++i) {
            if (ext[i] != expected[i]) return false;
        }
        return true;
    };

    std::vector<int> ext;
    for (const ZVec& row : red.rows) {
        if (matches(row, ext)) {
            core.success_row = true;
            core.extracted = ext;
            break;
        }
    }

    // Gaussian-heuristic radius of the embedded lattice: volume is s^t * ec.
    double log_vol = static_cast<double>(p.t) * std::log(static_cast<double>(p.s)) +
                     std::log(static_cast<double>(embed_const));
    double gh_sq = (static_cast<double>(m) / (2.0 * M_PI * std::exp(1.0))) *
                   std::exp(2.0 * log_vol / static_cast<double>(m));
    bool aborted = false;
    u64 nodes = 0;
    auto coeffs = svp_enumerate(red, gh_sq, nullptr, 20000000, &aborted, &nodes);
    core.nodes += nodes;
    if (coeffs) {
        ZVec found = apply_coeffs(red, *coeffs);
        if (matches(found, ext)) {
            core.success_enum = true;
            if (core.extracted.empty()) core.extracted = ext;
        }
    }
    return core;
}

}  // namespace

LatticeBasis public_lattice_basis(const PublicKey& pk) {
    require_unmasked(pk, "public_lattice_basis");
    const KeyParams& p = pk.params;
    ZMat rows(p.n, ZVec(p.n, ZZ(0)));
    for (std::size_t i = 0; i + p.t < p.n; ++i) {
        rows[i][i] = 1;
        for (std::size_t j = 0; j < p.t; ++j) {
            rows[i][p.n - p.t + j] = ZZ(static_cast<unsigned long>(pk.h_right[i][j]));
        }
    }
    for (std::size_t j = 0; j < p.t; ++j) {
        rows[p.n - p.t + j][p.n - p.t + j] = ZZ(static_cast<unsigned long>(p.s));
    }
    return make_basis(std::move(rows));
}

AttackInstance make_attack_instance(u64 q, std::size_t n, int d, std::size_t t,
                                    u64 seed) {
    AttackInstance inst;
    inst.kp = generate(q, n, d, t, seed);
    inst.input = sample_input(inst.kp.pk, seed ^ 0x9e3779b97f4a7c15ULL);
    inst.c = evaluate(inst.kp.pk, inst.input.m, inst.input.e);
    return inst;
}

bool verify_outcome(const PublicKey& pk, const std::vector<u64>& c,
                    const AttackOutcome& out) {
    if (!out.success) return true;
    if (out.recovered_instance) {
        PolyLatticeInstance copy = *out.recovered_instance;
        return public_right_block(copy) == pk.h_right;
    }
    const KeyParams& p = pk.params;
    if (out.recovered_error.size() != p.n) return false;
    if (out.recovered_message.size() != p.n - p.t) return false;
    int weight = 0;
    for (int v : out.recovered_error) {
        if (v != 0 && v != 1) return false;
        weight += v;
    }
    if (weight != p.d - 1) return false;
    return evaluate(pk, out.recovered_message, out.recovered_error) == c;
}

u64 error_search_ell(std::size_t n, std::size_t t, int d, bool alternative) {
    if (t == 0 || t >= n || d < 1) {
        throw usage_error("error_search_ell: need 0 < t < n, d >= 1");
    }
    u64 num = static_cast<u64>(n - t) * static_cast<u64>(d - 1);
    if (alternative) return num / t;
    return (num + n / 2) / n;  // round to nearest
}

AttackOutcome error_search_attack(const PublicKey& pk,
                                  const std::vector<u64>& c, u64 budget) {
    require_unmasked(pk, "error_search_attack");
    const KeyParams& p = pk.params;
    if (c.size() != p.n) throw usage_error("error_search_attack: bad length");
    AttackOutcome out = outcome_for("error_search", pk, 0);

    std::size_t head = p.n - p.t;
    u64 ell = error_search_ell(p.n, p.t, p.d);

    // Visit weights by increasing distance from ell: ell, ell+1, ell-1, ...
    std::vector<std::size_t> weights;
    weights.push_back(static_cast<std::size_t>(ell));
    for (std::size_t step = 1; weights.size() <= head + 1; ++step) {
        if (ell + step <= head) weights.push_back(static_cast<std::size_t>(ell + step));
        if (ell >= step) weights.push_back(static_cast<std::size_t>(ell - step));
        if (ell + step > head && ell < step) break;
    }

    std::vector<u64> base = tail_base(pk, c);
    std::vector<u64> tail;
    for (std::size_t w : weights) {
        if (w > head) continue;
        std::vector<std::size_t> support = first_combination(w);
        bool more = true;
        while (more) {
            if (out.tries >= budget) return out;
            ++out.tries;
            tail_with_support(pk, base, support, tail);
            int tail_weight = 0;
            bool binary = true;
            for (u64 v : tail) {
                if (v > 1) {
                    binary = false;
                    break;
                }
                tail_weight += static_cast<int>(v);
            }
            if (binary &&
                static_cast<int>(w) + tail_weight == p.d - 1) {
                out.recovered_error.assign(p.n, 0);
                for (std::size_t i : support) out.recovered_error[i] = 1;
                for (std::size_t j = 0; j < p.t; ++j) {
                    out.recovered_error[head + j] = static_cast<int>(tail[j]);
                }
                out.recovered_message = message_for_support(pk, c, support);
                out.success = true;
                return out;
            }
            more = next_combination(support, head);
        }
    }
    return out;
}

AttackOutcome trapdoor_search_attack(const PublicKey& pk, u64 work_bound) {
    require_unmasked(pk, "trapdoor_search_attack");
    const KeyParams& p = pk.params;
    AttackOutcome out = outcome_for("trapdoor_search", pk, 0);
    if (p.t != 1) {
        out.refused = true;
        out.refusal_reason = "only t = 1 keys are enumerated at toy scale";
        return out;
    }
    double work = std::pow(static_cast<double>(p.q), p.d) *
                  static_cast<double>(p.q) * static_cast<double>(p.n);
    if (work > static_cast<double>(work_bound)) {
        std::ostringstream why;
        why << "estimated enumeration work q^d * q * n = " << work
            << " exceeds bound " << work_bound;
        out.refused = true;
        out.refusal_reason = why.str();
        return out;
    }

    u64 qd = 1;
    for (int i = 0; i < p.d; ++i) qd *= p.q;

    // Candidate moduli: monic degree-d polynomials by base-q code.
    for (u64 code = 0; code < qd; ++code) {
        std::vector<u64> coeffs(static_cast<std::size_t>(p.d) + 1, 0);
        u64 v = code;
        for (int i = 0; i < p.d; ++i) {
            coeffs[static_cast<std::size_t>(i)] = v % p.q;
            v /= p.q;
        }
        coeffs[static_cast<std::size_t>(p.d)] = 1;
        FieldPoly c_cand(p.q, coeffs);
        if (!is_irreducible(c_cand)) continue;

        for (u64 tau = 0; tau < p.q; ++tau) {
            ++out.tries;
            if (poly_eval(c_cand, tau) == 0) continue;
            QuotientRingElem unit =
                qre_make(poly_linear_root(p.q, tau), c_cand);

            // Reconstruct the head points row by row from the public column.
            std::vector<u64> alphas;
            alphas.reserve(p.n);
            bool consistent = true;
            for (std::size_t i = 0; i + 1 < p.n && consistent; ++i) {
                u64 g = (p.s - pk.h_right[i][0]) % p.s;
                FieldPoly pw = qre_pow(unit, g).residue;
                u64 alpha;
                if (p.d == 1) {
                    // Everything is constant mod a linear modulus; the root
                    // of the modulus anchors the evaluation.
                    u64 root = (p.q - c_cand.coeff(0)) % p.q;
                    alpha = (root + p.q - pw.coeff(0)) % p.q;
                } else {
                    if (pw.degree() != 1 || pw.coeff(1) != 1) {
                        consistent = false;
                        break;
                    }
                    alpha = (p.q - pw.coeff(0)) % p.q;
                }
                alphas.push_back(alpha);
            }
            if (!consistent) continue;
            alphas.push_back(tau);
            std::vector<u64> sorted = alphas;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) !=
                sorted.end()) {
                continue;
            }
            bool roots_clear = true;
            for (u64 a : alphas) {
                if (poly_eval(c_cand, a) == 0) {
                    roots_clear = false;
                    break;
                }
            }
            if (!roots_clear) continue;

            try {
                PolyLatticeInstance cand =
                    build_lattice(p.q, {c_cand}, alphas);
                if (public_right_block(cand) == pk.h_right) {
                    out.success = true;
                    out.recovered_instance = std::move(cand);
                    return out;
                }
            } catch (const singular_tail_error&) {
            } catch (const usage_error&) {
            }
        }
    }
    return out;
}

AttackOutcome babai_inversion_attack(const AttackInstance& inst,
                                     int block_size) {
    const PublicKey& pk = inst.kp.pk;
    const KeyParams& p = pk.params;
    AttackOutcome out = outcome_for("babai_inversion", pk, 0);
    out.block_size = block_size;

    LatticeBasis pub = public_lattice_basis(pk);
    auto t0 = Clock::now();
    BkzStats stats;
    LatticeBasis red = bkz_reduce(pub, block_size, 0.99, 8, &stats);
    out.reduction_seconds = seconds_since(t0);
    out.enum_nodes = stats.enum_nodes;
    out.measured_delta = reduction_report(red).root_hermite;
    out.epsilon_at_delta =
        epsilon_observed(p.n, p.d, p.t, p.d0, p.q, out.measured_delta);

    ZVec target(p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
        target[i] = ZZ(static_cast<unsigned long>(inst.c[i]));
    }
    CvpResult cvp = babai_nearest_plane(red, target);
    ++out.tries;

    bool match = true;
    for (std::size_t i = 0; i < p.n; ++i) {
        if (cvp.error[i] != ZZ(inst.input.e[i])) {
            match = false;
            break;
        }
    }
    if (match) {
        out.success = true;
        out.recovered_error = inst.input.e;
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i + p.t < p.n; ++i) {
            if (inst.input.e[i] == 1) support.push_back(i);
        }
        out.recovered_message = message_for_support(pk, inst.c, support);
    }
    return out;
}

AttackOutcome embedding_attack(const AttackInstance& inst, int block_size,
                               long embed_const) {
    const PublicKey& pk = inst.kp.pk;
    const KeyParams& p = pk.params;
    if (embed_const < 1) throw usage_error("embedding_attack: embed_const >= 1");
    AttackOutcome out = outcome_for("embedding", pk, 0);
    out.block_size = block_size;

    EmbeddingCore core =
        run_embedding(pk, inst.c, inst.input.e, block_size, embed_const);
    out.reduction_seconds = core.seconds;
    out.enum_nodes = core.nodes;
    out.measured_delta = core.delta;
    out.epsilon_at_delta =
        epsilon_observed(p.n, p.d, p.t, p.d0, p.q, core.delta);
    out.success_row = core.success_row;
    out.success_enum = core.success_enum;
    out.success = core.success_row || core.success_enum;
    ++out.tries;
    if (out.success) {
        out.recovered_error = core.extracted;
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i + p.t < p.n; ++i) {
            if (core.extracted[i] == 1) support.push_back(i);
        }
        out.recovered_message = message_for_support(pk, inst.c, support);
    }
    return out;
}

AttackOutcome enhanced_embedding_attack(const AttackInstance& inst, int k,
                                        int block_size, u64 seed) {
    const PublicKey& pk = inst.kp.pk;
    const KeyParams& p = pk.params;
    if (k < 0 || k > p.d - 1) {
        throw usage_error("enhanced_embedding_attack: need 0 <= k <= d - 1");
    }
    AttackOutcome out = outcome_for("enhanced_embedding", pk, seed);
    out.block_size = block_size;
    out.guess_cost_log2 =
        enhanced_guess_cost(p.n, p.d, k);

    // The demonstrated branch guesses k true error positions (the cost of
    // finding this branch is what guess_cost_log2 accounts for).
    std::vector<std::size_t> error_support;
    for (std::size_t i = 0; i < p.n; ++i) {
        if (inst.input.e[i] == 1) error_support.push_back(i);
    }
    Rng rng(seed);
    std::vector<std::size_t> guessed = error_support;
    rng.shuffle(guessed);
    guessed.resize(static_cast<std::size_t>(k));
    std::sort(guessed.begin(), guessed.end());

    std::vector<u64> c_res = inst.c;
    std::vector<int> e_res = inst.input.e;
    for (std::size_t i : guessed) {
        c_res[i] = (c_res[i] + p.s - 1) % p.s;
        e_res[i] = 0;
    }

    if (k == p.d - 1) {
        // Residual error is zero: the corrected ciphertext must itself be a
        // lattice point, read the message off the identity block.
        std::vector<u64> base = tail_base(pk, c_res);
        bool member = std::all_of(base.begin(), base.end(),
                                  [](u64 v) { return v == 0; });
        ++out.tries;
        if (member) {
            out.success = true;
            out.success_row = true;
            out.recovered_error = inst.input.e;
            out.recovered_message =
                std::vector<u64>(c_res.begin(), c_res.begin() + (p.n - p.t));
        }
        return out;
    }

    EmbeddingCore core = run_embedding(pk, c_res, e_res, block_size, 1);
    out.reduction_seconds = core.seconds;
    out.enum_nodes = core.nodes;
    out.measured_delta = core.delta;
    // Slack formula with the residual error weight d - 1 - k.
    out.epsilon_at_delta =
        epsilon_observed(p.n, p.d - k, p.t, p.d0, p.q, core.delta);
    out.success_row = core.success_row;
    out.success_enum = core.success_enum;
    out.success = core.success_row || core.success_enum;
    ++out.tries;
    if (out.success) {
        out.recovered_error = core.extracted;
        for (std::size_t i : guessed) out.recovered_error[i] = 1;
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i + p.t < p.n; ++i) {
            if (out.recovered_error[i] == 1) support.push_back(i);
        }
        out.recovered_message = message_for_support(pk, inst.c, support);
    }
    return out;
}

AttackOutcome gcd_trapdoor_attack_t1(const PublicKey& pk, u64 g_bound) {
    require_unmasked(pk, "gcd_trapdoor_attack_t1");
    const KeyParams& p = pk.params;
    if (p.t != 1) throw usage_error("gcd_trapdoor_attack_t1: key must have t = 1");
    AttackOutcome out = outcome_for("gcd_t1", pk, 0);

    double qd_est = std::pow(static_cast<double>(p.q), p.d);
    if (qd_est > 1e6) {
        out.refused = true;
        out.refusal_reason =
            "candidate modulus enumeration q^d exceeds the 1e6 guard";
        return out;
    }
    u64 qd = 1;
    for (int i = 0; i < p.d; ++i) qd *= p.q;

    // Public exponents: h_right stores -g mod s.
    std::vector<std::pair<u64, std::size_t>> gs;  // (exponent, row)
    for (std::size_t i = 0; i + 1 < p.n; ++i) {
        gs.emplace_back((p.s - pk.h_right[i][0]) % p.s, i);
    }
    std::sort(gs.begin(), gs.end());
    std::size_t pivot = 0;
    while (pivot < gs.size() && gs[pivot].first < 2) ++pivot;
    if (pivot >= gs.size() || gs[pivot].first > g_bound) {
        std::ostringstream why;
        why << "smallest usable public exponent "
            << (pivot < gs.size() ? gs[pivot].first : p.s)
            << " exceeds g_bound " << g_bound
            << "; building x^g - x + a explicitly is infeasible for generic "
               "exponents of size about q^d";
        out.refused = true;
        out.refusal_reason = why.str();
        return out;
    }
    u64 g1 = gs[pivot].first;

    FieldPoly x = poly_x(p.q);
    for (u64 alpha = 0; alpha < p.q; ++alpha) {
        ++out.tries;
        // f = x^g1 - x + alpha, the polynomial c(x) must divide when alpha
        // is the point behind the pivot row.
        std::vector<u64> fc(static_cast<std::size_t>(g1) + 1, 0);
        fc[0] = alpha % p.q;
        fc[1] = (fc.size() > 1) ? (p.q - 1) : 0;
        fc[static_cast<std::size_t>(g1)] = (fc[static_cast<std::size_t>(g1)] + 1) % p.q;
        FieldPoly f(p.q, fc);
        if (f.degree() < 1) continue;

        FieldPoly xqd = poly_pow_mod(x, qd, f);
        FieldPoly common = poly_gcd(f, poly_sub(xqd, x));
        if (common.degree() < p.d) continue;

        // Degree-d irreducible divisors of the common part are the modulus
        // candidates.
        for (u64 code = 0; code < qd; ++code) {
            std::vector<u64> coeffs(static_cast<std::size_t>(p.d) + 1, 0);
            u64 v = code;
            for (int i = 0; i < p.d; ++i) {
                coeffs[static_cast<std::size_t>(i)] = v % p.q;
                v /= p.q;
            }
            coeffs[static_cast<std::size_t>(p.d)] = 1;
            FieldPoly cand(p.q, coeffs);
            ++out.tries;
            if (!poly_divmod(common, cand).rem.is_zero()) continue;
            if (!is_irreducible(cand)) continue;

            // Recover every point as the constant x - x^(g_i) mod cand;
            // the tail point is pinned to zero by translation invariance.
            std::vector<u64> alphas(p.n, 0);
            bool consistent = true;
            for (std::size_t i = 0; i + 1 < p.n && consistent; ++i) {
                u64 g = (p.s - pk.h_right[i][0]) % p.s;
                FieldPoly w =
                    poly_sub(x, poly_pow_mod(x, g, cand));
                if (w.degree() > 0) {
                    consistent = false;
                    break;
                }
                alphas[i] = w.coeff(0);
            }
            if (!consistent) continue;
            std::vector<u64> sorted = alphas;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) !=
                sorted.end()) {
                continue;
            }
            try {
                PolyLatticeInstance rec = build_lattice(p.q, {cand}, alphas);
                if (public_right_block(rec) == pk.h_right) {
                    out.success = true;
                    out.recovered_instance = std::move(rec);
                    return out;
                }
            } catch (const singular_tail_error&) {
            } catch (const usage_error&) {
            }
        }
    }
    return out;
}

RelatedMessageResult related_message_attack(const PublicKey& pk,
                                            const std::vector<u64>& c1,
                                            const std::vector<u64>& c2,
                                            u64 budget) {
    require_unmasked(pk, "related_message_attack");
    const KeyParams& p = pk.params;
    if (c1.size() != p.n || c2.size() != p.n) {
        throw usage_error("related_message_attack: bad ciphertext length");
    }
    if (p.s % 2 != 0) {
        throw usage_error(
            "related_message_attack: parity leak needs an even modulus");
    }
    RelatedMessageResult res;
    for (std::size_t i = 0; i < p.n; ++i) {
        if ((c1[i] + c2[i]) % 2 == 1) res.parity_positions.push_back(i);
    }

    std::size_t diff = res.parity_positions.size();
    if (diff % 2 != 0) return res;  // inconsistent with equal plaintexts
    std::size_t half = diff / 2;
    if (half > static_cast<std::size_t>(p.d - 1)) return res;
    std::size_t overlap = static_cast<std::size_t>(p.d - 1) - half;

    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < p.n; ++i) {
        if ((c1[i] + c2[i]) % 2 == 0) rest.push_back(i);
    }
    if (overlap > rest.size()) return res;

    std::vector<u64> base1 = tail_base(pk, c1);
    std::vector<u64> base2 = tail_base(pk, c2);
    std::size_t head = p.n - p.t;

    auto check = [&](const std::vector<u64>& c, const std::vector<u64>& base,
                     const std::vector<int>& e, std::vector<u64>& m) {
        std::vector<std::size_t> head_support;
        for (std::size_t i = 0; i < head; ++i) {
            if (e[i] == 1) head_support.push_back(i);
        }
        std::vector<u64> tail;
        tail_with_support(pk, base, head_support, tail);
        for (std::size_t j = 0; j < p.t; ++j) {
            if (tail[j] != static_cast<u64>(e[head + j])) return false;
        }
        m = message_for_support(pk, c, head_support);
        return true;
    };

    std::vector<std::size_t> ov_idx = first_combination(overlap);
    bool more_ov = true;
    while (more_ov) {
        std::vector<std::size_t> d1_idx = first_combination(half);
        bool more_d1 = (diff > 0) || (half == 0);
        bool d1_once = (half == 0);
        while (more_d1) {
            if (res.tries >= budget) return res;
            ++res.tries;

            std::vector<int> e1(p.n, 0), e2(p.n, 0);
            for (std::size_t idx : ov_idx) {
                e1[rest[idx]] = 1;
                e2[rest[idx]] = 1;
            }
            std::vector<bool> in_d1(diff, false);
            for (std::size_t idx : d1_idx) in_d1[idx] = true;
            for (std::size_t k = 0; k < diff; ++k) {
                if (in_d1[k]) {
                    e1[res.parity_positions[k]] = 1;
                } else {
                    e2[res.parity_positions[k]] = 1;
                }
            }

            std::vector<u64> m1, m2;
            if (check(c1, base1, e1, m1) && check(c2, base2, e2, m2)) {
                bool same_low_bits = true;
                for (std::size_t i = 0; i < head; ++i) {
                    if ((m1[i] & 1) != (m2[i] & 1)) {
                        same_low_bits = false;
                        break;
                    }
                }
                if (same_low_bits) {
                    res.success = true;
                    res.e1 = e1;
                    res.e2 = e2;
                    res.plaintext.resize(head);
                    for (std::size_t i = 0; i < head; ++i) {
                        res.plaintext[i] = static_cast<int>(m1[i] & 1);
                    }
                    return res;
                }
            }
            if (d1_once) break;
            more_d1 = next_combination(d1_idx, diff);
        }
        if (overlap == 0) break;
        more_ov = next_combination(ov_idx, rest.size());
    }
    return res;
}

CapReduction d_cap_reduction(const PublicKey& pk, const std::vector<u64>& c) {
    const KeyParams& p = pk.params;
    if (c.size() != p.n) throw usage_error("d_cap_reduction: bad length");
    CapReduction red;
    red.c_out = c;
    if (2 * static_cast<std::size_t>(p.d) <= p.n) {
        red.applied = false;
        return red;
    }
    for (u64& v : red.c_out) v = (v + p.s - 1) % p.s;
    red.applied = true;
    return red;
}

}  // namespace polylat
