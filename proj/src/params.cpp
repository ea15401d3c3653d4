#include "polylat/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace polylat {

namespace {

constexpr double kTwoPiE = 2.0 * 3.14159265358979323846 * 2.71828182845904523536;

// Upper block size for the numeric beta^(1/(2 beta)) fallback.
constexpr int kNumericBetaCap = 100000;

double asymptotic_delta(int beta) {
    return std::pow(static_cast<double>(beta), 1.0 / (2.0 * beta));
}

std::optional<double> parse_cell(const std::string& tok, int line_no,
                                 const char* what) {
    if (tok == "-") return std::nullopt;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size()) {
        throw usage_error("cost model line " + std::to_string(line_no) +
                          ": bad " + std::string(what) + " value '" + tok +
                          "'");
    }
    return v;
}

}  // namespace

CostModel CostModel::parse(std::istream& in) {
    CostModel model;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::vector<std::string> toks;
        std::string tok;
        while (row >> tok) toks.push_back(tok);
        if (toks.empty()) continue;
        if (toks.size() < 3 || toks.size() > 4) {
            throw usage_error("cost model line " + std::to_string(line_no) +
                              ": expected 3 or 4 columns, got " +
                              std::to_string(toks.size()));
        }
        CostEntry e;
        auto beta_val = parse_cell(toks[0], line_no, "block size");
        if (!beta_val || *beta_val < 2 ||
            *beta_val != std::floor(*beta_val)) {
            throw usage_error("cost model line " + std::to_string(line_no) +
                              ": block size must be an integer >= 2");
        }
        e.beta = static_cast<int>(*beta_val);
        e.log2_enum = parse_cell(toks[1], line_no, "enumeration cost");
        e.rounds = parse_cell(toks[2], line_no, "rounds");
        if (toks.size() == 4) e.delta = parse_cell(toks[3], line_no, "delta");
        if (e.delta && (*e.delta <= 1.0 || *e.delta >= 2.0)) {
            throw usage_error("cost model line " + std::to_string(line_no) +
                              ": delta out of range (1, 2)");
        }
        model.entries_.push_back(e);
    }
    std::sort(model.entries_.begin(), model.entries_.end(),
              [](const CostEntry& a, const CostEntry& b) {
                  return a.beta < b.beta;
              });
    for (std::size_t i = 1; i < model.entries_.size(); ++i) {
        if (model.entries_[i].beta == model.entries_[i - 1].beta) {
            throw usage_error("cost model: duplicate block size " +
                              std::to_string(model.entries_[i].beta));
        }
    }
    // Sanity: enumeration cost and achieved delta must both be monotone in
    // the block size (cost up, delta down) among the rows that carry them.
    const CostEntry* prev_cost = nullptr;
    const CostEntry* prev_delta = nullptr;
    for (const auto& e : model.entries_) {
        if (e.log2_enum) {
            if (prev_cost && *prev_cost->log2_enum > *e.log2_enum) {
                throw usage_error(
                    "cost model: enumeration cost decreases at block " +
                    std::to_string(e.beta));
            }
            prev_cost = &e;
        }
        if (e.delta) {
            if (prev_delta && *prev_delta->delta < *e.delta) {
                throw usage_error("cost model: delta increases at block " +
                                  std::to_string(e.beta));
            }
            prev_delta = &e;
        }
    }
    return model;
}

CostModel CostModel::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

CostModel CostModel::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open cost model file: " + path);
    return parse(in);
}

const CostModel& CostModel::bundled() {
    static const CostModel model =
        from_file(std::string(POLYLAT_SOURCE_DATA_DIR) + "/cost_model.txt");
    return model;
}

const CostEntry* CostModel::find(int beta) const {
    for (const auto& e : entries_)
        if (e.beta == beta) return &e;
    return nullptr;
}

const CostEntry* CostModel::first_achieving(double delta) const {
    for (const auto& e : entries_) {
        if (e.delta && *e.delta <= delta) return &e;
    }
    return nullptr;
}

const CostEntry* CostModel::best_cost_at_or_below(int beta) const {
    const CostEntry* best = nullptr;
    for (const auto& e : entries_) {
        if (e.beta > beta) break;
        if (e.log2_enum) best = &e;
    }
    return best;
}

bool CostModel::has_delta_column() const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [](const CostEntry& e) { return e.delta.has_value(); });
}

u64 next_prime_q(u64 n, u64 d) {
    u64 v = n + d + 1;
    while (!is_prime_u64(v)) ++v;
    return v;
}

u64 error_search_positions(std::size_t n, int d) {
    if (d < 1 || static_cast<std::size_t>(d) >= n) {
        throw usage_error("error_search_positions: need 1 <= d < n");
    }
    u64 num = static_cast<u64>(n - d) * static_cast<u64>(d - 1);
    return (num + n - 1) / n;  // ceil(num / n)
}

double error_search_security(std::size_t n, int d) {
    u64 l = error_search_positions(n, d);
    return static_cast<double>(log2_binomial(n - d, l));
}

double gap_factor(std::size_t n, int d, std::size_t t, int d0, u64 q) {
    if (n == 0 || d < 2 || t == 0 || d0 < 1 || q < 3) {
        throw usage_error("gap_factor: need n > 0, d >= 2, t >= 1, d0 >= 1");
    }
    double head = std::sqrt(static_cast<double>(n) / (kTwoPiE * (d - 1)));
    double vol = std::pow(static_cast<double>(q),
                          static_cast<double>(d0) * t / n);
    return head * vol;
}

double delta_for_gap(std::size_t n, int d, std::size_t t, int d0, u64 q,
                     double epsilon) {
    if (epsilon <= 0.0) throw usage_error("delta_for_gap: epsilon must be > 0");
    double gap = gap_factor(n, d, t, d0, q);
    return std::pow(gap / epsilon, 1.0 / n);
}

double epsilon_observed(std::size_t n, int d, std::size_t t, int d0, u64 q,
                        double delta) {
    if (delta <= 1.0) throw usage_error("epsilon_observed: delta must be > 1");
    double head = std::sqrt(static_cast<double>(n) / (kTwoPiE * (d - 1)));
    double s = std::pow(static_cast<double>(q), d0) - 1.0;
    double vol = std::pow(s, static_cast<double>(t) / n);
    return head * vol / std::pow(delta, static_cast<double>(n));
}

double round4(double x) { return std::round(x * 10000.0) / 10000.0; }

std::optional<int> block_size_for_delta(double delta, const CostModel& model) {
    if (!(delta > 1.0) || !(delta < 1.03)) {
        throw usage_error("block_size_for_delta: delta must be in (1, 1.03)");
    }
    if (model.has_delta_column()) {
        const CostEntry* e = model.first_achieving(delta);
        if (e) return e->beta;
        return std::nullopt;
    }
    // No delta data: solve beta^(1/(2 beta)) <= delta on the decreasing
    // branch. The function peaks near beta = e, so scanning upward from 8
    // finds the smallest solution.
    for (int beta = 8; beta <= kNumericBetaCap; ++beta) {
        if (asymptotic_delta(beta) <= delta) return beta;
    }
    return std::nullopt;
}

CostEstimate estimate_cost(std::size_t n, int beta, const CostModel& model) {
    if (n < 2) throw usage_error("estimate_cost: need n >= 2");
    if (beta < 2) throw usage_error("estimate_cost: need block size >= 2");
    const CostEntry* e = model.best_cost_at_or_below(beta);
    if (!e) {
        throw usage_error(
            "estimate_cost: cost model has no enumeration cost at or below "
            "block size " +
            std::to_string(beta));
    }
    double rounds = e->rounds.value_or(1.0);
    CostEstimate out;
    out.log2_cost =
        std::log2(static_cast<double>(n) * rounds) + *e->log2_enum;
    out.beta_used = e->beta;
    out.lower_bound = (e->beta < beta);
    return out;
}

std::size_t public_key_size_bits(std::size_t n, std::size_t t, int d0, u64 q) {
    if (t == 0 || t >= n) throw usage_error("public_key_size_bits: need 0 < t < n");
    u64 s = 1;
    for (int i = 0; i < d0; ++i) s *= q;
    s -= 1;
    if (s < 2) throw usage_error("public_key_size_bits: modulus too small");
    int bits = 1 + floor_log2(s - 1);
    return (n - t) * t * static_cast<std::size_t>(bits);
}

ParamRow table_row(std::size_t n, int d, const CostModel& model,
                   double epsilon) {
    ParamRow row;
    row.n = n;
    row.d = d;
    row.t = static_cast<std::size_t>(d);
    row.d0 = 1;
    row.q = next_prime_q(n, d);
    row.lambda_raw = error_search_security(n, d);
    row.lambda_bits = static_cast<int>(std::ceil(row.lambda_raw - 1e-9));
    row.delta = round4(delta_for_gap(n, d, row.t, row.d0, row.q, epsilon));
    row.block_size = block_size_for_delta(row.delta, model);
    row.block_from_table = model.has_delta_column() && row.block_size.has_value();
    if (row.block_size && model.best_cost_at_or_below(*row.block_size)) {
        CostEstimate est = estimate_cost(n, *row.block_size, model);
        row.cost_available = true;
        row.log2_cost = est.log2_cost;
        row.cost_lower_bound = est.lower_bound;
    }
    row.public_key_bits = public_key_size_bits(n, row.t, row.d0, row.q);
    return row;
}

SuggestResult suggest_params(int lambda_bits, const CostModel& model,
                             double epsilon, std::size_t n_lo,
                             std::size_t n_hi) {
    if (lambda_bits < 1) throw usage_error("suggest_params: lambda must be >= 1");
    if (n_lo < 42 || n_hi < n_lo) {
        throw usage_error("suggest_params: need 42 <= n_lo <= n_hi");
    }
    SuggestResult out;
    bool lambda_cap_hit = false;
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        // The binomial count C(n-d, l) is at most C(n, n/2) ~ 2^n / sqrt(n),
        // but the usable maximum over admissible d grows like 36.4 log2(n)
        // in this regime; past that no d in [20, n/2] reaches the target.
        if (static_cast<double>(lambda_bits) >
            36.4 * std::log2(static_cast<double>(n))) {
            lambda_cap_hit = true;
            continue;
        }
        int d_hi = static_cast<int>(n / 2);
        for (int d = 20; d <= d_hi; ++d) {
            ParamRow row = table_row(n, d, model, epsilon);
            if (row.lambda_bits < lambda_bits) continue;
            // A row qualifies only when the model can certify the reduction
            // cost; a required block size the table cannot price (or reach)
            // cannot support a security claim.
            if (!row.block_size || !row.cost_available) continue;
            if (row.log2_cost < static_cast<double>(lambda_bits)) continue;
            out.rows.push_back(row);
        }
    }
    std::sort(out.rows.begin(), out.rows.end(),
              [](const ParamRow& a, const ParamRow& b) {
                  if (a.public_key_bits != b.public_key_bits)
                      return a.public_key_bits < b.public_key_bits;
                  if (a.n != b.n) return a.n < b.n;
                  return a.d < b.d;
              });
    if (out.rows.empty()) {
        std::ostringstream why;
        if (lambda_cap_hit) {
            why << "security target " << lambda_bits
                << " exceeds the error-search ceiling 36.4*log2(n) for every "
                   "n in ["
                << n_lo << ", " << n_hi << "]";
        } else {
            why << "no (n, d) with n in [" << n_lo << ", " << n_hi
                << "] satisfies both the error-search and the "
                   "reduction-cost constraints at level "
                << lambda_bits;
        }
        out.diagnostic = why.str();
    }
    return out;
}

double asymptotic_bkz_cost(double delta, OracleRegime regime) {
    if (!(delta > 1.0) || !(delta < 1.03)) {
        throw usage_error("asymptotic_bkz_cost: delta must be in (1, 1.03)");
    }
    double x = std::log2(delta);          // small positive
    double lx = std::log2(x);             // negative
    switch (regime) {
        case OracleRegime::QuadraticExp:
            return (lx * lx) / (x * x);
        case OracleRegime::BetaPowBeta:
            return -std::log2(-lx / x) * lx / x;
        case OracleRegime::SingleExp:
            return -lx / x;
    }
    throw usage_error("asymptotic_bkz_cost: unknown regime");
}

double invertibility_probability(u64 s, std::size_t t) {
    if (s < 2) throw usage_error("invertibility_probability: need s >= 2");
    if (t == 0) throw usage_error("invertibility_probability: need t >= 1");
    t = std::min<std::size_t>(t, 200);
    double prob = 1.0;
    for (u64 p : prime_divisors(s)) {
        double inv_p = 1.0 / static_cast<double>(p);
        double pj = 1.0;
        for (std::size_t j = 1; j <= t; ++j) {
            pj *= inv_p;
            double factor = 1.0 - pj;
            prob *= factor;
            if (pj < 1e-18) break;  // remaining factors are 1 to full precision
        }
    }
    return prob;
}

std::vector<std::pair<u64, double>> invertibility_series(u64 s_lo, u64 s_hi,
                                                         std::size_t t) {
    if (s_lo < 2 || s_hi < s_lo) {
        throw usage_error("invertibility_series: need 2 <= s_lo <= s_hi");
    }
    std::vector<std::pair<u64, double>> out;
    out.reserve(s_hi - s_lo + 1);
    for (u64 s = s_lo; s <= s_hi; ++s) {
        out.emplace_back(s, invertibility_probability(s, t));
    }
    return out;
}

bool gap_constraint_ok(std::size_t n, int d) {
    if (n == 0 || d < 2) throw usage_error("gap_constraint_ok: need n > 0, d >= 2");
    double head = std::sqrt(static_cast<double>(n) / (kTwoPiE * (d - 1)));
    double vol = std::pow(static_cast<double>(n) + 2.0 * d,
                          static_cast<double>(d) / n);
    double bound = 0.3 * std::pow(1.007, static_cast<double>(n));
    return head * vol <= bound;
}

double enhanced_guess_cost(std::size_t n, int d, int k) {
    if (d < 1 || static_cast<std::size_t>(d) >= n) {
        throw usage_error("enhanced_guess_cost: need 1 <= d < n");
    }
    if (k < 0 || static_cast<u64>(k) > static_cast<u64>(n - d)) {
        throw usage_error("enhanced_guess_cost: need 0 <= k <= n - d");
    }
    return static_cast<double>(log2_binomial(n - d, static_cast<u64>(k)));
}

}  // namespace polylat
