#ifndef POLYLAT_PARAMS_HPP
#define POLYLAT_PARAMS_HPP

// Parameter selection and cost estimation for the trapdoor scheme.
//
// The security of a key with dimension n and error weight d-1 rests on two
// pillars: the cost of combinatorial error search, measured as a binomial
// count, and the cost of lattice reduction strong enough to expose the short
// error vector, measured through a root-Hermite-factor target fed into an
// enumeration cost table. This header provides both calculations plus the
// helpers that turn a desired security level into concrete (n, d, q) rows.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polylat/numth.hpp"

namespace polylat {

// One row of an enumeration cost table. beta is the BKZ block size; the
// remaining columns may be absent (written as '-' in the file format):
//   log2_enum  log2 of the enumeration cost for one SVP call at this block
//   rounds     number of BKZ tours charged (defaults to 1 when absent)
//   delta      root Hermite factor this block size achieves
struct CostEntry {
    int beta = 0;
    std::optional<double> log2_enum;
    std::optional<double> rounds;
    std::optional<double> delta;
};

// An enumeration cost model loaded from a whitespace-separated text file.
// Lines starting with '#' and blank lines are skipped. Each data line is
//   beta  log2_enum_cost  rounds  [delta]
// with '-' marking a missing value. Entries must have distinct block sizes;
// they are stored sorted by beta ascending.
class CostModel {
  public:
    static CostModel parse(std::istream& in);
    static CostModel parse_string(const std::string& text);
    static CostModel from_file(const std::string& path);

    // The cost table shipped with the source tree (data/cost_model.txt).
    static const CostModel& bundled();

    const std::vector<CostEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    // Entry with the given block size, if present.
    const CostEntry* find(int beta) const;

    // Smallest tabulated block size whose delta column is <= delta.
    const CostEntry* first_achieving(double delta) const;

    // Largest entry with beta <= limit that carries an enumeration cost.
    const CostEntry* best_cost_at_or_below(int beta) const;

    bool has_delta_column() const;

  private:
    std::vector<CostEntry> entries_;
};

// Smallest prime strictly greater than n + d.
u64 next_prime_q(u64 n, u64 d);

// Cost in bits of brute-forcing a weight-(d-1) binary error vector of length
// n by guessing error positions: log2 C(n-d, l) with l = ceil((n-d)(d-1)/n).
// The returned value is the raw logarithm; callers wanting a table-style
// integer security level should take the ceiling.
double error_search_security(std::size_t n, int d);

// Number of error positions l used inside error_search_security.
u64 error_search_positions(std::size_t n, int d);

// The expected ratio between the Gaussian-heuristic length of the shortest
// embedding-lattice vector and the planted short vector's length:
//   sqrt(n / (2 pi e (d-1))) * q^(d0 * t / n).
// Reduction succeeds when the planted vector is shorter than what generic
// reduction can reach, i.e. when gap <= epsilon * delta^n.
double gap_factor(std::size_t n, int d, std::size_t t, int d0, u64 q);

// Root Hermite factor a reduction algorithm must reach for the embedding
// attack to find the planted vector with slack epsilon:
//   delta = (gap / epsilon)^(1/n).
// Returned unrounded; tables quote it rounded to four decimals.
double delta_for_gap(std::size_t n, int d, std::size_t t, int d0, u64 q,
                     double epsilon);

// Inverse view of the same inequality, using the lattice volume s^t rather
// than the q^(d0 t) approximation: the slack epsilon at which a reduction
// reaching root Hermite factor delta sits exactly at the success boundary.
// Experiments report this value at their observed delta.
double epsilon_observed(std::size_t n, int d, std::size_t t, int d0, u64 q,
                        double delta);

// Round to four decimal places, the precision used in parameter tables.
double round4(double x);

// Smallest BKZ block size expected to reach the given root Hermite factor.
// Uses the model's delta column when it has one; if the model carries no
// delta information at all, falls back to the asymptotic relation
// delta ~ beta^(1/(2 beta)) solved numerically. Returns nullopt when the
// target is below what the model (or the capped numeric search) can reach.
// Requires 1 < delta < 1.03.
std::optional<int> block_size_for_delta(double delta, const CostModel& model);

struct CostEstimate {
    double log2_cost = 0.0;  // log2(n * rounds * enum_cost)
    int beta_used = 0;       // tabulated block the enumeration cost came from
    bool lower_bound = false;  // true when beta_used < requested block size
};

// Attack cost for running BKZ with the given block size on an n-dimensional
// basis: log2(n * rounds * E(beta0)) where beta0 is the largest tabulated
// block size <= beta with a cost entry. When beta itself is not tabulated
// the result is a lower bound and the flag says so. Throws usage_error when
// no tabulated block size <= beta carries a cost.
CostEstimate estimate_cost(std::size_t n, int beta, const CostModel& model);

// A complete parameter row in the style of the published table: for given
// (n, d) with t = d, d0 = 1, q the next prime above n + d.
struct ParamRow {
    std::size_t n = 0;
    int d = 0;
    std::size_t t = 0;
    int d0 = 1;
    u64 q = 0;
    double lambda_raw = 0.0;  // raw log2 binomial
    int lambda_bits = 0;      // ceil(lambda_raw), the quoted security level
    double delta = 0.0;       // required root Hermite factor, 4dp rounded
    std::optional<int> block_size;  // nullopt: below the model's reach
    bool block_from_table = false;
    // True when the model prices some block at or below block_size; the two
    // cost fields are meaningful only in that case.
    bool cost_available = false;
    double log2_cost = 0.0;
    bool cost_lower_bound = false;
    std::size_t public_key_bits = 0;
};

// Bits needed to store the public (n-t) x t matrix with entries mod s:
// (n - t) * t * (1 + floor(log2(s - 1))) where s = q^d0 - 1.
std::size_t public_key_size_bits(std::size_t n, std::size_t t, int d0, u64 q);

// Build the parameter row for (n, d) under the given cost model with the
// standard embedding slack epsilon.
ParamRow table_row(std::size_t n, int d, const CostModel& model,
                   double epsilon = 0.3);

struct SuggestResult {
    std::vector<ParamRow> rows;  // sorted by public key size ascending
    std::string diagnostic;      // non-empty explanation when rows is empty
};

// Enumerate (n, d) pairs with n in [n_lo, n_hi], 20 <= d <= n/2, t = d,
// d0 = 1, keeping rows whose error-search security reaches lambda_bits and
// whose required reduction strength is costed at or above lambda_bits by the
// model. Rows whose required delta lies below the model's reach are skipped:
// their reduction cost cannot be certified. A row is also skipped when
// lambda exceeds the dimension-driven cap 36.4 * log2(n), beyond which the
// binomial count cannot reach the target for any admissible d.
SuggestResult suggest_params(int lambda_bits, const CostModel& model,
                             double epsilon = 0.3, std::size_t n_lo = 200,
                             std::size_t n_hi = 300);

// Asymptotic lower bounds on the cost of reaching root Hermite factor delta,
// one per assumption on the SVP oracle's cost in the block size beta.
// With log = log2 and unit constants:
//   QuadraticExp (oracle cost 2^O(beta^2)):  log^2(log delta) / log^2(delta)
//   BetaPowBeta  (oracle cost beta^O(beta)):
//       -log(-log(log delta)/log delta) * log(log delta) / log(delta)
//   SingleExp    (oracle cost 2^O(beta)):   -log(log delta) / log(delta)
// All three grow as delta decreases toward 1, and for any fixed delta in
// (1, 1.03) they are ordered QuadraticExp >= BetaPowBeta >= SingleExp.
enum class OracleRegime { QuadraticExp, BetaPowBeta, SingleExp };
double asymptotic_bkz_cost(double delta, OracleRegime regime);

// Probability that a uniformly random t x t matrix over Z_s is invertible:
//   P_s = prod over primes p | s of prod_{j=1..t} (1 - p^-j).
// Converges quickly in t; t is capped at 200 where the tail is below double
// precision for every s >= 2.
double invertibility_probability(u64 s, std::size_t t);

// The series behind the published invertibility plot: P_s for s in
// [s_lo, s_hi] at fixed dimension t.
std::vector<std::pair<u64, double>> invertibility_series(u64 s_lo, u64 s_hi,
                                                         std::size_t t = 200);

// Feasibility of the embedding-attack constraint in the simplified form used
// for first-cut parameter sizing: with q approximated by n + 2d and the
// reduction strength fixed at delta = 1.007,
//   sqrt(n / (2 pi e (d-1))) * (n + 2d)^(d/n) <= 0.3 * 1.007^n.
bool gap_constraint_ok(std::size_t n, int d);

// log2 C(n-d, k): the multiplicative guessing overhead of the enhanced
// embedding attack that fixes k error positions before reducing.
double enhanced_guess_cost(std::size_t n, int d, int k);

}  // namespace polylat

#endif  // POLYLAT_PARAMS_HPP
