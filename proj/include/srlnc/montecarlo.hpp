#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srlnc/analytic.hpp"
#include "srlnc/coding_model.hpp"
#include "srlnc/rational.hpp"

namespace srlnc {

/// Trials per work chunk. Chunk c of a run draws from RngStream(seed, c), so
/// success counts depend only on (seed, trials) and never on the thread count.
inline constexpr std::uint64_t kChunkTrials = std::uint64_t{1} << 16;

/// Binomial point estimate.
struct EstimateResult {
  double estimate = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double std_error = 0.0;  // sqrt(p(1-p)/trials) unless documented otherwise
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;

  static EstimateResult from_counts(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed);
};

/// Fraction of sampled n x m matrices with rank n. Columns are generated one at
/// a time and inserted into an echelon basis of F_q^n; a trial stops as soon as
/// the rank reaches n or the remaining columns cannot make up the deficit.
/// `threads` = 0 uses default_threads(). Throws UsageError if trials == 0.
EstimateResult mc_full_rank(int n, int m, const CoefficientModel& model, std::uint64_t trials, std::uint64_t seed,
                            unsigned threads = 0);

/// Estimates p(i, n): draws i rows of length n conditioned on full row rank (by
/// rejection), then one more row, and counts how often the extra row is
/// dependent. Throws DomainError unless 0 <= i < n, and RejectionSamplingError
/// when a chunk's acceptance rate drops below 1e-6.
EstimateResult mc_row_dependence(int i, int n, const CoefficientModel& model, std::uint64_t trials, std::uint64_t seed,
                                 unsigned threads = 0);

/// Entries of the inverse of a random nonsingular i x i matrix.
struct InverseEntryStats {
  int i = 0;
  std::uint64_t trials = 0;    // accepted (nonsingular) samples
  std::uint64_t attempts = 0;  // including rejected singular samples
  std::vector<std::uint64_t> value_counts;  // over all i*i entries, indexed by field element
  /// Pooled fraction of zero entries. successes counts zero entries over
  /// trials*i*i entries; std_error comes from the per-trial variance of the
  /// zero fraction, since entries of one inverse are dependent.
  EstimateResult zero_fraction;
  /// Fraction of trials with inverse entry (0,0) equal to zero (binomial).
  EstimateResult entry00_zero;
};

/// Throws DomainError unless i >= 1; RejectionSamplingError as for mc_row_dependence.
InverseEntryStats mc_inverse_entry_distribution(int i, const CoefficientModel& model, std::uint64_t trials,
                                                std::uint64_t seed, unsigned threads = 0);

/// Exact Pr{rank n} for an n x m matrix under the coefficient law with exact p0,
/// by enumerating all q^{nm} matrices. Throws OracleSizeError if q^{nm} > 2^24.
Rational brute_force_full_rank(int n, int m, const FieldPtr& field, const Rational& p0);

/// Largest number of matrices brute_force_full_rank will enumerate.
inline constexpr std::uint64_t kBruteForceLimit = std::uint64_t{1} << 24;

/// Seed for sweep point m, derived from the sweep seed.
std::uint64_t point_seed(std::uint64_t seed, int m) noexcept;

struct SweepRow {
  int n = 0;
  int m = 0;
  std::uint32_t q = 0;
  double p0 = 0.0;
  double value = 0.0;                     // NaN when the point failed
  std::optional<EstimateResult> estimate;  // mc only
  std::optional<Rational> exact;           // brute only
  std::optional<std::string> error;        // per-point refusal message
};

struct SweepTable {
  std::string method;  // proposed | brown | chen | sehat | uniform | mc | brute
  std::vector<SweepRow> rows;

  std::vector<double> values() const;
  bool has_errors() const noexcept;
};

struct SweepRequest {
  std::string method;
  int n = 1;
  std::vector<int> ms;
  FieldPtr field;
  Rational p0;  // exact, so the brute-force oracle sees the intended value
  std::uint64_t trials = 0;
  std::uint64_t seed = RngStream::kDefaultSeed;
  unsigned threads = 0;
};

/// Evaluates the method at every m. Monte Carlo points use point_seed(seed, m).
/// Brute-force size refusals are recorded per point; other errors propagate.
/// Throws UsageError for an unknown method, an empty m list, or mc with trials == 0.
SweepTable sweep(const SweepRequest& request);

}  // namespace srlnc
