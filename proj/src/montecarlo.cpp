#include "srlnc/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "srlnc/column_basis.hpp"
#include "srlnc/errors.hpp"
#include "srlnc/matrix.hpp"
#include "srlnc/parallel.hpp"
#include "srlnc/rng.hpp"

namespace srlnc {

namespace {

constexpr double kMinAcceptance = 1e-6;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t chunk_count(std::uint64_t trials) { return static_cast<std::size_t>((trials + kChunkTrials - 1) / kChunkTrials); }

std::uint64_t chunk_trials(std::size_t c, std::uint64_t trials) {
  const std::uint64_t first = static_cast<std::uint64_t>(c) * kChunkTrials;
  return std::min(kChunkTrials, trials - first);
}

// Each kernel owns a basis of F_q^n and appends one freshly sampled vector per add().

class Gf2Kernel {
 public:
  explicit Gf2Kernel(std::size_t n)
      : basis_(n), v_(basis_.words()), n_(n), mask_(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1) {}
  void clear() noexcept { basis_.clear(); }
  std::size_t rank() const noexcept { return basis_.rank(); }
  bool add(CoefficientSampler& s) noexcept {
    if (v_.size() == 1) {
      v_[0] = ~s.zero_flags(static_cast<unsigned>(n_)) & mask_;
    } else {
      s.fill_bits(v_, n_);
    }
    return basis_.insert(v_);
  }

 private:
  Gf2Basis basis_;
  std::vector<std::uint64_t> v_;
  std::size_t n_;
  std::uint64_t mask_;
};

class Gf256Kernel {
 public:
  Gf256Kernel(const FieldPtr& field, std::size_t n) : basis_(field, n), v_(n) {}
  void clear() noexcept { basis_.clear(); }
  std::size_t rank() const noexcept { return basis_.rank(); }
  bool add(CoefficientSampler& s) noexcept {
    s.fill(std::span<std::uint8_t>(v_));
    return basis_.insert(v_);
  }

 private:
  Gf256Basis basis_;
  std::vector<std::uint8_t> v_;
};

class GenericKernel {
 public:
  GenericKernel(const FieldPtr& field, std::size_t n) : basis_(field, n), raw_(n), v_(n) {}
  void clear() noexcept { basis_.clear(); }
  std::size_t rank() const noexcept { return basis_.rank(); }
  bool add(CoefficientSampler& s) {
    s.fill(std::span<std::uint16_t>(raw_));
    std::copy(raw_.begin(), raw_.end(), v_.begin());
    return basis_.insert(v_);
  }

 private:
  GenericBasis basis_;
  std::vector<std::uint16_t> raw_;
  std::vector<Elem> v_;
};

// Calls fn(kernel) with the fastest kernel for the field.
template <class Fn>
void with_kernel(const FieldPtr& field, std::size_t n, Fn&& fn) {
  if (field->order() == 2) {
    Gf2Kernel k(n);
    fn(k);
  } else if (field->order() == 256) {
    Gf256Kernel k(field, n);
    fn(k);
  } else {
    GenericKernel k(field, n);
    fn(k);
  }
}

template <class Kernel>
bool full_rank_trial(Kernel& k, std::size_t n, std::size_t m, CoefficientSampler& s) {
  k.clear();
  for (std::size_t j = 0; j < m; ++j) {
    if (m - j < n - k.rank()) return false;
    k.add(s);
    if (k.rank() == n) return true;
  }
  return false;
}

// Samples i independent rows by rejection; counts attempts.
template <class Kernel>
void conditioned_rows(Kernel& k, std::size_t i, CoefficientSampler& s, std::uint64_t& attempts, std::uint64_t accepted) {
  for (;;) {
    ++attempts;
    if (static_cast<double>(attempts) > (static_cast<double>(accepted) + 1.0) / kMinAcceptance) {
      throw RejectionSamplingError("conditioned sampling acceptance rate fell below 1e-6 (" + std::to_string(accepted) +
                                   " accepted of " + std::to_string(attempts) + " attempts)");
    }
    k.clear();
    bool ok = true;
    for (std::size_t r = 0; r < i && ok; ++r) ok = k.add(s);
    if (ok) return;
  }
}

void require_trials(std::uint64_t trials) {
  if (trials == 0) throw UsageError("trials must be at least 1");
}

}  // namespace

EstimateResult EstimateResult::from_counts(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed) {
  EstimateResult r;
  r.trials = trials;
  r.successes = successes;
  r.seed = seed;
  if (trials > 0) {
    r.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(trials));
  }
  return r;
}

EstimateResult mc_full_rank(int n, int m, const CoefficientModel& model, std::uint64_t trials, std::uint64_t seed,
                            unsigned threads) {
  require_trials(trials);
  if (n < 1) throw DomainError("n must be at least 1");
  if (m < 0) throw DomainError("m must be nonnegative");
  const auto start = Clock::now();
  const std::size_t chunks = chunk_count(trials);
  std::vector<std::uint64_t> counts(chunks, 0);
  if (m >= n) {
    parallel_chunks(chunks, threads, [&](std::size_t c) {
      RngStream rng(seed, c);
      CoefficientSampler sampler(model, rng);
      const std::uint64_t count = chunk_trials(c, trials);
      std::uint64_t ok = 0;
      with_kernel(model.field(), static_cast<std::size_t>(n), [&](auto& kernel) {
        for (std::uint64_t t = 0; t < count; ++t) {
          ok += full_rank_trial(kernel, static_cast<std::size_t>(n), static_cast<std::size_t>(m), sampler) ? 1 : 0;
        }
      });
      counts[c] = ok;
    });
  }
  std::uint64_t total = 0;
  for (auto v : counts) total += v;
  auto r = EstimateResult::from_counts(total, trials, seed);
  r.wall_seconds = seconds_since(start);
  return r;
}

EstimateResult mc_row_dependence(int i, int n, const CoefficientModel& model, std::uint64_t trials, std::uint64_t seed,
                                 unsigned threads) {
  require_trials(trials);
  if (i < 0 || i >= n) throw DomainError("mc_row_dependence needs 0 <= i < n");
  const auto start = Clock::now();
  const std::size_t chunks = chunk_count(trials);
  std::vector<std::uint64_t> counts(chunks, 0);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    RngStream rng(seed, c);
    CoefficientSampler sampler(model, rng);
    const std::uint64_t count = chunk_trials(c, trials);
    std::uint64_t dependent = 0;
    std::uint64_t attempts = 0;
    with_kernel(model.field(), static_cast<std::size_t>(n), [&](auto& kernel) {
      for (std::uint64_t t = 0; t < count; ++t) {
        conditioned_rows(kernel, static_cast<std::size_t>(i), sampler, attempts, t);
        dependent += kernel.add(sampler) ? 0 : 1;
      }
    });
    counts[c] = dependent;
  });
  std::uint64_t total = 0;
  for (auto v : counts) total += v;
  auto r = EstimateResult::from_counts(total, trials, seed);
  r.wall_seconds = seconds_since(start);
  return r;
}

InverseEntryStats mc_inverse_entry_distribution(int i, const CoefficientModel& model, std::uint64_t trials,
                                                std::uint64_t seed, unsigned threads) {
  require_trials(trials);
  if (i < 1) throw DomainError("inverse-entry statistics need i >= 1");
  const auto start = Clock::now();
  const std::uint32_t q = model.q();
  const auto dim = static_cast<std::size_t>(i);
  struct ChunkTally {
    std::vector<std::uint64_t> values;
    std::uint64_t attempts = 0;
    std::uint64_t zeros = 0;
    std::uint64_t zeros_squared = 0;  // sum over trials of (zero entries)^2
    std::uint64_t entry00_zero = 0;
  };
  const std::size_t chunks = chunk_count(trials);
  std::vector<ChunkTally> tallies(chunks);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    RngStream rng(seed, c);
    CoefficientSampler sampler(model, rng);
    ChunkTally tally;
    tally.values.assign(q, 0);
    Matrix a(model.field(), dim, dim);
    const std::uint64_t count = chunk_trials(c, trials);
    for (std::uint64_t t = 0; t < count; ++t) {
      std::optional<Matrix> inverse;
      for (;;) {
        ++tally.attempts;
        if (static_cast<double>(tally.attempts) > (static_cast<double>(t) + 1.0) / kMinAcceptance) {
          throw RejectionSamplingError("nonsingular sampling acceptance rate fell below 1e-6");
        }
        sampler.fill(a.data());
        inverse = invert(a);
        if (inverse) break;
      }
      std::uint64_t zeros = 0;
      for (auto v : inverse->data()) {
        ++tally.values[v];
        zeros += v == 0 ? 1 : 0;
      }
      tally.zeros += zeros;
      tally.zeros_squared += zeros * zeros;
      tally.entry00_zero += (*inverse)(0, 0) == 0 ? 1 : 0;
    }
    tallies[c] = std::move(tally);
  });

  InverseEntryStats out;
  out.i = i;
  out.trials = trials;
  out.value_counts.assign(q, 0);
  std::uint64_t zeros = 0;
  std::uint64_t zeros_squared = 0;
  std::uint64_t entry00 = 0;
  for (const auto& t : tallies) {
    for (std::uint32_t v = 0; v < q; ++v) out.value_counts[v] += t.values[v];
    out.attempts += t.attempts;
    zeros += t.zeros;
    zeros_squared += t.zeros_squared;
    entry00 += t.entry00_zero;
  }
  const double entries = static_cast<double>(dim * dim);
  const double tn = static_cast<double>(trials);
  out.zero_fraction = EstimateResult::from_counts(zeros, trials * dim * dim, seed);
  // Per-trial fraction f_t = zeros_t / entries; SE = sqrt(Var(f) / trials).
  const double mean_f = static_cast<double>(zeros) / (entries * tn);
  const double mean_f2 = static_cast<double>(zeros_squared) / (entries * entries * tn);
  out.zero_fraction.std_error = std::sqrt(std::max(0.0, mean_f2 - mean_f * mean_f) / tn);
  out.entry00_zero = EstimateResult::from_counts(entry00, trials, seed);
  const double wall = seconds_since(start);
  out.zero_fraction.wall_seconds = wall;
  out.entry00_zero.wall_seconds = wall;
  return out;
}

Rational brute_force_full_rank(int n, int m, const FieldPtr& field, const Rational& p0) {
  if (n < 1 || m < 1) throw DomainError("brute force needs n >= 1 and m >= 1");
  if (p0 < 0 || p0 > 1) throw DomainError("p0 must lie in [0,1]");
  const std::uint32_t q = field->order();
  const auto cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
  const double log2_total = static_cast<double>(cells) * std::log2(static_cast<double>(q));
  if (log2_total > 24.0 + 1e-9) {
    throw OracleSizeError("brute-force enumeration needs q^(n*m) <= 2^24; " + std::to_string(q) + "^" +
                          std::to_string(cells) + " is too large");
  }
  if (m < n) return Rational(0);
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < cells; ++k) total *= q;

  // full_by_zeros[z]: number of full-rank matrices with exactly z zero entries.
  std::vector<std::uint64_t> full_by_zeros(cells + 1, 0);
  std::vector<Elem> digits(cells, 0);  // column-major: column j occupies [j*n, (j+1)*n)
  std::size_t zeros = cells;
  GenericBasis basis(field, static_cast<std::size_t>(n));
  std::vector<Elem> column(static_cast<std::size_t>(n));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    basis.clear();
    for (int j = 0; j < m && basis.rank() < static_cast<std::size_t>(n); ++j) {
      std::copy_n(digits.begin() + static_cast<std::ptrdiff_t>(j) * n, n, column.begin());
      basis.insert(column);
    }
    if (basis.rank() == static_cast<std::size_t>(n)) ++full_by_zeros[zeros];
    // Odometer increment.
    for (std::size_t k = 0; k < cells; ++k) {
      if (digits[k] == 0) --zeros;
      if (++digits[k] < q) break;
      digits[k] = 0;
      ++zeros;
    }
  }
  const Rational nonzero = (1 - p0) / (q - 1);
  Rational result = 0;
  for (std::size_t z = 0; z <= cells; ++z) {
    if (full_by_zeros[z] == 0) continue;
    result += Rational(full_by_zeros[z]) * rational_pow(p0, static_cast<unsigned>(z)) *
              rational_pow(nonzero, static_cast<unsigned>(cells - z));
  }
  return result;
}

std::uint64_t point_seed(std::uint64_t seed, int m) noexcept {
  return mix64(seed ^ mix64(static_cast<std::uint64_t>(static_cast<std::int64_t>(m)) + 0x9E3779B97F4A7C15ULL));
}

std::vector<double> SweepTable::values() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.value);
  return out;
}

bool SweepTable::has_errors() const noexcept {
  for (const auto& r : rows) {
    if (r.error) return true;
  }
  return false;
}

SweepTable sweep(const SweepRequest& request) {
  if (request.ms.empty()) throw UsageError("m range is empty");
  if (!request.field) throw UsageError("sweep without a field");
  const std::string& method = request.method;
  const bool is_mc = method == "mc";
  const bool is_brute = method == "brute";
  std::optional<Method> analytic;
  if (!is_mc && !is_brute) {
    analytic = parse_method(method);
    if (!analytic) throw UsageError("unknown method '" + method + "'");
  }
  if (is_mc) require_trials(request.trials);

  const double p0 = to_double(request.p0);
  const std::uint32_t q = request.field->order();
  SweepTable table;
  table.method = analytic ? std::string(analytic == Method::uniform_exact ? "uniform" : method_name(*analytic)) : method;
  std::optional<CoefficientModel> model;
  if (is_mc) model.emplace(request.field, p0);
  for (int m : request.ms) {
    SweepRow row;
    row.n = request.n;
    row.m = m;
    row.q = q;
    row.p0 = p0;
    if (analytic) {
      row.value = p_full_rank(*analytic, request.n, m, p0, q);
    } else if (is_mc) {
      row.estimate = mc_full_rank(request.n, m, *model, request.trials, point_seed(request.seed, m), request.threads);
      row.value = row.estimate->estimate;
    } else {
      try {
        row.exact = brute_force_full_rank(request.n, m, request.field, request.p0);
        row.value = to_double(*row.exact);
      } catch (const OracleSizeError& e) {
        row.error = e.what();
        row.value = std::numeric_limits<double>::quiet_NaN();
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace srlnc
