#include "srlnc/multicast.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "srlnc/coding_model.hpp"
#include "srlnc/errors.hpp"
#include "srlnc/matrix.hpp"
#include "srlnc/parallel.hpp"

namespace srlnc {

void GenerationConfig::validate() const {
  if (!field) throw UsageError("generation without a field");
  if (n < 1) throw UsageError("n must be at least 1");
  if (N < 0) throw UsageError("N must be nonnegative");
  if (L < 0) throw UsageError("L must be nonnegative");
  if (receivers < 1) throw UsageError("receivers must be at least 1");
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("p0 must lie in [0,1]");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("erasure rate must lie in [0,1]");
}

namespace {

// Solves M^T X = Y for X (n x L) given the received coding matrix M (n x m) and
// coded payloads Y (m x L). nullopt unless M has rank n.
std::optional<Matrix> decode_payload(const Matrix& received, const Matrix& payloads) {
  const std::size_t n = received.rows();
  const auto reduced = rref(received.transpose().hconcat(payloads));
  if (reduced.rank < n) return std::nullopt;
  for (std::size_t k = 0; k < n; ++k) {
    if (reduced.pivots[k] != k) return std::nullopt;
  }
  const std::size_t L = payloads.cols();
  Matrix x(received.field(), n, L);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < L; ++c) x.set(r, c, reduced.rref(r, n + c));
  }
  return x;
}

}  // namespace

std::vector<ReceiverOutcome> run_generation(const GenerationConfig& cfg, RngStream& rng) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.n);
  const auto N = static_cast<std::size_t>(cfg.N);
  const CoefficientModel model(cfg.field, cfg.p0);

  Matrix g(cfg.field, n, N);
  {
    CoefficientSampler sampler(model, rng);
    sampler.fill(g.data());
  }
  std::optional<Matrix> coded;
  std::optional<Matrix> source;
  if (cfg.L > 0) {
    source.emplace(cfg.field, n, static_cast<std::size_t>(cfg.L));
    for (auto& v : source->data()) v = static_cast<std::uint16_t>(rng.uniform_below(cfg.field->order()));
    coded = matmul(g.transpose(), *source);
  }

  std::vector<ReceiverOutcome> outcomes;
  outcomes.reserve(static_cast<std::size_t>(cfg.receivers));
  for (int r = 0; r < cfg.receivers; ++r) {
    RngStream child = rng.split(static_cast<std::uint64_t>(r));
    ReceiverOutcome out;
    out.stream_index = child.stream();
    const auto kept = apply_erasures(N, cfg.epsilon, child);
    out.received = static_cast<int>(kept.size());
    if (!kept.empty()) {
      const Matrix m = g.select_columns(kept);
      out.rank = static_cast<int>(rank(m));
    }
    out.decoded = out.rank == cfg.n;
    if (coded) {
      bool recovered = false;
      if (!kept.empty()) {
        Matrix y(cfg.field, kept.size(), static_cast<std::size_t>(cfg.L));
        for (std::size_t j = 0; j < kept.size(); ++j) {
          const auto src = coded->row(kept[j]);
          std::copy(src.begin(), src.end(), y.row(j).begin());
        }
        const auto x = decode_payload(g.select_columns(kept), y);
        recovered = x && *x == *source;
      }
      out.payload_recovered = recovered;
    }
    outcomes.push_back(out);
  }
  return outcomes;
}

EstimateResult estimate_p_epsilon(const GenerationConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                                  unsigned threads) {
  cfg.validate();
  if (trials == 0) throw UsageError("trials must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t chunks = static_cast<std::size_t>((trials + kChunkTrials - 1) / kChunkTrials);
  struct Tally {
    std::uint64_t decoded = 0;
    std::uint64_t decoded_squared = 0;  // sum over trials of (receivers decoded)^2
  };
  std::vector<Tally> tallies(chunks);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    RngStream rng(seed, c);
    const std::uint64_t first = static_cast<std::uint64_t>(c) * kChunkTrials;
    const std::uint64_t count = std::min(kChunkTrials, trials - first);
    Tally tally;
    for (std::uint64_t t = 0; t < count; ++t) {
      std::uint64_t decoded = 0;
      for (const auto& o : run_generation(cfg, rng)) decoded += o.decoded ? 1 : 0;
      tally.decoded += decoded;
      tally.decoded_squared += decoded * decoded;
    }
    tallies[c] = tally;
  });
  std::uint64_t decoded = 0;
  std::uint64_t decoded_squared = 0;
  for (const auto& t : tallies) {
    decoded += t.decoded;
    decoded_squared += t.decoded_squared;
  }
  const auto R = static_cast<std::uint64_t>(cfg.receivers);
  auto result = EstimateResult::from_counts(decoded, trials * R, seed);
  const double tn = static_cast<double>(trials);
  const double rd = static_cast<double>(R);
  const double mean_f = static_cast<double>(decoded) / (rd * tn);
  const double mean_f2 = static_cast<double>(decoded_squared) / (rd * rd * tn);
  result.std_error = std::sqrt(std::max(0.0, mean_f2 - mean_f * mean_f) / tn);
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace srlnc
