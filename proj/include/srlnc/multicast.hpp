#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "srlnc/field.hpp"
#include "srlnc/montecarlo.hpp"
#include "srlnc/rng.hpp"

namespace srlnc {

/// One generation pushed through a multicast erasure channel.
struct GenerationConfig {
  int n = 1;          // source packets
  int N = 1;          // coded packets sent
  int L = 0;          // payload symbols per packet; 0 simulates coding vectors only
  FieldPtr field;
  double p0 = 0.5;
  double epsilon = 0.0;
  int receivers = 1;

  /// Throws UsageError or DomainError on out-of-range fields.
  void validate() const;
};

struct ReceiverOutcome {
  int received = 0;  // m
  int rank = 0;
  bool decoded = false;  // rank == n
  std::uint64_t stream_index = 0;
  std::optional<bool> payload_recovered;  // set when L > 0
};

/// Samples one n x N coding matrix G (zero coding vectors included), then for
/// each receiver erases columns independently on its own child stream
/// rng.split(r) and ranks the surviving decoding matrix. With L > 0 the source
/// payloads X (n x L, uniform symbols) are encoded as G^T X and each receiver
/// decodes by RREF; payload_recovered is true iff the reconstruction equals X.
std::vector<ReceiverOutcome> run_generation(const GenerationConfig& cfg, RngStream& rng);

/// Pooled decode rate over trials x receivers. Trial t uses chunk stream
/// RngStream(seed, t / kChunkTrials). std_error is computed from the per-trial
/// decode fraction, which reduces to the binomial formula for one receiver.
EstimateResult estimate_p_epsilon(const GenerationConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                                  unsigned threads = 0);

}  // namespace srlnc
