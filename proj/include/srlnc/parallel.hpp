#pragma once

#include <cstddef>
#include <functional>

namespace srlnc {

/// Worker count used when the caller passes 0: hardware concurrency, capped by
/// the SRLNC_THREADS environment variable when it holds a positive integer.
unsigned default_threads() noexcept;

/// Applies the cap from SRLNC_THREADS to an explicit request; 0 means default_threads().
unsigned resolve_threads(unsigned requested) noexcept;

/// Runs fn(chunk) for every chunk in [0, num_chunks) on up to `threads` workers.
/// Chunks are claimed dynamically, so fn must write only to per-chunk state.
/// The first exception thrown by any chunk is rethrown after all workers stop.
void parallel_chunks(std::size_t num_chunks, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace srlnc
