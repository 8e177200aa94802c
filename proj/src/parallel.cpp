#include "srlnc/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace srlnc {

namespace {

unsigned env_cap() noexcept {
  const char* text = std::getenv("SRLNC_THREADS");
  if (text == nullptr) return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(text, &end, 10);
  if (end == text || *end != '\0' || v == 0) return 0;
  return static_cast<unsigned>(std::min<unsigned long>(v, 1024));
}

}  // namespace

unsigned default_threads() noexcept {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned cap = env_cap();
  return cap != 0 && cap < hw ? cap : hw;
}

unsigned resolve_threads(unsigned requested) noexcept {
  if (requested == 0) return default_threads();
  const unsigned cap = env_cap();
  return cap != 0 && cap < requested ? cap : requested;
}

void parallel_chunks(std::size_t num_chunks, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (num_chunks == 0) return;
  threads = resolve_threads(threads);
  if (threads > num_chunks) threads = static_cast<unsigned>(num_chunks);
  if (threads <= 1) {
    for (std::size_t c = 0; c < num_chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= num_chunks) return;
      try {
        fn(c);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace srlnc
