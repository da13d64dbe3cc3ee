#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "leocf/rng.hpp"

namespace leocf {

/// Runs fn(trial_index, rng) for trial_index in [0, trials). Each trial gets
/// its own substream of (master_seed, stream_id), so results are identical
/// for any worker count provided fn writes only to per-trial slots.
template <class Fn>
void parallel_trials(long trials, int threads, std::uint64_t master_seed, std::uint64_t stream_id,
                     Fn&& fn) {
  if (trials <= 0) return;
  if (threads < 1) threads = 1;
  const long hw = static_cast<long>(std::thread::hardware_concurrency());
  if (hw > 0 && threads > hw * 4) threads = static_cast<int>(hw * 4);
  if (threads == 1 || trials == 1) {
    for (long i = 0; i < trials; ++i) {
      Xoshiro256pp rng = Xoshiro256pp::substream(master_seed, stream_id, static_cast<std::uint64_t>(i));
      fn(i, rng);
    }
    return;
  }

  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  constexpr long kChunk = 32;

  auto worker = [&]() {
    for (;;) {
      const long start = next.fetch_add(kChunk);
      if (start >= trials || failed.load(std::memory_order_relaxed)) return;
      const long stop = std::min(trials, start + kChunk);
      try {
        for (long i = start; i < stop; ++i) {
          Xoshiro256pp rng =
              Xoshiro256pp::substream(master_seed, stream_id, static_cast<std::uint64_t>(i));
          fn(i, rng);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failed && first_error) std::rethrow_exception(first_error);
}

}  // namespace leocf
