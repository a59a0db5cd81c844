#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace laststop {

inline unsigned default_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(trial_index, accum) for every index in [0, trials), splitting the
// range into fixed-size chunks that workers claim from a shared counter.
// Chunk results are merged in chunk order afterwards, so the final Accum is
// identical for every worker count; only per-trial state may depend on the
// trial index.  Accum needs a default constructor and merge(const Accum&).
template <typename Accum, typename TrialFn>
Accum run_chunked(std::uint64_t trials, unsigned workers, TrialFn fn,
                  std::uint64_t chunk_size = 8192) {
  if (workers == 0) workers = 1;
  const std::uint64_t num_chunks = (trials + chunk_size - 1) / chunk_size;
  if (trials == 0) return Accum{};

  std::vector<Accum> chunk_results(static_cast<std::size_t>(num_chunks));
  auto run_chunk = [&](std::uint64_t c) {
    Accum local{};
    const std::uint64_t begin = c * chunk_size;
    const std::uint64_t end = std::min(trials, begin + chunk_size);
    for (std::uint64_t i = begin; i < end; ++i) fn(i, local);
    chunk_results[static_cast<std::size_t>(c)] = std::move(local);
  };

  if (workers == 1 || num_chunks == 1) {
    for (std::uint64_t c = 0; c < num_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::uint64_t c = next.fetch_add(1);
        if (c >= num_chunks) return;
        run_chunk(c);
      }
    };
    std::vector<std::thread> pool;
    unsigned count = workers < num_chunks ? workers : static_cast<unsigned>(num_chunks);
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  Accum total{};
  for (auto& part : chunk_results) total.merge(part);
  return total;
}

}  // namespace laststop
