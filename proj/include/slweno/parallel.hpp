#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace slweno {

// Static block partition of [0, count) over `workers` threads. Each index is
// handled by exactly one worker, so results never depend on the worker count
// as long as the body only touches per-index data.
//
// The body is invoked as body(begin, end, worker_id).
template <class Body>
void parallel_for_blocks(std::size_t count, int workers, Body&& body) {
  const std::size_t nw =
      std::clamp<std::size_t>(workers > 0 ? static_cast<std::size_t>(workers) : 1, 1,
                              std::max<std::size_t>(count, 1));
  if (nw == 1) {
    body(std::size_t{0}, count, 0);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(nw - 1);
  const std::size_t chunk = (count + nw - 1) / nw;
  auto run = [&](std::size_t w) {
    const std::size_t b = std::min(count, w * chunk);
    const std::size_t e = std::min(count, b + chunk);
    try {
      body(b, e, static_cast<int>(w));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  for (std::size_t w = 1; w < nw; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace slweno
