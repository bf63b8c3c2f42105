#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace npgqc {

/// Run fn(i) for i in [0, n) on up to `jobs` threads. Work items must write
/// to disjoint slots; results are deterministic because the index assignment
/// is fixed (round-robin by chunk).
template <typename Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (int i = w; i < n; i += jobs) fn(i);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

inline int default_jobs() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace npgqc
