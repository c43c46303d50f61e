#pragma once
#include <cstddef>
#include <functional>
#include <vector>

namespace crlab {

// Worker count: hardware concurrency capped by CRLAB_THREADS.
unsigned worker_count();

// Runs body(i) for i in [0, n).  Work is split into contiguous blocks; the
// first exception thrown by any block is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Pairwise summation in index order; independent of thread count.
double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace crlab
