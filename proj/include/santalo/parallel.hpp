#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace santalo {

// Deterministic parallel kernels. Every loop writes through per-index slots and
// every reduction uses a fixed-shape pairwise tree, so results are bit-identical
// for any thread count. The serial variants are the reference implementations
// the tests compare against.

// Global thread budget. 0 means "OpenMP default". Set to 1 for serial runs.
int thread_count();
void set_thread_count(int n);

// Effective number of threads a parallel region would use right now.
int effective_threads();

void serial_for(std::size_t n, const std::function<void(std::size_t)>& body);
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Fixed-shape pairwise summation; result does not depend on thread count.
double pairwise_sum(const double* data, std::size_t n);
double pairwise_sum(const std::vector<double>& data);

// Evaluate term(i) for i in [0,n), in parallel, then pairwise-sum in index order.
double parallel_map_sum(std::size_t n, const std::function<double(std::size_t)>& term);
double serial_map_sum(std::size_t n, const std::function<double(std::size_t)>& term);

}  // namespace santalo
