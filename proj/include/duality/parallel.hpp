#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>

namespace duality {

/// Selects between the OpenMP kernels and their serial reference versions.
/// Both paths produce bit-identical results wherever the parallel path only
/// distributes independent work items; reductions use a fixed chunking so the
/// parallel result does not depend on the thread count either.
enum class Execution { serial, parallel };

namespace parallel {

/// Thread cap for the parallel kernels. Initialized from DUALITY_LAB_THREADS
/// (0 or unset = OpenMP default).
int thread_cap();

/// Overrides the environment-derived cap. 0 restores "auto".
void set_thread_cap(int threads);

/// Number of threads a parallel region will use under the current cap.
int effective_threads();

/// Runs body(i) for i in [0, n). The parallel path distributes indices over
/// OpenMP threads; the first exception thrown by any body is rethrown on the
/// calling thread once the loop has finished.
template <typename Body>
void for_each_index(std::ptrdiff_t n, Execution exec, Body&& body) {
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic, 8) num_threads(effective_threads())
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace parallel

/// Derives an independent 64-bit stream seed for work item `index` of a run
/// seeded with `seed`. Used so per-item RNG draws are independent of the
/// order (and thread) in which items are evaluated.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace duality
