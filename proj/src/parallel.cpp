#include "duality/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

namespace duality {
namespace parallel {
namespace {

int read_env_cap() {
  const char* raw = std::getenv("DUALITY_LAB_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  try {
    int v = std::stoi(raw);
    return v < 0 ? 0 : v;
  } catch (...) {
    return 0;
  }
}

std::atomic<int>& cap_storage() {
  static std::atomic<int> cap{read_env_cap()};
  return cap;
}

}  // namespace

int thread_cap() { return cap_storage().load(std::memory_order_relaxed); }

void set_thread_cap(int threads) {
  cap_storage().store(threads < 0 ? 0 : threads, std::memory_order_relaxed);
}

int effective_threads() {
  int cap = thread_cap();
  int available = omp_get_max_threads();
  return cap == 0 ? available : std::min(cap, available);
}

}  // namespace parallel

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer applied twice: once to decorrelate the user seed,
  // once to the offset stream position.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) + index);
}

}  // namespace duality
