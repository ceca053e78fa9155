#include "duality/kernels.hpp"

#include <algorithm>
#include <vector>

#include "duality/error.hpp"

namespace duality::kernels {
namespace {

std::size_t chunk_count(std::size_t n) { return (n + kReductionChunk - 1) / kReductionChunk; }

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ValidationError("kernel operands differ in length (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
  }
}

}  // namespace

cplx inner_product_serial(std::span<const cplx> a, std::span<const cplx> b) {
  require_same_size(a.size(), b.size());
  cplx sum{0.0, 0.0};
  for (std::size_t k = 0; k < a.size(); ++k) sum += std::conj(a[k]) * b[k];
  return sum;
}

cplx inner_product_parallel(std::span<const cplx> a, std::span<const cplx> b) {
  require_same_size(a.size(), b.size());
  const std::size_t n = a.size();
  const auto chunks = static_cast<std::ptrdiff_t>(chunk_count(n));
  std::vector<cplx> partial(static_cast<std::size_t>(chunks));

#pragma omp parallel for schedule(static) num_threads(parallel::effective_threads()) if (chunks > 1)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kReductionChunk;
    const std::size_t hi = std::min(n, lo + kReductionChunk);
    cplx s{0.0, 0.0};
    for (std::size_t k = lo; k < hi; ++k) s += std::conj(a[k]) * b[k];
    partial[static_cast<std::size_t>(c)] = s;
  }

  cplx sum{0.0, 0.0};
  for (const cplx& p : partial) sum += p;
  return sum;
}

double squared_norm_serial(std::span<const cplx> a) {
  double sum = 0.0;
  for (const cplx& x : a) sum += std::norm(x);
  return sum;
}

double squared_norm_parallel(std::span<const cplx> a) {
  const std::size_t n = a.size();
  const auto chunks = static_cast<std::ptrdiff_t>(chunk_count(n));
  std::vector<double> partial(static_cast<std::size_t>(chunks));

#pragma omp parallel for schedule(static) num_threads(parallel::effective_threads()) if (chunks > 1)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kReductionChunk;
    const std::size_t hi = std::min(n, lo + kReductionChunk);
    double s = 0.0;
    for (std::size_t k = lo; k < hi; ++k) s += std::norm(a[k]);
    partial[static_cast<std::size_t>(c)] = s;
  }

  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum;
}

std::array<cplx, 4> trace_out_environment_serial(std::span<const cplx> psi, std::size_t env_dim) {
  require_same_size(psi.size(), 2 * env_dim);
  const auto first = psi.first(env_dim);
  const auto second = psi.subspan(env_dim, env_dim);
  std::array<cplx, 4> rho{};
  for (std::size_t k = 0; k < env_dim; ++k) {
    rho[0] += first[k] * std::conj(first[k]);
    rho[1] += first[k] * std::conj(second[k]);
    rho[3] += second[k] * std::conj(second[k]);
  }
  rho[2] = std::conj(rho[1]);
  return rho;
}

std::array<cplx, 4> trace_out_environment_parallel(std::span<const cplx> psi,
                                                   std::size_t env_dim) {
  require_same_size(psi.size(), 2 * env_dim);
  const auto first = psi.first(env_dim);
  const auto second = psi.subspan(env_dim, env_dim);
  const auto chunks = static_cast<std::ptrdiff_t>(chunk_count(env_dim));
  std::vector<std::array<cplx, 3>> partial(static_cast<std::size_t>(chunks));

#pragma omp parallel for schedule(static) num_threads(parallel::effective_threads()) if (chunks > 1)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kReductionChunk;
    const std::size_t hi = std::min(env_dim, lo + kReductionChunk);
    std::array<cplx, 3> s{};
    for (std::size_t k = lo; k < hi; ++k) {
      s[0] += first[k] * std::conj(first[k]);
      s[1] += first[k] * std::conj(second[k]);
      s[2] += second[k] * std::conj(second[k]);
    }
    partial[static_cast<std::size_t>(c)] = s;
  }

  std::array<cplx, 4> rho{};
  for (const auto& p : partial) {
    rho[0] += p[0];
    rho[1] += p[1];
    rho[3] += p[2];
  }
  rho[2] = std::conj(rho[1]);
  return rho;
}

}  // namespace duality::kernels
