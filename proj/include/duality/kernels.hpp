#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>

#include "duality/parallel.hpp"

// Dense amplitude-vector kernels. Every kernel has a plain serial reference
// implementation and an OpenMP implementation; the tests check one against the
// other and bench/ times them.
//
// The parallel reductions split the input into fixed-size chunks, reduce each
// chunk independently and then add the chunk partials in index order. The
// summation order therefore depends only on the input length, never on the
// thread count, which keeps CLI output byte-stable across machines.
namespace duality::kernels {

using cplx = std::complex<double>;

inline constexpr std::size_t kReductionChunk = 2048;

/// sum_k conj(a[k]) * b[k]
cplx inner_product_serial(std::span<const cplx> a, std::span<const cplx> b);
cplx inner_product_parallel(std::span<const cplx> a, std::span<const cplx> b);

/// sum_k |a[k]|^2
double squared_norm_serial(std::span<const cplx> a);
double squared_norm_parallel(std::span<const cplx> a);

/// Reduced density matrix of the leading two-level factor of a bipartite
/// vector laid out as psi[label * env_dim + k], label in {0, 1}:
///   rho[i][j] = sum_k psi[i, k] * conj(psi[j, k])
/// Returned row-major as {rho00, rho01, rho10, rho11}.
std::array<cplx, 4> trace_out_environment_serial(std::span<const cplx> psi, std::size_t env_dim);
std::array<cplx, 4> trace_out_environment_parallel(std::span<const cplx> psi,
                                                   std::size_t env_dim);

inline cplx inner_product(std::span<const cplx> a, std::span<const cplx> b, Execution exec) {
  return exec == Execution::parallel ? inner_product_parallel(a, b) : inner_product_serial(a, b);
}

inline double squared_norm(std::span<const cplx> a, Execution exec) {
  return exec == Execution::parallel ? squared_norm_parallel(a) : squared_norm_serial(a);
}

inline std::array<cplx, 4> trace_out_environment(std::span<const cplx> psi, std::size_t env_dim,
                                                 Execution exec) {
  return exec == Execution::parallel ? trace_out_environment_parallel(psi, env_dim)
                                     : trace_out_environment_serial(psi, env_dim);
}

}  // namespace duality::kernels
