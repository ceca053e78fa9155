#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "duality/parallel.hpp"

/// Truncated photon-number (Fock) space states.
///
/// A FockVector over `modes` modes with per-mode cutoff N stores (N+1)^modes
/// amplitudes. The flat index is the mixed-radix number (n_1, n_2, ...) with
/// mode 0 as the most significant digit, so for two modes
/// index = n_0 * (N+1) + n_1. Partial traces in the oracle rely on this order.
namespace duality::fock {

using cplx = std::complex<double>;

enum class Normalization { normalized, unnormalized };

/// Cutoff selection policy. The tail tolerance bounds the Poisson mass that a
/// coherent-state truncation is allowed to discard.
struct CutoffPolicy {
  double tail_tolerance = 1e-12;
  int floor = 16;
  int ceiling = 512;

  /// Throws ValidationError unless 0 < tail_tolerance < 1 and 1 <= floor <= ceiling.
  void validate() const;
};

class FockVector {
 public:
  /// Validates the amplitude count against (cutoff+1)^modes. A vector flagged
  /// `normalized` must have unit norm within 1e-12.
  FockVector(int modes, int cutoff, std::vector<cplx> amplitudes,
             Normalization normalization = Normalization::unnormalized);

  int modes() const noexcept { return modes_; }
  int cutoff() const noexcept { return cutoff_; }
  std::size_t levels() const noexcept { return static_cast<std::size_t>(cutoff_) + 1; }
  std::size_t size() const noexcept { return amplitudes_.size(); }

  std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }

  /// Amplitude at photon numbers (n_0, n_1, ...), one entry per mode.
  cplx amplitude(std::span<const int> photons) const;
  cplx amplitude(std::initializer_list<int> photons) const {
    return amplitude(std::span<const int>(photons.begin(), photons.size()));
  }

  std::size_t index_of(std::span<const int> photons) const;

  Normalization normalization() const noexcept { return normalization_; }
  bool is_normalized() const noexcept { return normalization_ == Normalization::normalized; }

  /// Euclidean norm, computed once at construction.
  double norm() const noexcept { return norm_; }

  /// Copy rescaled to unit norm and flagged normalized.
  FockVector normalized() const;

 private:
  int modes_;
  int cutoff_;
  std::vector<cplx> amplitudes_;
  Normalization normalization_;
  double norm_;
};

/// Single-mode number state |n> at the given cutoff.
FockVector number_state(int n, int cutoff);

/// Coherent state |alpha>, truncated at `cutoff` and renormalized.
/// Throws ValidationError for non-finite alpha or cutoff outside [1, policy.ceiling].
FockVector coherent_state(cplx alpha, int cutoff, const CutoffPolicy& policy = {});

/// Unnormalized a^dagger |psi> on mode `mode_index` (0-based). The amplitude at
/// the top level of that mode would be pushed past the cutoff; if its relative
/// probability mass exceeds `tail_tolerance` a TruncationError is thrown.
FockVector apply_creation(const FockVector& state, int mode_index,
                          double tail_tolerance = CutoffPolicy{}.tail_tolerance);

/// Single-photon-added coherent state a^dagger|alpha> / sqrt(1 + |alpha|^2).
FockVector spacs_state(cplx alpha, int cutoff, const CutoffPolicy& policy = {});

/// <a|b>, conjugate-linear in `a`. Shapes must match.
cplx inner_product(const FockVector& a, const FockVector& b,
                   Execution exec = Execution::parallel);

/// a (x) b. Cutoffs must match; `a` supplies the more significant modes.
FockVector tensor_product(const FockVector& a, const FockVector& b);

/// P(X >= first) for X ~ Poisson(mean).
double poisson_tail(double mean, int first);

/// Smallest cutoff N in [floor, ceiling] with P(X >= N) < tail_tolerance for
/// X ~ Poisson(|alpha|^2) and every alpha. Measuring the tail from N rather
/// than N+1 leaves one level of headroom for a creation operator.
int choose_cutoff(std::span<const cplx> alphas, const CutoffPolicy& policy = {});

}  // namespace duality::fock
