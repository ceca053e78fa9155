#include "duality/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "duality/error.hpp"
#include "duality/kernels.hpp"

namespace duality::fock {
namespace {

constexpr double kNormalizedTolerance = 1e-12;
constexpr double kSpacsNormTolerance = 1e-10;

std::size_t checked_size(int modes, int cutoff) {
  if (modes < 1) throw ValidationError("FockVector needs at least one mode");
  if (cutoff < 0) throw ValidationError("Fock cutoff must be non-negative");
  std::size_t size = 1;
  for (int m = 0; m < modes; ++m) size *= static_cast<std::size_t>(cutoff) + 1;
  return size;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void CutoffPolicy::validate() const {
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0)) {
    throw ValidationError("cutoff policy tail_tolerance must lie in (0, 1)");
  }
  if (floor < 1) throw ValidationError("cutoff policy floor must be >= 1");
  if (floor > ceiling) throw ValidationError("cutoff policy floor exceeds ceiling");
}

FockVector::FockVector(int modes, int cutoff, std::vector<cplx> amplitudes,
                       Normalization normalization)
    : modes_(modes),
      cutoff_(cutoff),
      amplitudes_(std::move(amplitudes)),
      normalization_(normalization),
      norm_(0.0) {
  const std::size_t expected = checked_size(modes, cutoff);
  if (amplitudes_.size() != expected) {
    throw ValidationError("FockVector expects " + std::to_string(expected) +
                          " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
  norm_ = std::sqrt(kernels::squared_norm_serial(amplitudes_));
  if (normalization_ == Normalization::normalized &&
      std::abs(norm_ - 1.0) > kNormalizedTolerance) {
    throw ValidationError("FockVector flagged normalized has norm " + std::to_string(norm_));
  }
}

std::size_t FockVector::index_of(std::span<const int> photons) const {
  if (photons.size() != static_cast<std::size_t>(modes_)) {
    throw ValidationError("photon-number tuple has wrong length");
  }
  std::size_t index = 0;
  for (int n : photons) {
    if (n < 0 || n > cutoff_) throw ValidationError("photon number outside [0, cutoff]");
    index = index * levels() + static_cast<std::size_t>(n);
  }
  return index;
}

cplx FockVector::amplitude(std::span<const int> photons) const {
  return amplitudes_[index_of(photons)];
}

FockVector FockVector::normalized() const {
  if (norm_ == 0.0) throw ValidationError("cannot normalize the zero vector");
  std::vector<cplx> out(amplitudes_);
  for (cplx& a : out) a /= norm_;
  return FockVector(modes_, cutoff_, std::move(out), Normalization::normalized);
}

FockVector number_state(int n, int cutoff) {
  if (n < 0 || n > cutoff) throw ValidationError("number state outside [0, cutoff]");
  std::vector<cplx> amps(static_cast<std::size_t>(cutoff) + 1);
  amps[static_cast<std::size_t>(n)] = 1.0;
  return FockVector(1, cutoff, std::move(amps), Normalization::normalized);
}

FockVector coherent_state(cplx alpha, int cutoff, const CutoffPolicy& policy) {
  policy.validate();
  if (!finite(alpha)) throw ValidationError("coherent amplitude must be finite");
  if (cutoff < 1) throw ValidationError("coherent_state cutoff must be >= 1");
  if (cutoff > policy.ceiling) {
    throw ValidationError("cutoff " + std::to_string(cutoff) + " exceeds policy ceiling " +
                          std::to_string(policy.ceiling));
  }

  std::vector<cplx> amps(static_cast<std::size_t>(cutoff) + 1);
  const double r = std::abs(alpha);
  if (r == 0.0) {
    amps[0] = 1.0;
  } else {
    // Log-magnitude form: e^{-r^2/2} r^n / sqrt(n!) underflows for large r.
    const double phase = std::arg(alpha);
    const double log_r = std::log(r);
    for (int n = 0; n <= cutoff; ++n) {
      const double log_mag = -0.5 * r * r + n * log_r - 0.5 * std::lgamma(n + 1.0);
      amps[static_cast<std::size_t>(n)] = std::polar(std::exp(log_mag), n * phase);
    }
  }

  FockVector truncated(1, cutoff, std::move(amps));
  if (!(truncated.norm() > 0.0)) {
    throw TruncationError("coherent state has no weight below cutoff " + std::to_string(cutoff));
  }
  return truncated.normalized();
}

FockVector apply_creation(const FockVector& state, int mode_index, double tail_tolerance) {
  if (mode_index < 0 || mode_index >= state.modes()) {
    throw ValidationError("creation operator mode index out of range");
  }
  if (state.cutoff() < 1) throw TruncationError("creation operator needs cutoff >= 1");

  const std::size_t levels = state.levels();
  std::size_t stride = 1;
  for (int m = state.modes() - 1; m > mode_index; --m) stride *= levels;

  const auto in = state.amplitudes();
  const double total = state.norm() * state.norm();
  double top_mass = 0.0;
  std::vector<cplx> out(in.size());
  for (std::size_t idx = 0; idx < in.size(); ++idx) {
    const std::size_t n = (idx / stride) % levels;
    if (n + 1 == levels) {
      top_mass += std::norm(in[idx]);
    } else {
      out[idx + stride] = std::sqrt(static_cast<double>(n + 1)) * in[idx];
    }
  }

  const double relative = total > 0.0 ? top_mass / total : 0.0;
  if (relative > tail_tolerance) {
    throw TruncationError("top Fock level of mode " + std::to_string(mode_index) +
                          " holds probability " + std::to_string(relative) +
                          "; raise the cutoff");
  }
  return FockVector(state.modes(), state.cutoff(), std::move(out), Normalization::unnormalized);
}

FockVector spacs_state(cplx alpha, int cutoff, const CutoffPolicy& policy) {
  const FockVector raised = apply_creation(coherent_state(alpha, cutoff, policy), 0,
                                           policy.tail_tolerance);
  const double scale = std::sqrt(1.0 + std::norm(alpha));
  std::vector<cplx> amps(raised.amplitudes().begin(), raised.amplitudes().end());
  for (cplx& a : amps) a /= scale;
  FockVector spacs(1, cutoff, std::move(amps));
  if (std::abs(spacs.norm() - 1.0) > kSpacsNormTolerance) {
    throw TruncationError("photon-added state norm " + std::to_string(spacs.norm()) +
                          " deviates from 1; raise the cutoff");
  }
  // Remove the residual truncation error so the result meets the 1e-12
  // normalized contract.
  return spacs.normalized();
}

cplx inner_product(const FockVector& a, const FockVector& b, Execution exec) {
  if (a.modes() != b.modes() || a.cutoff() != b.cutoff()) {
    throw ValidationError("inner product of Fock vectors with different shapes");
  }
  return kernels::inner_product(a.amplitudes(), b.amplitudes(), exec);
}

FockVector tensor_product(const FockVector& a, const FockVector& b) {
  if (a.cutoff() != b.cutoff()) {
    throw ValidationError("tensor product requires equal cutoffs");
  }
  const auto lhs = a.amplitudes();
  const auto rhs = b.amplitudes();
  std::vector<cplx> out(lhs.size() * rhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    for (std::size_t j = 0; j < rhs.size(); ++j) out[i * rhs.size() + j] = lhs[i] * rhs[j];
  }
  const bool both = a.is_normalized() && b.is_normalized();
  FockVector product(a.modes() + b.modes(), a.cutoff(), std::move(out));
  if (both && std::abs(product.norm() - 1.0) <= kNormalizedTolerance) {
    return FockVector(product.modes(), product.cutoff(),
                      std::vector<cplx>(product.amplitudes().begin(), product.amplitudes().end()),
                      Normalization::normalized);
  }
  return product;
}

double poisson_tail(double mean, int first) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw ValidationError("Poisson mean must be >= 0");
  if (first <= 0) return 1.0;
  if (mean == 0.0) return 0.0;

  auto pmf = [mean](int n) {
    return std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
  };

  if (first <= mean) {
    double head = 0.0;
    for (int n = 0; n < first; ++n) head += pmf(n);
    return std::max(0.0, 1.0 - head);
  }

  // Past the mode the terms decrease monotonically; sum until negligible.
  double tail = 0.0;
  for (int n = first;; ++n) {
    const double term = pmf(n);
    tail += term;
    if (term <= tail * 1e-18 || term < 1e-300) break;
  }
  return tail;
}

int choose_cutoff(std::span<const cplx> alphas, const CutoffPolicy& policy) {
  policy.validate();
  double mean = 0.0;
  for (const cplx& alpha : alphas) {
    if (!finite(alpha)) throw ValidationError("coherent amplitude must be finite");
    mean = std::max(mean, std::norm(alpha));
  }
  // The tail grows with the mean, so the largest |alpha| decides.
  for (int n = policy.floor; n <= policy.ceiling; ++n) {
    if (poisson_tail(mean, n) < policy.tail_tolerance) return n;
  }
  throw TruncationError("no cutoff <= " + std::to_string(policy.ceiling) +
                        " bounds the truncated mass for |alpha|^2 = " + std::to_string(mean));
}

}  // namespace duality::fock
