#include "duality/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "duality/error.hpp"

namespace duality::analytic {
namespace {

constexpr double kClampWindow = 1e-14;

double clamped_sqrt(double radicand) {
  // Anything further outside [0, 1] than the window is a real bug, not rounding.
  if (radicand < -kClampWindow || radicand > 1.0 + kClampWindow) {
    throw std::logic_error("measure radicand out of range: " + std::to_string(radicand));
  }
  return std::sqrt(std::clamp(radicand, 0.0, 1.0));
}

struct SeedPowers {
  double a;       // |alpha1|^2
  double b;       // |alpha2|^2
  double s;       // 2 + a + b
  double r1;      // |alpha1|
  double r2;      // |alpha2|
};

SeedPowers powers(const SeedPair& seeds) {
  seeds.validate();
  const double r1 = std::abs(seeds.alpha1);
  const double r2 = std::abs(seeds.alpha2);
  const double a = r1 * r1;
  const double b = r2 * r2;
  // a + b first so the sum is symmetric under alpha1 <-> alpha2.
  return {a, b, 2.0 + (a + b), r1, r2};
}

}  // namespace

void SeedPair::validate() const {
  for (const cplx& z : {alpha1, alpha2}) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("seed amplitudes must be finite");
    }
    if (std::abs(z) > kMaxSeedMagnitude) {
      throw ValidationError("seed amplitude magnitude exceeds 1e3");
    }
  }
}

QuantonAmplitudes quanton_amplitudes(const SeedPair& seeds) {
  const SeedPowers p = powers(seeds);
  const double root_s = std::sqrt(p.s);
  return {std::sqrt(1.0 + p.a) / root_s, std::sqrt(1.0 + p.b) / root_s};
}

cplx detector_fidelity(const SeedPair& seeds) {
  const SeedPowers p = powers(seeds);
  return seeds.alpha1 * std::conj(seeds.alpha2) / (std::sqrt(1.0 + p.a) * std::sqrt(1.0 + p.b));
}

QuantonDensityMatrix quanton_density_closed(const SeedPair& seeds) {
  const SeedPowers p = powers(seeds);
  const double magnitude = std::sqrt((1.0 + p.a) * (1.0 + p.b)) / p.s;
  const cplx overlap_21 = std::conj(detector_fidelity(seeds));
  const double phase = std::abs(overlap_21) > 0.0 ? std::arg(overlap_21) : 0.0;
  return {(1.0 + p.a) / p.s, (1.0 + p.b) / p.s, std::polar(magnitude, phase)};
}

ComplementarityMeasures complementarity_measures(const SeedPair& seeds) {
  const SeedPowers p = powers(seeds);

  // 4 rho11 rho22 and |F|^2 straight from the seed powers.
  const double q = 4.0 * (1.0 + p.a) * (1.0 + p.b) / (p.s * p.s);
  const double f_abs = (p.r1 * p.r2) / (std::sqrt(1.0 + p.a) * std::sqrt(1.0 + p.b));
  const double f2 = f_abs * f_abs;

  ComplementarityMeasures m;
  m.F_abs = f_abs;
  m.D = clamped_sqrt(1.0 - q * f2);
  // sqrt(1 - q) written as |rho11 - rho22|; the square root loses half the
  // digits when the seed powers are nearly equal.
  m.P = std::abs(p.a - p.b) / p.s;
  m.E = clamped_sqrt(q * (1.0 - f2));
  m.V = std::min(1.0, 2.0 * std::sqrt((1.0 + p.a) * (1.0 + p.b)) / p.s);
  m.C = m.V * f_abs;
  m.mu_s = clamped_sqrt(1.0 - q * (1.0 - f2));
  return m;
}

}  // namespace duality::analytic
