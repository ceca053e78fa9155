#pragma once

#include <complex>

/// Closed-form complementarity measures of the two-crystal seeded
/// down-conversion interferometer, as functions of the two idler seed
/// amplitudes alpha1 and alpha2.
///
/// Notation used throughout: a = |alpha1|^2, b = |alpha2|^2, s = 2 + a + b.
namespace duality::analytic {

using cplx = std::complex<double>;

/// Largest seed magnitude accepted anywhere in the toolkit.
inline constexpr double kMaxSeedMagnitude = 1e3;

struct SeedPair {
  cplx alpha1{0.0, 0.0};
  cplx alpha2{0.0, 0.0};

  /// Throws ValidationError for non-finite seeds or |alpha| > kMaxSeedMagnitude.
  void validate() const;

  SeedPair swapped() const { return {alpha2, alpha1}; }
};

/// Path amplitudes of the signal photon: c_j = sqrt(1 + |alpha_j|^2) / sqrt(s).
struct QuantonAmplitudes {
  double c1 = 0.0;
  double c2 = 0.0;
};

/// 2x2 Hermitian signal-photon density matrix; rho21 = conj(rho12).
struct QuantonDensityMatrix {
  double rho11 = 0.0;
  double rho22 = 0.0;
  cplx rho12{0.0, 0.0};

  cplx rho21() const { return std::conj(rho12); }
  double trace() const { return rho11 + rho22; }
  /// Tr[rho^2]
  double purity() const { return rho11 * rho11 + rho22 * rho22 + 2.0 * std::norm(rho12); }
};

struct ComplementarityMeasures {
  double D = 0.0;      ///< distinguishability
  double P = 0.0;      ///< predictability
  double E = 0.0;      ///< quanton-detector entanglement
  double V = 0.0;      ///< visibility of the pure quanton state, 2|rho12|
  double C = 0.0;      ///< coherence, V |F|
  double F_abs = 0.0;  ///< detector-state overlap |<d1|d2>|
  double mu_s = 0.0;   ///< source purity
};

QuantonAmplitudes quanton_amplitudes(const SeedPair& seeds);

/// F = <d1|d2> = alpha1 conj(alpha2) / (sqrt(1 + a) sqrt(1 + b)). Only |F|
/// enters the measures; the phase is kept for callers that want it.
cplx detector_fidelity(const SeedPair& seeds);

/// Pure-state quanton density matrix. rho_jj = (1 + |alpha_j|^2) / s and
/// |rho12| = sqrt((1 + a)(1 + b)) / s. The phase of rho12 follows
/// c1 c2 <d2|d1>, i.e. arg(conj(F)), so it lines up with the off-diagonal of
/// the reduced matrix computed by the oracle. It is zero when F = 0.
QuantonDensityMatrix quanton_density_closed(const SeedPair& seeds);

/// All seven measures at one seed point. Square roots are taken of radicands
/// clamped to [0, 1]; cancellation near |F| -> 1 can otherwise produce values
/// like -1e-17.
ComplementarityMeasures complementarity_measures(const SeedPair& seeds);

}  // namespace duality::analytic
