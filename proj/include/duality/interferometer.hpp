#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "duality/analytic.hpp"
#include "duality/parallel.hpp"

/// Count-rate model of the double-path single-photon interferometer, a
/// shot-noise simulator of phase scans and two estimators for the fringe
/// coherence.
///
/// The interferometer phase is the single knob delta_theta = phi_p + phi_i +
/// phi_s. Moving any one of the pump, idler or signal path lengths shifts
/// delta_theta by the same amount, so the simulator exposes only the sum.
namespace duality::interferometer {

using analytic::SeedPair;

/// Integration time of the photon counter, seconds.
inline constexpr double kDefaultIntegrationTime = 0.010;
/// Peak signal count rate used to pick a default pump scale, counts/second.
inline constexpr double kDefaultPeakRate = 5e6;

enum class NoiseModel { none, poisson };
enum class Provenance { simulated, ingested };

std::string to_string(NoiseModel noise);
std::string to_string(Provenance provenance);
NoiseModel parse_noise_model(const std::string& text);
Provenance parse_provenance(const std::string& text);

struct FringeConfig {
  SeedPair seeds{};
  /// |nu|^2 and every collection constant, in counts per second.
  double pump_rate_scale = 1.0;
  int phase_points = 100;
  double integration_time = kDefaultIntegrationTime;
  std::uint64_t rng_seed = 0;
  NoiseModel noise = NoiseModel::none;

  /// Throws ValidationError on non-positive scale or integration time, or
  /// fewer than 4 phase points.
  void validate() const;
  /// Non-fatal problems, e.g. fewer than one expected count per point under
  /// Poisson noise.
  std::vector<std::string> warnings() const;
};

/// Pump scale that puts the fringe maximum at kDefaultPeakRate.
double default_pump_rate_scale(const SeedPair& seeds);

struct FringePoint {
  double delta_theta = 0.0;
  double counts = 0.0;
};

struct FringeScan {
  std::vector<FringePoint> points;
  /// Acquisition settings; absent for ingested files without metadata.
  std::optional<FringeConfig> config;
  Provenance provenance = Provenance::simulated;

  /// Strictly increasing delta_theta in [0, 2 pi), finite non-negative counts.
  void validate() const;
};

/// Model counts(delta_theta) = offset - amplitude * sin(delta_theta + phase).
struct FringeFit {
  double offset = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  double coherence = 0.0;  ///< amplitude / offset
  double offset_err = 0.0;
  double amplitude_err = 0.0;
  double phase_err = 0.0;
  double coherence_err = 0.0;
  double residual_rms = 0.0;
  std::size_t points = 0;
};

/// scale * (2 + |alpha1|^2 + |alpha2|^2 - 2 |alpha1||alpha2| sin(delta_theta)).
/// The leading 2 is the vacuum contribution of the two idler modes.
double count_rate(const SeedPair& seeds, double delta_theta, double pump_rate_scale);

/// Uniform grid of config.phase_points phases over [0, 2 pi). Counts are
/// rate * integration_time, or a Poisson draw with that mean from a stream
/// seeded by config.rng_seed.
FringeScan simulate_fringe(const FringeConfig& config);

/// (max - min) / (max + min) of the observed counts. Needs at least two
/// points and a nonzero maximum.
double extract_coherence_minmax(const FringeScan& scan);

/// Weighted linear least squares on counts = a + p sin(delta_theta) + q cos(delta_theta)
/// with Poisson weights 1 / max(counts, 1). amplitude = sqrt(p^2 + q^2),
/// phase = atan2(-q, -p). Standard errors come from the inverse normal matrix,
/// propagated to amplitude, phase and coherence to first order.
/// Requires >= 8 points whose phases leave no circular gap wider than pi / 2.
FringeFit fit_fringe(const FringeScan& scan);

/// Simulate-and-fit Monte Carlo: replicate k uses rng_seed = base.rng_seed + k.
std::vector<FringeFit> fit_replicates(const FringeConfig& base, std::size_t replicates,
                                      Execution exec = Execution::parallel);

}  // namespace duality::interferometer
