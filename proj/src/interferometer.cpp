#include "duality/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "duality/error.hpp"

namespace duality::interferometer {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

std::string to_string(NoiseModel noise) { return noise == NoiseModel::none ? "none" : "poisson"; }

std::string to_string(Provenance provenance) {
  return provenance == Provenance::simulated ? "simulated" : "ingested";
}

NoiseModel parse_noise_model(const std::string& text) {
  if (text == "none") return NoiseModel::none;
  if (text == "poisson") return NoiseModel::poisson;
  throw ValidationError("unknown noise model '" + text + "'");
}

Provenance parse_provenance(const std::string& text) {
  if (text == "simulated") return Provenance::simulated;
  if (text == "ingested") return Provenance::ingested;
  throw ValidationError("unknown provenance '" + text + "'");
}

void FringeConfig::validate() const {
  seeds.validate();
  if (!(pump_rate_scale > 0.0) || !std::isfinite(pump_rate_scale)) {
    throw ValidationError("pump_rate_scale must be a positive finite rate");
  }
  if (phase_points < 4) throw ValidationError("a fringe scan needs at least 4 phase points");
  if (!(integration_time > 0.0) || !std::isfinite(integration_time)) {
    throw ValidationError("integration_time must be positive");
  }
}

std::vector<std::string> FringeConfig::warnings() const {
  std::vector<std::string> out;
  if (noise == NoiseModel::poisson) {
    const double r1 = std::abs(seeds.alpha1);
    const double r2 = std::abs(seeds.alpha2);
    // Fringe minimum of the rate model.
    const double min_rate = pump_rate_scale * (2.0 + (r1 - r2) * (r1 - r2));
    if (min_rate * integration_time < 1.0) {
      out.push_back("fewer than one expected count per phase point; fitted coherence is unreliable");
    }
  }
  return out;
}

double default_pump_rate_scale(const SeedPair& seeds) {
  seeds.validate();
  const double sum = std::abs(seeds.alpha1) + std::abs(seeds.alpha2);
  return kDefaultPeakRate / (2.0 + sum * sum);
}

void FringeScan::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!std::isfinite(p.delta_theta) || p.delta_theta < 0.0 || p.delta_theta >= kTwoPi) {
      throw ValidationError("delta_theta outside [0, 2 pi) at point " + std::to_string(i));
    }
    if (i > 0 && !(p.delta_theta > points[i - 1].delta_theta)) {
      throw ValidationError("delta_theta not strictly increasing at point " + std::to_string(i));
    }
    if (!std::isfinite(p.counts) || p.counts < 0.0) {
      throw ValidationError("counts must be finite and non-negative at point " +
                            std::to_string(i));
    }
  }
}

double count_rate(const SeedPair& seeds, double delta_theta, double pump_rate_scale) {
  if (!(pump_rate_scale > 0.0)) throw ValidationError("pump_rate_scale must be positive");
  const double r1 = std::abs(seeds.alpha1);
  const double r2 = std::abs(seeds.alpha2);
  return pump_rate_scale * (2.0 + r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * std::sin(delta_theta));
}

FringeScan simulate_fringe(const FringeConfig& config) {
  config.validate();
  FringeScan scan;
  scan.config = config;
  scan.provenance = Provenance::simulated;
  scan.points.reserve(static_cast<std::size_t>(config.phase_points));

  std::mt19937_64 rng(split_seed(config.rng_seed, 0));
  for (int k = 0; k < config.phase_points; ++k) {
    const double theta = kTwoPi * k / config.phase_points;
    const double mean = count_rate(config.seeds, theta, config.pump_rate_scale) *
                        config.integration_time;
    double counts = mean;
    if (config.noise == NoiseModel::poisson) {
      counts = mean > 0.0
                   ? static_cast<double>(std::poisson_distribution<std::int64_t>(mean)(rng))
                   : 0.0;
    }
    scan.points.push_back({theta, counts});
  }
  return scan;
}

double extract_coherence_minmax(const FringeScan& scan) {
  if (scan.points.size() < 2) {
    throw ValidationError("min/max coherence needs at least two points");
  }
  const auto [lo, hi] = std::minmax_element(
      scan.points.begin(), scan.points.end(),
      [](const FringePoint& a, const FringePoint& b) { return a.counts < b.counts; });
  const double sum = hi->counts + lo->counts;
  if (!(sum > 0.0)) throw ValidationError("all-zero scan has no defined coherence");
  return (hi->counts - lo->counts) / sum;
}

FringeFit fit_fringe(const FringeScan& scan) {
  const std::size_t n = scan.points.size();
  if (n < 8) throw ValidationError("fringe fit needs at least 8 points");

  Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (const auto& p : scan.points) {
    if (!std::isfinite(p.counts) || !std::isfinite(p.delta_theta)) {
      throw ValidationError("fringe fit input must be finite");
    }
    const Eigen::Vector3d x(1.0, std::sin(p.delta_theta), std::cos(p.delta_theta));
    const double w = 1.0 / std::max(p.counts, 1.0);
    normal += w * x * x.transpose();
    rhs += w * p.counts * x;
  }

  Eigen::FullPivLU<Eigen::Matrix3d> lu(normal);
  lu.setThreshold(1e-10);
  if (lu.rank() < 3) throw ValidationError("singular normal equations in fringe fit");

  std::vector<double> phases;
  phases.reserve(n);
  for (const auto& p : scan.points) {
    double t = std::fmod(p.delta_theta, kTwoPi);
    phases.push_back(t < 0.0 ? t + kTwoPi : t);
  }
  std::sort(phases.begin(), phases.end());
  double gap = phases.front() + kTwoPi - phases.back();
  for (std::size_t i = 1; i < n; ++i) gap = std::max(gap, phases[i] - phases[i - 1]);
  if (gap > std::numbers::pi / 2 + 1e-12) {
    throw ValidationError("fringe scan does not span a full period");
  }

  const Eigen::Vector3d beta = lu.solve(rhs);
  const Eigen::Matrix3d cov = lu.inverse();
  const double a = beta(0), p = beta(1), q = beta(2);

  FringeFit fit;
  fit.points = n;
  fit.offset = a;
  fit.amplitude = std::hypot(p, q);
  fit.phase = fit.amplitude > 0.0 ? std::atan2(-q, -p) : 0.0;
  fit.coherence = a != 0.0 ? fit.amplitude / a : 0.0;
  fit.offset_err = std::sqrt(std::max(cov(0, 0), 0.0));

  const double b = fit.amplitude;
  if (b > 0.0) {
    const Eigen::Vector3d grad_b(0.0, p / b, q / b);
    const Eigen::Vector3d grad_phi(0.0, -q / (b * b), p / (b * b));
    const Eigen::Vector3d grad_c(-b / (a * a), p / (a * b), q / (a * b));
    fit.amplitude_err = std::sqrt(std::max(grad_b.dot(cov * grad_b), 0.0));
    fit.phase_err = std::sqrt(std::max(grad_phi.dot(cov * grad_phi), 0.0));
    fit.coherence_err = std::sqrt(std::max(grad_c.dot(cov * grad_c), 0.0));
  } else {
    // Gradient undefined at zero amplitude; use the mean sin/cos variance.
    fit.amplitude_err = std::sqrt(std::max(0.5 * (cov(1, 1) + cov(2, 2)), 0.0));
    fit.phase_err = std::numbers::pi;
    fit.coherence_err = a != 0.0 ? fit.amplitude_err / std::abs(a) : 0.0;
  }

  double ss = 0.0;
  for (const auto& pt : scan.points) {
    const double model = a + p * std::sin(pt.delta_theta) + q * std::cos(pt.delta_theta);
    ss += (pt.counts - model) * (pt.counts - model);
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

std::vector<FringeFit> fit_replicates(const FringeConfig& base, std::size_t replicates,
                                      Execution exec) {
  base.validate();
  std::vector<FringeFit> fits(replicates);
  const auto n = static_cast<std::ptrdiff_t>(replicates);
  auto one = [&](std::ptrdiff_t k) {
    FringeConfig cfg = base;
    cfg.rng_seed = base.rng_seed + static_cast<std::uint64_t>(k);
    fits[static_cast<std::size_t>(k)] = fit_fringe(simulate_fringe(cfg));
  };
  parallel::for_each_index(n, exec, one);
  return fits;
}

}  // namespace duality::interferometer
