#include "duality/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "duality/error.hpp"
#include "duality/oracle.hpp"

namespace duality::sweep {

std::string to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::fig2a: return "fig2a";
    case SweepMode::fig2b: return "fig2b";
    case SweepMode::surface: return "surface";
    case SweepMode::explicit_pairs: return "explicit";
  }
  return "unknown";
}

SweepMode parse_sweep_mode(const std::string& text) {
  if (text == "fig2a") return SweepMode::fig2a;
  if (text == "fig2b") return SweepMode::fig2b;
  if (text == "surface") return SweepMode::surface;
  if (text == "explicit") return SweepMode::explicit_pairs;
  throw ValidationError("unknown sweep mode '" + text + "'");
}

void Axis::validate(const char* name) const {
  if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) {
    throw ValidationError(std::string(name) + " axis bounds must be finite");
  }
  if (!(step > 0.0)) throw ValidationError(std::string(name) + " axis step must be positive");
  if (max < min) throw ValidationError(std::string(name) + " axis range is empty");
}

std::size_t Axis::count() const {
  const double span = (max - min) / step;
  if (span > static_cast<double>(kMaxGridPoints)) return kMaxGridPoints + 1;
  return static_cast<std::size_t>(std::floor(span * (1.0 + 1e-9) + 1e-9)) + 1;
}

std::vector<double> Axis::values() const {
  const std::size_t n = count();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = min + static_cast<double>(i) * step;
  return out;
}

SweepGrid SweepGrid::defaults(SweepMode mode) {
  SweepGrid g;
  g.mode = mode;
  if (mode == SweepMode::surface) g.alpha = {0.0, 10.0, 0.1};
  return g;
}

std::size_t SweepGrid::point_count() const {
  switch (mode) {
    case SweepMode::fig2a:
    case SweepMode::fig2b: return alpha.count();
    case SweepMode::surface: {
      const std::size_t g = gamma.count(), a = alpha.count();
      if (g > kMaxGridPoints || a > kMaxGridPoints) return kMaxGridPoints + 1;
      return g * a;
    }
    case SweepMode::explicit_pairs: return pairs.size();
  }
  return 0;
}

void SweepGrid::validate() const {
  policy.validate();
  if (mode == SweepMode::explicit_pairs) {
    if (pairs.empty()) throw ValidationError("explicit sweep needs at least one seed pair");
    for (const auto& p : pairs) p.validate();
  } else {
    alpha.validate("alpha");
    if (alpha.min < 0.0) throw ValidationError("|alpha| axis must be non-negative");
    if (mode == SweepMode::surface) {
      gamma.validate("gamma");
      if (!(gamma.min > 0.0)) throw ValidationError("gamma axis must exclude 0");
    }
  }
  if (point_count() > kMaxGridPoints) {
    throw ValidationError("sweep grid exceeds 10^6 points");
  }
}

double SweepRow::C() const { return std::sqrt(C2); }

double SweepRow::identity_residual() const {
  return std::max({std::abs(D2 - P2 - E2), std::abs(P2 + E2 + C2 - 1.0),
                   std::abs(P2 + C2 - mu_s2)});
}

const std::vector<std::string>& sweep_row_fields() {
  static const std::vector<std::string> fields{"alpha1_abs", "alpha2_abs", "gamma", "D2",
                                               "P2",         "E2",         "C2",    "F_abs",
                                               "mu_s2",      "V"};
  return fields;
}

namespace {

struct GridPoint {
  SeedPair seeds;
  double gamma;
};

SweepRow evaluate(const GridPoint& point, const SweepGrid& grid) {
  const auto m = analytic::complementarity_measures(point.seeds);
  SweepRow row;
  row.alpha1_abs = std::abs(point.seeds.alpha1);
  row.alpha2_abs = std::abs(point.seeds.alpha2);
  row.gamma = point.gamma;
  row.D2 = m.D * m.D;
  row.P2 = m.P * m.P;
  row.E2 = m.E * m.E;
  row.C2 = m.C * m.C;
  row.F_abs = m.F_abs;
  row.mu_s2 = m.mu_s * m.mu_s;
  row.V = m.V;

  if (grid.oracle_check && std::max(row.alpha1_abs, row.alpha2_abs) <= grid.oracle_cap) {
    const auto state = oracle::build_composite(point.seeds, grid.policy);
    const auto brute = oracle::measures_from_state(state, Execution::serial);
    row.oracle_residual = std::max({std::abs(m.D - brute.D), std::abs(m.P - brute.P),
                                    std::abs(m.E - brute.E), std::abs(m.V - brute.V),
                                    std::abs(m.C - brute.C), std::abs(m.F_abs - brute.F_abs),
                                    std::abs(m.mu_s - brute.mu_s)});
  }
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepGrid& grid, Execution exec) {
  grid.validate();

  SweepResult result;
  result.mode = grid.mode;
  result.oracle_checked = grid.oracle_check;

  std::vector<GridPoint> points;
  switch (grid.mode) {
    case SweepMode::fig2a:
      for (double a : grid.alpha.values()) points.push_back({{a, a}, 1.0});
      result.alpha_count = points.size();
      result.gamma_count = 1;
      break;
    case SweepMode::fig2b:
      for (double a : grid.alpha.values()) points.push_back({{a, a / 2.0}, 0.5});
      result.alpha_count = points.size();
      result.gamma_count = 1;
      break;
    case SweepMode::surface: {
      const auto gammas = grid.gamma.values();
      const auto alphas = grid.alpha.values();
      for (double g : gammas) {
        for (double a : alphas) {
          SeedPair seeds{a / g, a};
          // |alpha1| = |alpha| / gamma can leave the accepted seed range.
          if (std::abs(seeds.alpha1) > analytic::kMaxSeedMagnitude) {
            throw ValidationError("surface grid point gamma=" + std::to_string(g) +
                                  ", |alpha|=" + std::to_string(a) +
                                  " needs |alpha1| > 1e3");
          }
          points.push_back({seeds, g});
        }
      }
      result.gamma_count = gammas.size();
      result.alpha_count = alphas.size();
      break;
    }
    case SweepMode::explicit_pairs:
      for (std::size_t i = 0; i < grid.pairs.size(); ++i) {
        const auto& p = grid.pairs[i];
        const double a1 = std::abs(p.alpha1);
        if (a1 == 0.0) {
          result.warnings.push_back("skipped explicit pair " + std::to_string(i) +
                                    ": gamma undefined for |alpha1| = 0");
          continue;
        }
        points.push_back({p, std::abs(p.alpha2) / a1});
      }
      result.alpha_count = points.size();
      result.gamma_count = 1;
      break;
  }

  result.rows.resize(points.size());
  parallel::for_each_index(static_cast<std::ptrdiff_t>(points.size()), exec,
                           [&](std::ptrdiff_t i) {
                             const auto k = static_cast<std::size_t>(i);
                             result.rows[k] = evaluate(points[k], grid);
                           });
  return result;
}

}  // namespace duality::sweep
