#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "duality/analytic.hpp"
#include "duality/fock.hpp"
#include "duality/parallel.hpp"

/// Parameter sweeps over seed amplitudes.
///
/// Grid modes:
///   fig2a    alpha1 = alpha2 = |alpha|
///   fig2b    alpha1 = |alpha|, alpha2 = |alpha| / 2
///   surface  gamma = |alpha2| / |alpha1| and |alpha| = |alpha2|, i.e.
///            |alpha2| = |alpha| and |alpha1| = |alpha| / gamma
///   explicit a caller-supplied list of seed pairs
namespace duality::sweep {

using analytic::SeedPair;

enum class SweepMode { fig2a, fig2b, surface, explicit_pairs };

std::string to_string(SweepMode mode);
SweepMode parse_sweep_mode(const std::string& text);

inline constexpr std::size_t kMaxGridPoints = 1'000'000;
inline constexpr double kRowIdentityTolerance = 1e-12;

/// Inclusive arithmetic axis min, min + step, ..., up to max (with a 1e-9
/// relative allowance so max is hit despite rounding).
struct Axis {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  std::size_t count() const;
  std::vector<double> values() const;
  void validate(const char* name) const;
};

struct SweepGrid {
  SweepMode mode = SweepMode::fig2a;
  Axis alpha{0.0, 6.0, 0.05};
  Axis gamma{0.02, 1.0, 0.02};  ///< surface mode only; must stay > 0
  std::vector<SeedPair> pairs;  ///< explicit mode only
  bool oracle_check = false;
  /// Points with max(|alpha1|, |alpha2|) above this skip the Fock-space check.
  double oracle_cap = 4.0;
  fock::CutoffPolicy policy{};

  /// Default grids: |alpha| in [0, 6] step 0.05 for the fig2 modes; surface
  /// uses gamma in (0, 1] step 0.02 and |alpha| in [0, 10] step 0.1.
  static SweepGrid defaults(SweepMode mode);

  std::size_t point_count() const;
  void validate() const;
};

struct SweepRow {
  double alpha1_abs = 0.0;
  double alpha2_abs = 0.0;
  double gamma = 0.0;
  double D2 = 0.0;
  double P2 = 0.0;
  double E2 = 0.0;
  double C2 = 0.0;
  double F_abs = 0.0;
  double mu_s2 = 0.0;
  double V = 0.0;
  /// Largest |analytic - oracle| over all seven measures, when checked.
  std::optional<double> oracle_residual;

  double C() const;
  /// Largest of |D2 - P2 - E2|, |P2 + E2 + C2 - 1| and |P2 + C2 - mu_s2|.
  double identity_residual() const;
};

/// Field names of SweepRow in emission order (without the oracle column).
const std::vector<std::string>& sweep_row_fields();

struct SweepResult {
  SweepMode mode = SweepMode::fig2a;
  std::vector<SweepRow> rows;
  /// Surface mode: rows are gamma-major, |alpha| varies fastest.
  std::size_t gamma_count = 0;
  std::size_t alpha_count = 0;
  bool oracle_checked = false;
  std::vector<std::string> warnings;
};

/// Evaluates the closed-form measures at every grid point (and the oracle,
/// when requested and within oracle_cap). Rows come out in row-major grid
/// order for both execution paths.
SweepResult run_sweep(const SweepGrid& grid, Execution exec = Execution::parallel);

}  // namespace duality::sweep
