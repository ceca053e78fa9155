// duality_lab: command-line front end for the complementarity toolkit.
//
// Exit codes: 0 success / all checks pass, 1 validation or verification
// failure, 2 I/O or parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "duality/analytic.hpp"
#include "duality/error.hpp"
#include "duality/interferometer.hpp"
#include "duality/io.hpp"
#include "duality/oracle.hpp"
#include "duality/sweep.hpp"

namespace {

using duality::analytic::cplx;
using duality::analytic::SeedPair;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitIo = 2;

constexpr double kMeasuresOracleTolerance = 1e-8;

/// "re" or "re,im".
cplx parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != s.size() || !std::isfinite(v)) {
      throw CLI::ValidationError("seed amplitude", "cannot parse '" + text + "' as re[,im]");
    }
    return v;
  };
  if (comma == std::string::npos) return {number(text), 0.0};
  return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

nlohmann::ordered_json measures_json(const duality::analytic::ComplementarityMeasures& m) {
  nlohmann::ordered_json j;
  j["D"] = m.D;
  j["P"] = m.P;
  j["E"] = m.E;
  j["V"] = m.V;
  j["C"] = m.C;
  j["F_abs"] = m.F_abs;
  j["mu_s"] = m.mu_s;
  return j;
}

// ---- measures ---------------------------------------------------------------

struct MeasuresArgs {
  std::string alpha1 = "0";
  std::string alpha2 = "0";
  bool oracle = false;
  bool json = false;
};

int run_measures(const MeasuresArgs& args) {
  const SeedPair seeds{parse_complex(args.alpha1), parse_complex(args.alpha2)};
  const auto closed = duality::analytic::complementarity_measures(seeds);

  std::optional<duality::oracle::CompositeState> state;
  duality::analytic::ComplementarityMeasures brute;
  if (args.oracle) {
    state = duality::oracle::build_composite(seeds);
    brute = duality::oracle::measures_from_state(*state);
  }
  const double residuals[7] = {
      std::abs(closed.D - brute.D),         std::abs(closed.P - brute.P),
      std::abs(closed.E - brute.E),         std::abs(closed.V - brute.V),
      std::abs(closed.C - brute.C),         std::abs(closed.F_abs - brute.F_abs),
      std::abs(closed.mu_s - brute.mu_s)};
  static const char* kNames[7] = {"D", "P", "E", "V", "C", "F_abs", "mu_s"};
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, r);
  const bool ok = !args.oracle || worst < kMeasuresOracleTolerance;

  if (args.json) {
    nlohmann::ordered_json doc;
    doc["alpha1"] = {seeds.alpha1.real(), seeds.alpha1.imag()};
    doc["alpha2"] = {seeds.alpha2.real(), seeds.alpha2.imag()};
    doc["measures"] = measures_json(closed);
    if (args.oracle) {
      doc["oracle"] = measures_json(brute);
      doc["oracle_cutoff"] = state->cutoff;
      nlohmann::ordered_json res;
      for (int i = 0; i < 7; ++i) res[kNames[i]] = residuals[i];
      doc["oracle_residuals"] = res;
      doc["oracle_pass"] = ok;
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << duality::io::measures_to_text(closed);
    if (args.oracle) {
      std::printf("oracle (Fock cutoff %d):\n", state->cutoff);
      for (int i = 0; i < 7; ++i) std::printf("  %-5s residual %.3e\n", kNames[i], residuals[i]);
      std::printf("oracle agreement %s (worst %.3e, tol %.0e)\n", ok ? "PASS" : "FAIL", worst,
                  kMeasuresOracleTolerance);
    }
  }
  return ok ? kExitOk : kExitFailure;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  double alpha_max = 10.0;
  double oracle_alpha_max = 4.0;
  double tol_closed = 1e-12;
  double tol_oracle = 1e-8;
  bool no_oracle = false;
  bool json = false;
  std::string out;
};

int run_verify(const VerifyArgs& args) {
  duality::oracle::VerificationOptions opt;
  opt.samples = args.samples;
  opt.rng_seed = args.seed;
  opt.alpha_max = args.alpha_max;
  opt.oracle_alpha_max = args.oracle_alpha_max;
  opt.run_oracle = !args.no_oracle;
  opt.tolerances = {args.tol_closed, args.tol_oracle};
  const auto report = duality::oracle::verify_identities(opt);
  const std::string rendered = args.json ? report.to_json() : report.to_text();
  std::cout << rendered;
  if (!args.out.empty()) duality::io::write_text_file(args.out, rendered);
  return report.all_pass() ? kExitOk : kExitFailure;
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string mode;
  std::string out;
  std::string format = "csv";
  bool oracle = false;
  std::optional<double> amax, astep, gstep;
  double oracle_cap = 4.0;
  std::string measures = "C,V";
};

int run_sweep(const SweepArgs& args) {
  const auto mode = duality::sweep::parse_sweep_mode(args.mode);
  if (mode == duality::sweep::SweepMode::explicit_pairs) {
    throw duality::ValidationError("explicit sweeps are library-only; use fig2a, fig2b or surface");
  }
  auto grid = duality::sweep::SweepGrid::defaults(mode);
  if (args.amax) grid.alpha.max = *args.amax;
  if (args.astep) grid.alpha.step = *args.astep;
  if (args.gstep) {
    grid.gamma.step = *args.gstep;
    grid.gamma.min = *args.gstep;
  }
  grid.oracle_check = args.oracle;
  grid.oracle_cap = args.oracle_cap;

  const auto format = duality::io::parse_output_format(args.format);
  const auto result = duality::sweep::run_sweep(grid);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  const auto files = duality::io::emit_sweep(result, format, args.out, split_list(args.measures));

  double worst = 0.0;
  std::size_t checked = 0;
  for (const auto& r : result.rows) {
    if (r.oracle_residual) {
      ++checked;
      worst = std::max(worst, *r.oracle_residual);
    }
  }
  std::cout << "sweep " << duality::sweep::to_string(mode) << ": " << result.rows.size()
            << " rows";
  for (const auto& f : files) std::cout << " -> " << f.string();
  std::cout << "\n";
  if (args.oracle) {
    std::printf("oracle checked %zu rows, worst residual %.3e\n", checked, worst);
    if (!(worst < 1e-8)) return kExitFailure;
  }
  return kExitOk;
}

// ---- fringe -----------------------------------------------------------------

struct FringeArgs {
  std::string alpha1;
  std::string alpha2;
  int points = 100;
  std::optional<double> scale;
  double tint = duality::interferometer::kDefaultIntegrationTime;
  std::uint64_t seed = 0;
  std::string noise = "none";
  std::string out;
};

int run_fringe(const FringeArgs& args) {
  duality::interferometer::FringeConfig cfg;
  cfg.seeds = {parse_complex(args.alpha1), parse_complex(args.alpha2)};
  cfg.phase_points = args.points;
  cfg.pump_rate_scale =
      args.scale ? *args.scale : duality::interferometer::default_pump_rate_scale(cfg.seeds);
  cfg.integration_time = args.tint;
  cfg.rng_seed = args.seed;
  cfg.noise = duality::interferometer::parse_noise_model(args.noise);
  for (const auto& w : cfg.warnings()) std::cerr << "warning: " << w << "\n";

  const auto scan = duality::interferometer::simulate_fringe(cfg);
  duality::io::write_text_file(args.out, duality::io::scan_to_csv(scan));

  const double analytic_c = duality::analytic::complementarity_measures(cfg.seeds).C;
  const double minmax_c = duality::interferometer::extract_coherence_minmax(scan);
  if (scan.points.size() >= 8) {
    const auto fit = duality::interferometer::fit_fringe(scan);
    std::printf("fitted C = %.10f +/- %.3e, min/max C = %.10f, analytic C = %.10f\n",
                fit.coherence, fit.coherence_err, minmax_c, analytic_c);
  } else {
    std::printf("min/max C = %.10f, analytic C = %.10f (too few points to fit)\n", minmax_c,
                analytic_c);
  }
  return kExitOk;
}

// ---- fit --------------------------------------------------------------------

struct FitArgs {
  std::string input;
  bool json = false;
};

int run_fit(const FitArgs& args) {
  const auto scan = duality::io::ingest_scan_csv(args.input);
  const auto fit = duality::interferometer::fit_fringe(scan);
  const double minmax_c = duality::interferometer::extract_coherence_minmax(scan);
  std::optional<double> analytic_c;
  if (scan.config) {
    analytic_c = duality::analytic::complementarity_measures(scan.config->seeds).C;
  }

  if (args.json) {
    auto doc = nlohmann::ordered_json::parse(duality::io::fit_to_json(fit));
    doc["coherence_minmax"] = minmax_c;
    if (analytic_c) doc["coherence_analytic"] = *analytic_c;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << duality::io::fit_to_text(fit);
    std::printf("%-10s = %.10g\n", "min/max C", minmax_c);
    if (analytic_c) std::printf("%-10s = %.10g\n", "analytic C", *analytic_c);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complementarity toolkit for the seeded two-crystal interferometer"};
  app.require_subcommand(1);

  MeasuresArgs measures;
  auto* cmd_measures = app.add_subcommand("measures", "Closed-form D, P, E, V, C, |F|, mu_s");
  cmd_measures->add_option("--alpha1", measures.alpha1, "seed amplitude re[,im]")->required();
  cmd_measures->add_option("--alpha2", measures.alpha2, "seed amplitude re[,im]")->required();
  cmd_measures->add_flag("--oracle", measures.oracle, "also evaluate in truncated Fock space");
  cmd_measures->add_flag("--json", measures.json, "JSON output");

  VerifyArgs verify;
  auto* cmd_verify = app.add_subcommand("verify", "Randomized identity and oracle checks");
  cmd_verify->add_option("--samples", verify.samples, "number of seed pairs");
  cmd_verify->add_option("--seed", verify.seed, "RNG seed");
  cmd_verify->add_option("--alpha-max", verify.alpha_max, "|alpha| range, closed-form checks");
  cmd_verify->add_option("--oracle-alpha-max", verify.oracle_alpha_max,
                         "|alpha| range, Fock-space checks");
  cmd_verify->add_option("--tol-closed", verify.tol_closed, "closed-form identity tolerance");
  cmd_verify->add_option("--tol-oracle", verify.tol_oracle, "oracle agreement tolerance");
  cmd_verify->add_flag("--no-oracle", verify.no_oracle, "skip the Fock-space comparisons");
  cmd_verify->add_flag("--json", verify.json, "JSON report");
  cmd_verify->add_option("--out", verify.out, "also write the report to this file");

  SweepArgs sweep;
  auto* cmd_sweep = app.add_subcommand("sweep", "Parameter sweeps (fig2a, fig2b, surface)");
  cmd_sweep->add_option("--mode", sweep.mode, "fig2a|fig2b|surface")
      ->required()
      ->check(CLI::IsMember({"fig2a", "fig2b", "surface"}));
  cmd_sweep->add_option("--out", sweep.out, "output path")->required();
  cmd_sweep->add_option("--format", sweep.format, "csv|json|svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  cmd_sweep->add_flag("--oracle", sweep.oracle, "cross-check rows in Fock space");
  cmd_sweep->add_option("--amax", sweep.amax, "largest |alpha|");
  cmd_sweep->add_option("--astep", sweep.astep, "|alpha| step");
  cmd_sweep->add_option("--gstep", sweep.gstep, "gamma step (surface)");
  cmd_sweep->add_option("--oracle-cap", sweep.oracle_cap, "largest |alpha_j| checked by oracle");
  cmd_sweep->add_option("--measures", sweep.measures,
                        "comma list of heat-map measures for surface svg");

  FringeArgs fringe;
  auto* cmd_fringe = app.add_subcommand("fringe", "Simulate a phase scan");
  cmd_fringe->add_option("--alpha1", fringe.alpha1, "seed amplitude re[,im]")->required();
  cmd_fringe->add_option("--alpha2", fringe.alpha2, "seed amplitude re[,im]")->required();
  cmd_fringe->add_option("--points", fringe.points, "phase points over one period");
  cmd_fringe->add_option("--scale", fringe.scale, "pump rate scale, counts/s");
  cmd_fringe->add_option("--tint", fringe.tint, "integration time per point, s");
  cmd_fringe->add_option("--seed", fringe.seed, "RNG seed");
  cmd_fringe->add_option("--noise", fringe.noise, "none|poisson")
      ->check(CLI::IsMember({"none", "poisson"}));
  cmd_fringe->add_option("--out", fringe.out, "scan CSV path")->required();

  FitArgs fit;
  auto* cmd_fit = app.add_subcommand("fit", "Fit a scan CSV");
  cmd_fit->add_option("--input", fit.input, "scan CSV path")->required();
  cmd_fit->add_flag("--json", fit.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitIo;
  }

  try {
    if (cmd_measures->parsed()) return run_measures(measures);
    if (cmd_verify->parsed()) return run_verify(verify);
    if (cmd_sweep->parsed()) return run_sweep(sweep);
    if (cmd_fringe->parsed()) return run_fringe(fringe);
    if (cmd_fit->parsed()) return run_fit(fit);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const duality::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const duality::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitIo;
  } catch (const duality::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
