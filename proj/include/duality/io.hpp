#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "duality/analytic.hpp"
#include "duality/interferometer.hpp"
#include "duality/sweep.hpp"

/// Text formats: sweep tables (CSV / JSON / SVG), fringe-scan CSV files and
/// small report renderers used by the CLI. All writers are deterministic: the
/// same input always produces the same bytes.
///
/// Fringe-scan CSV layout:
///
///   # alpha1_re=2
///   # ...more key=value metadata...
///   delta_theta,counts
///   0,40
///   0.19634954084936207,38.6...
///
/// Numbers are written with 17 significant digits, so a scan survives an
/// emit/ingest round trip bit for bit.
namespace duality::io {

enum class OutputFormat { csv, json, svg };

OutputFormat parse_output_format(const std::string& text);

/// Shortest-exact "%.17g" rendering.
std::string format_number(double value);

// ---- sweeps ---------------------------------------------------------------

/// Throws ValidationError if any row breaks the per-row identity bound
/// (sweep::kRowIdentityTolerance). Every sweep writer calls this first.
void check_rows(const sweep::SweepResult& result);

std::string sweep_to_csv(const sweep::SweepResult& result);
std::string sweep_to_json(const sweep::SweepResult& result);

/// Curves versus |alpha1| for the fig2 modes: one polyline each for D^2, P^2,
/// E^2, C^2, |F| and mu_s^2, plus a legend.
std::string sweep_to_svg_curves(const sweep::SweepResult& result);

/// Heat map over (|alpha|, gamma) for surface sweeps. `measure` is one of the
/// SweepRow fields D2, P2, E2, C2, F_abs, mu_s2, V, or the derived C and V_minus_C.
std::string sweep_to_svg_heatmap(const sweep::SweepResult& result, const std::string& measure);

/// Writes the sweep. For svg surface sweeps one file per measure is written,
/// named <stem>_<measure><ext> next to `path`. Returns the files written.
std::vector<std::filesystem::path> emit_sweep(const sweep::SweepResult& result,
                                              OutputFormat format,
                                              const std::filesystem::path& path,
                                              const std::vector<std::string>& surface_measures = {
                                                  "C", "V"});

// ---- fringe scans ---------------------------------------------------------

std::string scan_to_csv(const interferometer::FringeScan& scan);

/// Parses the scan CSV format. Errors carry 1-based line numbers
/// (ParseError). The result is marked provenance = ingested.
interferometer::FringeScan parse_scan_csv(std::istream& in);
interferometer::FringeScan ingest_scan_csv(const std::filesystem::path& path);

// ---- reports --------------------------------------------------------------

std::string measures_to_text(const analytic::ComplementarityMeasures& m);
std::string fit_to_text(const interferometer::FringeFit& fit);
std::string fit_to_json(const interferometer::FringeFit& fit);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace duality::io
