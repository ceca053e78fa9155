#include "duality/io.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "duality/error.hpp"

namespace duality::io {

using interferometer::FringeConfig;
using interferometer::FringePoint;
using interferometer::FringeScan;
using sweep::SweepResult;
using sweep::SweepRow;

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  if (text == "svg") return OutputFormat::svg;
  throw ValidationError("unknown output format '" + text + "'");
}

std::string format_number(double value) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return buf.data();
}

namespace {

std::string fixed(double value, int decimals = 2) {
  std::array<char, 48> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", decimals, value);
  return buf.data();
}

std::array<double, 10> row_values(const SweepRow& r) {
  return {r.alpha1_abs, r.alpha2_abs, r.gamma, r.D2, r.P2, r.E2, r.C2, r.F_abs, r.mu_s2, r.V};
}

double measure_value(const SweepRow& r, const std::string& measure) {
  if (measure == "D2") return r.D2;
  if (measure == "P2") return r.P2;
  if (measure == "E2") return r.E2;
  if (measure == "C2") return r.C2;
  if (measure == "F_abs") return r.F_abs;
  if (measure == "mu_s2") return r.mu_s2;
  if (measure == "V") return r.V;
  if (measure == "C") return r.C();
  if (measure == "V_minus_C") return r.V - r.C();
  throw ValidationError("unknown measure '" + measure + "' for heat map");
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Five-stop approximation of the viridis colormap.
std::string colormap(double t) {
  static constexpr std::array<std::array<double, 3>, 5> stops{{{68, 1, 84},
                                                               {59, 82, 139},
                                                               {33, 145, 140},
                                                               {94, 201, 98},
                                                               {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const auto i = std::min<std::size_t>(3, static_cast<std::size_t>(t));
  const double f = t - static_cast<double>(i);
  std::array<char, 8> buf{};
  std::array<int, 3> rgb{};
  for (int c = 0; c < 3; ++c) {
    rgb[c] = static_cast<int>(std::lround(stops[i][c] + f * (stops[i + 1][c] - stops[i][c])));
  }
  std::snprintf(buf.data(), buf.size(), "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf.data();
}

struct Frame {
  double width = 760, height = 480;
  double left = 70, right = 180, top = 40, bottom = 60;
  double x0, x1, y0, y1;  // data ranges

  double px(double x) const {
    const double w = width - left - right;
    return left + (x1 > x0 ? (x - x0) / (x1 - x0) : 0.0) * w;
  }
  double py(double y) const {
    const double h = height - top - bottom;
    return top + h - (y1 > y0 ? (y - y0) / (y1 - y0) : 0.0) * h;
  }
};

void svg_header(std::ostringstream& os, const Frame& f, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(f.width, 0)
     << "\" height=\"" << fixed(f.height, 0) << "\" viewBox=\"0 0 " << fixed(f.width, 0) << " "
     << fixed(f.height, 0) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed(f.width / 2) << "\" y=\"22\" text-anchor=\"middle\" "
     << "font-size=\"15\">" << escape_xml(title) << "</text>\n";
}

void svg_axes(std::ostringstream& os, const Frame& f, const std::string& xlabel,
              const std::string& ylabel, int xticks, int yticks) {
  const double xl = f.px(f.x0), xr = f.px(f.x1), yb = f.py(f.y0), yt = f.py(f.y1);
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  os << "<line x1=\"" << fixed(xl) << "\" y1=\"" << fixed(yb) << "\" x2=\"" << fixed(xr)
     << "\" y2=\"" << fixed(yb) << "\"/>\n";
  os << "<line x1=\"" << fixed(xl) << "\" y1=\"" << fixed(yb) << "\" x2=\"" << fixed(xl)
     << "\" y2=\"" << fixed(yt) << "\"/>\n";
  os << "</g>\n<g text-anchor=\"middle\">\n";
  for (int i = 0; i <= xticks; ++i) {
    const double v = f.x0 + (f.x1 - f.x0) * i / xticks;
    os << "<line x1=\"" << fixed(f.px(v)) << "\" y1=\"" << fixed(yb) << "\" x2=\""
       << fixed(f.px(v)) << "\" y2=\"" << fixed(yb + 5) << "\" stroke=\"black\"/>";
    os << "<text x=\"" << fixed(f.px(v)) << "\" y=\"" << fixed(yb + 18) << "\">" << fixed(v, 2)
       << "</text>\n";
  }
  os << "</g>\n<g text-anchor=\"end\">\n";
  for (int i = 0; i <= yticks; ++i) {
    const double v = f.y0 + (f.y1 - f.y0) * i / yticks;
    os << "<line x1=\"" << fixed(xl - 5) << "\" y1=\"" << fixed(f.py(v)) << "\" x2=\""
       << fixed(xl) << "\" y2=\"" << fixed(f.py(v)) << "\" stroke=\"black\"/>";
    os << "<text x=\"" << fixed(xl - 8) << "\" y=\"" << fixed(f.py(v) + 4) << "\">"
       << fixed(v, 2) << "</text>\n";
  }
  os << "</g>\n";
  os << "<text x=\"" << fixed((xl + xr) / 2) << "\" y=\"" << fixed(f.height - 15)
     << "\" text-anchor=\"middle\">" << escape_xml(xlabel) << "</text>\n";
  os << "<text x=\"18\" y=\"" << fixed((yb + yt) / 2) << "\" text-anchor=\"middle\" "
     << "transform=\"rotate(-90 18 " << fixed((yb + yt) / 2) << ")\">" << escape_xml(ylabel)
     << "</text>\n";
}

std::filesystem::path suffixed(const std::filesystem::path& path, const std::string& suffix) {
  std::filesystem::path out = path;
  const std::string ext = path.has_extension() ? path.extension().string() : ".svg";
  out.replace_filename(path.stem().string() + "_" + suffix + ext);
  return out;
}

}  // namespace

// ---- sweeps ---------------------------------------------------------------

void check_rows(const SweepResult& result) {
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const double r = result.rows[i].identity_residual();
    if (!(r < sweep::kRowIdentityTolerance)) {
      throw ValidationError("sweep row " + std::to_string(i) + " violates identity bound (" +
                            format_number(r) + "); refusing to emit");
    }
  }
}

std::string sweep_to_csv(const SweepResult& result) {
  check_rows(result);
  std::ostringstream os;
  const auto& fields = sweep::sweep_row_fields();
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i];
  if (result.oracle_checked) os << ",oracle_residual";
  os << "\n";
  for (const auto& row : result.rows) {
    const auto v = row_values(row);
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_number(v[i]);
    if (result.oracle_checked) {
      os << ",";
      if (row.oracle_residual) os << format_number(*row.oracle_residual);
    }
    os << "\n";
  }
  return os.str();
}

std::string sweep_to_json(const SweepResult& result) {
  check_rows(result);
  auto doc = nlohmann::ordered_json::array();
  const auto& fields = sweep::sweep_row_fields();
  for (const auto& row : result.rows) {
    nlohmann::ordered_json item;
    const auto v = row_values(row);
    for (std::size_t i = 0; i < v.size(); ++i) item[fields[i]] = v[i];
    if (result.oracle_checked) {
      item["oracle_residual"] =
          row.oracle_residual ? nlohmann::ordered_json(*row.oracle_residual) : nullptr;
    }
    doc.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

std::string sweep_to_svg_curves(const SweepResult& result) {
  check_rows(result);
  if (result.rows.empty()) throw ValidationError("cannot plot an empty sweep");
  if (result.mode == sweep::SweepMode::explicit_pairs || result.mode == sweep::SweepMode::surface) {
    throw ValidationError("curve plot needs a fig2a or fig2b sweep");
  }

  struct Series {
    const char* label;
    const char* color;
    double SweepRow::*field;
  };
  static const std::array<Series, 6> series{{{"D^2", "#1f77b4", &SweepRow::D2},
                                             {"P^2", "#ff7f0e", &SweepRow::P2},
                                             {"E^2", "#2ca02c", &SweepRow::E2},
                                             {"C^2", "#d62728", &SweepRow::C2},
                                             {"|F|", "#9467bd", &SweepRow::F_abs},
                                             {"mu_s^2", "#8c564b", &SweepRow::mu_s2}}};

  Frame f;
  f.x0 = result.rows.front().alpha1_abs;
  f.x1 = result.rows.back().alpha1_abs;
  f.y0 = 0.0;
  f.y1 = 1.0;

  std::ostringstream os;
  const std::string title = result.mode == sweep::SweepMode::fig2a
                                ? "alpha1 = alpha2 = |alpha|"
                                : "alpha1 = |alpha| = 2 alpha2";
  svg_header(os, f, title);
  svg_axes(os, f, "|alpha|", "value", 6, 5);
  for (const auto& s : series) {
    os << "<polyline class=\"measure\" data-measure=\"" << escape_xml(s.label)
       << "\" fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
      const auto& r = result.rows[i];
      os << (i ? " " : "") << fixed(f.px(r.alpha1_abs)) << "," << fixed(f.py(r.*s.field));
    }
    os << "\"/>\n";
  }
  // Legend.
  double ly = f.top + 10;
  const double lx = f.width - f.right + 20;
  for (const auto& s : series) {
    os << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 24)
       << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>";
    os << "<text x=\"" << fixed(lx + 30) << "\" y=\"" << fixed(ly + 4) << "\">"
       << escape_xml(s.label) << "</text>\n";
    ly += 20;
  }
  os << "</svg>\n";
  return os.str();
}

std::string sweep_to_svg_heatmap(const SweepResult& result, const std::string& measure) {
  check_rows(result);
  if (result.mode != sweep::SweepMode::surface) {
    throw ValidationError("heat map needs a surface sweep");
  }
  if (result.rows.empty() || result.rows.size() != result.gamma_count * result.alpha_count) {
    throw ValidationError("heat map needs a complete rectangular grid");
  }
  const std::size_t ng = result.gamma_count, na = result.alpha_count;
  // Rows are gamma-major; |alpha| = alpha2_abs.
  const double a_lo = result.rows.front().alpha2_abs;
  const double a_hi = result.rows[na - 1].alpha2_abs;
  const double g_lo = result.rows.front().gamma;
  const double g_hi = result.rows.back().gamma;
  const double da = na > 1 ? (a_hi - a_lo) / static_cast<double>(na - 1) : 1.0;
  const double dg = ng > 1 ? (g_hi - g_lo) / static_cast<double>(ng - 1) : 1.0;

  Frame f;
  f.x0 = a_lo - da / 2;
  f.x1 = a_hi + da / 2;
  f.y0 = g_lo - dg / 2;
  f.y1 = g_hi + dg / 2;

  double vmin = measure_value(result.rows.front(), measure), vmax = vmin;
  for (const auto& r : result.rows) {
    const double v = measure_value(r, measure);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  const double range = vmax > vmin ? vmax - vmin : 1.0;

  std::ostringstream os;
  svg_header(os, f, measure + " over (|alpha|, gamma)");
  os << "<g class=\"heatmap\" data-measure=\"" << escape_xml(measure)
     << "\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t gi = 0; gi < ng; ++gi) {
    for (std::size_t ai = 0; ai < na; ++ai) {
      const auto& r = result.rows[gi * na + ai];
      const double x = f.px(r.alpha2_abs - da / 2), x2 = f.px(r.alpha2_abs + da / 2);
      const double y = f.py(r.gamma + dg / 2), y2 = f.py(r.gamma - dg / 2);
      os << "<rect x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" width=\"" << fixed(x2 - x)
         << "\" height=\"" << fixed(y2 - y) << "\" fill=\""
         << colormap((measure_value(r, measure) - vmin) / range) << "\"/>\n";
    }
  }
  os << "</g>\n";
  svg_axes(os, f, "|alpha| = |alpha2|", "gamma = |alpha2|/|alpha1|", 5, 5);

  // Color bar.
  const double bx = f.width - f.right + 30, bw = 20, btop = f.top, bh = f.height - f.top - f.bottom;
  constexpr int kSteps = 50;
  for (int i = 0; i < kSteps; ++i) {
    const double t = (i + 0.5) / kSteps;
    os << "<rect x=\"" << fixed(bx) << "\" y=\"" << fixed(btop + bh * (1.0 - (i + 1.0) / kSteps))
       << "\" width=\"" << fixed(bw) << "\" height=\"" << fixed(bh / kSteps + 0.5) << "\" fill=\""
       << colormap(t) << "\"/>\n";
  }
  os << "<text x=\"" << fixed(bx + bw + 6) << "\" y=\"" << fixed(btop + 10) << "\">"
     << fixed(vmax, 3) << "</text>\n";
  os << "<text x=\"" << fixed(bx + bw + 6) << "\" y=\"" << fixed(btop + bh) << "\">"
     << fixed(vmin, 3) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::vector<std::filesystem::path> emit_sweep(const SweepResult& result, OutputFormat format,
                                              const std::filesystem::path& path,
                                              const std::vector<std::string>& surface_measures) {
  switch (format) {
    case OutputFormat::csv: write_text_file(path, sweep_to_csv(result)); return {path};
    case OutputFormat::json: write_text_file(path, sweep_to_json(result)); return {path};
    case OutputFormat::svg: break;
  }
  if (result.mode == sweep::SweepMode::explicit_pairs) {
    throw ValidationError("svg output is not available for explicit seed lists");
  }
  if (result.mode != sweep::SweepMode::surface) {
    write_text_file(path, sweep_to_svg_curves(result));
    return {path};
  }
  if (surface_measures.empty()) throw ValidationError("no measures selected for heat maps");
  // Render everything before writing anything.
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  for (const auto& m : surface_measures) {
    files.emplace_back(suffixed(path, m), sweep_to_svg_heatmap(result, m));
  }
  std::vector<std::filesystem::path> written;
  for (const auto& [p, text] : files) {
    write_text_file(p, text);
    written.push_back(p);
  }
  return written;
}

// ---- fringe scans ---------------------------------------------------------

std::string scan_to_csv(const FringeScan& scan) {
  std::ostringstream os;
  if (scan.config) {
    const FringeConfig& c = *scan.config;
    os << "# alpha1_re=" << format_number(c.seeds.alpha1.real()) << "\n";
    os << "# alpha1_im=" << format_number(c.seeds.alpha1.imag()) << "\n";
    os << "# alpha2_re=" << format_number(c.seeds.alpha2.real()) << "\n";
    os << "# alpha2_im=" << format_number(c.seeds.alpha2.imag()) << "\n";
    os << "# pump_rate_scale=" << format_number(c.pump_rate_scale) << "\n";
    os << "# integration_time=" << format_number(c.integration_time) << "\n";
    os << "# phase_points=" << c.phase_points << "\n";
    os << "# rng_seed=" << c.rng_seed << "\n";
    os << "# noise=" << interferometer::to_string(c.noise) << "\n";
  }
  os << "# provenance=" << interferometer::to_string(scan.provenance) << "\n";
  os << "delta_theta,counts\n";
  for (const auto& p : scan.points) {
    os << format_number(p.delta_theta) << "," << format_number(p.counts) << "\n";
  }
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& cell, std::size_t line, const char* what) {
  const std::string t = trim(cell);
  if (t.empty()) throw ParseError(line, std::string("empty ") + what + " cell");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ParseError(line, std::string("non-numeric ") + what + " '" + t + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (t.empty() || t[0] == '-' || end != t.c_str() + t.size() || errno == ERANGE) {
    throw ParseError(line, "expected a non-negative integer, got '" + t + "'");
  }
  return v;
}

}  // namespace

FringeScan parse_scan_csv(std::istream& in) {
  FringeScan scan;
  scan.provenance = interferometer::Provenance::ingested;
  FringeConfig config;
  bool have_config = false;
  bool have_header = false;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty()) continue;
    if (text[0] == '#') {
      const std::string body = trim(text.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;  // free-form comment
      const std::string key = trim(body.substr(0, eq));
      const std::string value = trim(body.substr(eq + 1));
      auto num = [&] { return parse_double(value, line, key.c_str()); };
      if (key == "alpha1_re") config.seeds.alpha1.real(num());
      else if (key == "alpha1_im") config.seeds.alpha1.imag(num());
      else if (key == "alpha2_re") config.seeds.alpha2.real(num());
      else if (key == "alpha2_im") config.seeds.alpha2.imag(num());
      else if (key == "pump_rate_scale") config.pump_rate_scale = num();
      else if (key == "integration_time") config.integration_time = num();
      else if (key == "phase_points") config.phase_points = static_cast<int>(parse_uint(value, line));
      else if (key == "rng_seed") config.rng_seed = parse_uint(value, line);
      else if (key == "noise") {
        try {
          config.noise = interferometer::parse_noise_model(value);
        } catch (const ValidationError& e) {
          throw ParseError(line, e.what());
        }
      } else {
        continue;  // provenance and unknown keys are informational
      }
      have_config = true;
      continue;
    }
    if (!have_header) {
      if (text != "delta_theta,counts") {
        throw ParseError(line, "expected header 'delta_theta,counts', got '" + text + "'");
      }
      have_header = true;
      continue;
    }
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
      throw ParseError(line, "expected exactly two comma-separated cells");
    }
    const double theta = parse_double(text.substr(0, comma), line, "delta_theta");
    const double counts = parse_double(text.substr(comma + 1), line, "counts");
    if (theta < 0.0 || theta >= 2.0 * std::numbers::pi) {
      throw ParseError(line, "delta_theta outside [0, 2 pi)");
    }
    if (!scan.points.empty() && !(theta > scan.points.back().delta_theta)) {
      throw ParseError(line, "delta_theta is not strictly increasing");
    }
    if (counts < 0.0) throw ParseError(line, "negative counts");
    scan.points.push_back({theta, counts});
  }
  if (!have_header) throw ParseError(line == 0 ? 1 : line, "missing header 'delta_theta,counts'");
  if (scan.points.empty()) throw ParseError(line, "scan file has no data rows");
  if (have_config) scan.config = config;
  return scan;
}

FringeScan ingest_scan_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scan file " + path.string());
  return parse_scan_csv(in);
}

// ---- reports --------------------------------------------------------------

std::string measures_to_text(const analytic::ComplementarityMeasures& m) {
  std::ostringstream os;
  const std::array<std::pair<const char*, double>, 7> items{{{"D", m.D},
                                                             {"P", m.P},
                                                             {"E", m.E},
                                                             {"V", m.V},
                                                             {"C", m.C},
                                                             {"|F|", m.F_abs},
                                                             {"mu_s", m.mu_s}}};
  for (const auto& [name, value] : items) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%-5s = %.15f", name, value);
    os << buf.data() << "\n";
  }
  return os.str();
}

std::string fit_to_text(const interferometer::FringeFit& fit) {
  std::ostringstream os;
  std::array<char, 160> buf{};
  auto line = [&](const char* name, double v, double e) {
    std::snprintf(buf.data(), buf.size(), "%-10s = %.10g +/- %.3g\n", name, v, e);
    os << buf.data();
  };
  line("offset", fit.offset, fit.offset_err);
  line("amplitude", fit.amplitude, fit.amplitude_err);
  line("phase", fit.phase, fit.phase_err);
  line("coherence", fit.coherence, fit.coherence_err);
  std::snprintf(buf.data(), buf.size(), "%-10s = %.6g\n%-10s = %zu\n", "rms", fit.residual_rms,
                "points", fit.points);
  os << buf.data();
  return os.str();
}

std::string fit_to_json(const interferometer::FringeFit& fit) {
  nlohmann::ordered_json doc;
  doc["offset"] = fit.offset;
  doc["offset_err"] = fit.offset_err;
  doc["amplitude"] = fit.amplitude;
  doc["amplitude_err"] = fit.amplitude_err;
  doc["phase"] = fit.phase;
  doc["phase_err"] = fit.phase_err;
  doc["coherence"] = fit.coherence;
  doc["coherence_err"] = fit.coherence_err;
  doc["residual_rms"] = fit.residual_rms;
  doc["points"] = fit.points;
  return doc.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace duality::io
