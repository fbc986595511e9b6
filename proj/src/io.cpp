#include "pgbag/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "json.hpp"

namespace pgbag {

namespace {

using Json = nlohmann::ordered_json;

// Value rounded to `precision` significant digits; the JSON writer then
// prints the shortest representation of that double.
double rounded(double value, int precision) {
  return std::strtod(format_number(value, precision).c_str(), nullptr);
}

Json params_json(const ModelParams& p, int precision) {
  return Json{{"M", rounded(p.mass, precision)},
              {"omega", rounded(p.omega, precision)},
              {"k", rounded(p.k, precision)},
              {"lambda", rounded(p.lambda, precision)},
              {"r", p.order},
              {"N", p.size}};
}

Json meta_json(const ModelParams& p) {
  return Json{{"tool", "pgbag"},
              {"version", kToolVersion},
              {"N", p.size},
              {"padding", 2 * p.order},
              {"warnings", p.warnings}};
}

Json level_json(const Level& level, int precision) {
  Json j{{"n", level.index},
         {"epsilon", rounded(level.epsilon, precision)},
         {"nu", rounded(level.nu, precision)},
         {"is_discrete", level.is_discrete}};
  j["E"] = level.energy ? Json(rounded(*level.energy, precision)) : Json(nullptr);
  j["supercritical"] = level.supercritical;
  return j;
}

void write_level_row(std::ostream& out, const Level& level, int precision) {
  out << level.index << ',' << format_number(level.epsilon, precision) << ','
      << format_number(level.nu, precision) << ',' << (level.is_discrete ? "true" : "false")
      << ',' << (level.energy ? format_number(*level.energy, precision) : std::string()) << ','
      << (level.supercritical ? "true" : "false") << '\n';
}

constexpr const char* kLevelHeader = "n,epsilon,nu,is_discrete,E,supercritical";

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw std::invalid_argument("format must be 'csv' or 'json', got '" + name + "'");
}

std::string format_number(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

PotentialSamples sample_potential(const ModelParams& params, double half_domain, int points) {
  if (points < 2) throw std::invalid_argument("potential sampling needs at least 2 points");
  if (!(half_domain > 0.0)) throw std::invalid_argument("L must be positive");
  const Potential w(params);
  PotentialSamples s;
  s.xi.reserve(points);
  s.w.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double xi = -half_domain + 2.0 * half_domain * i / (points - 1);
    s.xi.push_back(xi);
    s.w.push_back(w(xi));
  }
  return s;
}

void emit(std::ostream& out, const SpectrumResult& result, const EmitOptions& options) {
  const int prec = options.precision;
  if (options.format == Format::csv) {
    out << kLevelHeader << '\n';
    for (const auto& level : result.levels) write_level_row(out, level, prec);
    return;
  }
  Json levels = Json::array();
  for (const auto& level : result.levels) levels.push_back(level_json(level, prec));
  Json doc{{"params", params_json(result.params, prec)},
           {"threshold", rounded(result.threshold, prec)},
           {"discrete_count", result.discrete_count},
           {"levels", std::move(levels)},
           {"meta", meta_json(result.params)}};
  out << doc.dump(2) << '\n';
}

void emit(std::ostream& out, const ModelParams& base, ScanParameter vary,
          const std::vector<ScanPoint>& points, const EmitOptions& options) {
  const int prec = options.precision;
  if (options.format == Format::csv) {
    out << "vary_value," << kLevelHeader << '\n';
    for (const auto& point : points) {
      if (!point.result) continue;
      for (const auto& level : point.result->levels) {
        out << format_number(point.value, prec) << ',';
        write_level_row(out, level, prec);
      }
    }
    return;
  }
  Json results = Json::array();
  for (const auto& point : points) {
    Json entry{{"vary_value", rounded(point.value, prec)}};
    if (!point.result) {
      entry["error"] = point.error;
      results.push_back(std::move(entry));
      continue;
    }
    entry["threshold"] = rounded(point.result->threshold, prec);
    entry["discrete_count"] = point.result->discrete_count;
    Json levels = Json::array();
    for (const auto& level : point.result->levels)
      levels.push_back(level_json(level, prec));
    entry["levels"] = std::move(levels);
    results.push_back(std::move(entry));
  }
  Json doc{{"params", params_json(base, prec)},
           {"vary", to_string(vary)},
           {"results", std::move(results)},
           {"meta", meta_json(base)}};
  out << doc.dump(2) << '\n';
}

void emit(std::ostream& out, const ModelParams& params, const ValidationReport& report,
          const EmitOptions& options) {
  const int prec = options.precision;
  if (options.format == Format::csv) {
    out << "quantity,index,value\n";
    for (std::size_t i = 0; i < report.element_max_abs_diff.size(); ++i)
      out << "element_max_abs_diff," << i << ','
          << format_number(report.element_max_abs_diff[i], prec) << '\n';
    for (std::size_t j = 0; j < report.spectral_diffs.size(); ++j)
      out << "spectral_diff," << j << ',' << format_number(report.spectral_diffs[j], prec)
          << '\n';
    for (std::size_t j = 0; j < report.nu_integer_distances.size(); ++j) {
      out << "nu_integer_distance," << j << ','
          << format_number(report.nu_integer_distances[j].integer, prec) << '\n';
      out << "nu_half_integer_distance," << j << ','
          << format_number(report.nu_integer_distances[j].half_integer, prec) << '\n';
    }
    out << "grid_l,," << format_number(report.grid_meta.half_domain, prec) << '\n';
    out << "grid_points,," << report.grid_meta.points << '\n';
    out << "grid_convergence_estimate,,"
        << format_number(report.grid_meta.convergence_estimate, prec) << '\n';
    out << "grid_discrete_count,," << report.grid_meta.discrete_count << '\n';
    out << "discrete_count,," << report.discrete_count << '\n';
    return;
  }
  Json elements = Json::array();
  for (double v : report.element_max_abs_diff) elements.push_back(rounded(v, prec));
  Json spectral = Json::array();
  for (double v : report.spectral_diffs) spectral.push_back(rounded(v, prec));
  Json nu = Json::array();
  for (const auto& d : report.nu_integer_distances)
    nu.push_back(
        Json{{"integer", rounded(d.integer, prec)}, {"half_integer", rounded(d.half_integer, prec)}});
  Json doc{{"params", params_json(params, prec)},
           {"element_max_abs_diff", std::move(elements)},
           {"spectral_diffs", std::move(spectral)},
           {"grid_meta",
            Json{{"l", rounded(report.grid_meta.half_domain, prec)},
                 {"points", report.grid_meta.points},
                 {"convergence_estimate", rounded(report.grid_meta.convergence_estimate, prec)},
                 {"discrete_count", report.grid_meta.discrete_count}}},
           {"nu_integer_distances", std::move(nu)},
           {"discrete_count", report.discrete_count},
           {"meta", meta_json(params)}};
  out << doc.dump(2) << '\n';
}

void emit(std::ostream& out, const ModelParams& params, const PotentialSamples& samples,
          const EmitOptions& options) {
  const int prec = options.precision;
  if (options.format == Format::csv) {
    out << "xi,W\n";
    for (std::size_t i = 0; i < samples.xi.size(); ++i)
      out << format_number(samples.xi[i], prec) << ',' << format_number(samples.w[i], prec)
          << '\n';
    return;
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < samples.xi.size(); ++i)
    rows.push_back(Json{{"xi", rounded(samples.xi[i], prec)}, {"W", rounded(samples.w[i], prec)}});
  Json doc{{"params", params_json(params, prec)},
           {"threshold", rounded(params.threshold(), prec)},
           {"samples", std::move(rows)},
           {"meta", meta_json(params)}};
  out << doc.dump(2) << '\n';
}

}  // namespace pgbag
