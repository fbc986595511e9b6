#ifndef PGBAG_IO_HPP
#define PGBAG_IO_HPP

#include <ostream>
#include <string>
#include <vector>

#include "pgbag/model.hpp"
#include "pgbag/oracle.hpp"
#include "pgbag/spectrum.hpp"

namespace pgbag {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Format { csv, json };

Format parse_format(const std::string& name);

struct EmitOptions {
  Format format = Format::csv;
  int precision = 15;  // significant digits
};

/// printf-style %.{precision}g with a '.' decimal separator.
std::string format_number(double value, int precision);

struct PotentialSamples {
  std::vector<double> xi;
  std::vector<double> w;
};

/// W sampled on a uniform grid of `points` nodes over [-half_domain, half_domain].
PotentialSamples sample_potential(const ModelParams& params, double half_domain, int points);

// Each emit writes the complete document; the caller checks the stream.
void emit(std::ostream& out, const SpectrumResult& result, const EmitOptions& options);
void emit(std::ostream& out, const ModelParams& base, ScanParameter vary,
          const std::vector<ScanPoint>& points, const EmitOptions& options);
void emit(std::ostream& out, const ModelParams& params, const ValidationReport& report,
          const EmitOptions& options);
void emit(std::ostream& out, const ModelParams& params, const PotentialSamples& samples,
          const EmitOptions& options);

}  // namespace pgbag

#endif  // PGBAG_IO_HPP
