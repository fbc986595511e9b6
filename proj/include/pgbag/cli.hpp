#ifndef PGBAG_CLI_HPP
#define PGBAG_CLI_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pgbag/io.hpp"
#include "pgbag/model.hpp"

namespace pgbag::cli {

enum class Subcommand { spectrum, scan, figure, potential, validate };

/// Parsed command line.
struct RunConfig {
  Subcommand subcommand = Subcommand::spectrum;
  ModelSpec model;
  std::string vary = "k";
  std::vector<double> values;
  int figure = 1;
  std::optional<double> half_domain;  // potential
  int points = 801;                   // potential
  int n_max = 30;                     // validate
  EmitOptions emit;
  std::optional<std::string> output;
  std::vector<std::string> model_flags_given;  // for preset conflict warnings
};

/// Figure preset: a fixed scan over k or lambda.
struct FigurePreset {
  ModelSpec base;
  std::string vary;
  std::vector<double> values;
};

FigurePreset figure_preset(int id);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Parses and executes; data goes to `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgbag::cli

#endif  // PGBAG_CLI_HPP
