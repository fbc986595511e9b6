#include "pgbag/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "CLI11.hpp"
#include "pgbag/oracle.hpp"
#include "pgbag/spectrum.hpp"

namespace pgbag::cli {

namespace {

constexpr const char* kModelFlags[] = {"--M", "--omega", "--k", "--lambda", "--r", "--N"};

void add_model_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--M", cfg.model.mass, "Particle mass (requires --omega)");
  sub->add_option("--omega", cfg.model.omega, "Oscillator frequency (requires --M)");
  sub->add_option("--k", cfg.model.k, "Ratio M/omega (omega defaults to 1)");
  sub->add_option("--lambda", cfg.model.lambda, "Depth parameter")->capture_default_str();
  sub->add_option("--r", cfg.model.order, "Polynomial order of the potential")
      ->capture_default_str();
  sub->add_option("--N", cfg.model.size, "Basis truncation size")->capture_default_str();
}

void add_output_options(CLI::App* sub, std::string& format, std::optional<int>& precision,
                        RunConfig& cfg) {
  sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", cfg.output, "Write to this file instead of standard output");
  sub->add_option("--precision", precision, "Significant digits (env PGBAG_PRECISION)")
      ->check(CLI::Range(1, 17));
}

int env_precision(int fallback) {
  const char* env = std::getenv("PGBAG_PRECISION");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 17)
    throw std::invalid_argument("PGBAG_PRECISION must be an integer in [1, 17]");
  return static_cast<int>(v);
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.subcommand) {
    case Subcommand::spectrum: {
      const auto params = make_params(cfg.model);
      for (const auto& w : params.warnings) err << "warning: " << w << '\n';
      emit(out, solve(params), cfg.emit);
      return kExitOk;
    }
    case Subcommand::scan:
    case Subcommand::figure: {
      ModelSpec base_spec = cfg.model;
      std::string vary = cfg.vary;
      std::vector<double> values = cfg.values;
      if (cfg.subcommand == Subcommand::figure) {
        const auto preset = figure_preset(cfg.figure);
        for (const auto& flag : cfg.model_flags_given)
          err << "warning: figure " << cfg.figure << " preset overrides " << flag << '\n';
        base_spec = preset.base;
        vary = preset.vary;
        values = preset.values;
      }
      const auto kind = parse_scan_parameter(vary);
      if (values.empty()) throw std::invalid_argument("scan needs at least one value");
      if (kind == ScanParameter::k && !base_spec.k && !base_spec.mass) base_spec.k = values.front();
      const auto base = make_params(base_spec);
      const auto points = scan(base, kind, values);
      std::size_t failures = 0;
      for (const auto& p : points) {
        if (p.result) continue;
        ++failures;
        err << "error: " << vary << " = " << p.value << ": " << p.error << '\n';
      }
      emit(out, base, kind, points, cfg.emit);
      return failures == points.size() ? kExitFailure : kExitOk;
    }
    case Subcommand::potential: {
      const auto params = make_params(cfg.model);
      const double half = cfg.half_domain.value_or(default_half_domain(params));
      emit(out, params, sample_potential(params, half, cfg.points), cfg.emit);
      return kExitOk;
    }
    case Subcommand::validate: {
      const auto params = make_params(cfg.model);
      emit(out, params, validate(params, cfg.n_max), cfg.emit);
      return kExitOk;
    }
  }
  return kExitFailure;
}

}  // namespace

FigurePreset figure_preset(int id) {
  FigurePreset p;
  p.base.order = 3;
  switch (id) {
    case 1:
    case 2:
    case 3:
      p.base.k = 11.0;
      p.base.lambda = -1.0;
      p.base.size = 50;
      p.vary = "k";
      p.values = {11.0, 21.0, 41.0, 61.0};
      break;
    case 4:
    case 5:
      p.base.k = 10.0;
      p.base.lambda = -7.0;
      p.base.size = 70;
      p.vary = "lambda";
      p.values = {-7.0, -10.0};
      break;
    default:
      throw std::invalid_argument("figure id must be in 1..5");
  }
  return p;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format;
  std::optional<int> precision;

  CLI::App app{"Spectrum of the pseudo-Gaussian well in an oscillator basis", "pgbag"};
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "Solve one model");
  add_model_options(spectrum, cfg);
  add_output_options(spectrum, format, precision, cfg);

  auto* scan_cmd = app.add_subcommand("scan", "Solve a sweep over k or lambda");
  add_model_options(scan_cmd, cfg);
  add_output_options(scan_cmd, format, precision, cfg);
  scan_cmd->add_option("--vary", cfg.vary, "Swept parameter")
      ->check(CLI::IsMember({"k", "lambda"}))
      ->capture_default_str();
  scan_cmd->add_option("--values", cfg.values, "Comma-separated values")
      ->delimiter(',')
      ->required();

  auto* figure = app.add_subcommand("figure", "Reproduce a figure preset");
  figure->add_option("id", cfg.figure, "Figure number")->required()->check(CLI::Range(1, 5));
  add_model_options(figure, cfg);
  add_output_options(figure, format, precision, cfg);

  auto* potential = app.add_subcommand("potential", "Sample W(xi) on a uniform grid");
  add_model_options(potential, cfg);
  add_output_options(potential, format, precision, cfg);
  potential->add_option("--L", cfg.half_domain, "Half-width of the sampled interval");
  potential->add_option("--points", cfg.points, "Number of samples")
      ->check(CLI::Range(2, 10000000))
      ->capture_default_str();

  auto* validate_cmd = app.add_subcommand("validate", "Check against both oracles");
  add_model_options(validate_cmd, cfg);
  add_output_options(validate_cmd, format, precision, cfg);
  validate_cmd->add_option("--n-max", cfg.n_max, "Largest basis index compared")
      ->check(CLI::Range(0, 200))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  const std::pair<CLI::App*, Subcommand> subs[] = {{spectrum, Subcommand::spectrum},
                                                   {scan_cmd, Subcommand::scan},
                                                   {figure, Subcommand::figure},
                                                   {potential, Subcommand::potential},
                                                   {validate_cmd, Subcommand::validate}};
  CLI::App* active = nullptr;
  for (const auto& [app_ptr, kind] : subs)
    if (app_ptr->parsed()) {
      active = app_ptr;
      cfg.subcommand = kind;
    }
  for (const char* flag : kModelFlags)
    if (active->count(flag) > 0) cfg.model_flags_given.emplace_back(flag);

  try {
    cfg.emit.format = format.empty()
                          ? (cfg.subcommand == Subcommand::validate ? Format::json : Format::csv)
                          : parse_format(format);
    cfg.emit.precision = precision ? *precision : env_precision(15);

    std::ofstream file;
    std::ostream* sink = &out;
    if (cfg.output) {
      file.open(*cfg.output, std::ios::binary | std::ios::trunc);
      if (!file) {
        err << "error: cannot open " << *cfg.output << " for writing\n";
        return kExitFailure;
      }
      sink = &file;
    }
    const int code = execute(cfg, *sink, err);
    sink->flush();
    if (!*sink) {
      err << "error: failed writing output\n";
      return kExitFailure;
    }
    return code;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace pgbag::cli
