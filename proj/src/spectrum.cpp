#include "pgbag/spectrum.hpp"

#include <future>

namespace pgbag {

Classification classify(std::span<const double> eigenvalues, const ModelParams& params) {
  Classification c;
  c.threshold = params.threshold();
  for (double e : eigenvalues)
    if (e < c.threshold) ++c.discrete_count;
  return c;
}

PhysicalEnergy physical_energy(double epsilon, const ModelParams& params) {
  PhysicalEnergy out;
  out.energy_squared = params.mass * params.mass +
                       params.mass * params.omega * (epsilon + params.lambda * (params.k - 1.0));
  if (out.energy_squared >= 0.0) out.energy = std::sqrt(out.energy_squared);
  return out;
}

std::vector<Level> energies(std::span<const double> eigenvalues, const ModelParams& params) {
  const double threshold = params.threshold();
  std::vector<Level> levels;
  levels.reserve(eigenvalues.size());
  for (std::size_t n = 0; n < eigenvalues.size(); ++n) {
    Level level;
    level.index = static_cast<int>(n);
    level.epsilon = eigenvalues[n];
    level.nu = nu_of(eigenvalues[n]);
    level.is_discrete = eigenvalues[n] < threshold;
    const auto e = physical_energy(eigenvalues[n], params);
    level.energy_squared = e.energy_squared;
    if (level.is_discrete) {
      level.energy = e.energy;
      level.supercritical = !e.energy.has_value();
    }
    levels.push_back(level);
  }
  return levels;
}

SpectrumResult solve(const ModelParams& params) {
  const auto h = hamiltonian<double>(params);
  const auto bounds = gershgorin_interval(h);

  SpectrumResult result;
  result.eigenvalues = eigenvalues_sym(h);
  const double slack = 1e-9 * std::max({1.0, std::abs(bounds.first), std::abs(bounds.second)});
  if (result.eigenvalues.front() < bounds.first - slack ||
      result.eigenvalues.back() > bounds.second + slack)
    throw std::runtime_error("eigenvalues fall outside the Gershgorin bounds");

  result.nu.reserve(result.eigenvalues.size());
  for (double e : result.eigenvalues) result.nu.push_back(nu_of(e));
  const auto c = classify(result.eigenvalues, params);
  result.threshold = c.threshold;
  result.discrete_count = c.discrete_count;
  result.levels = energies(result.eigenvalues, params);
  result.params = params;
  return result;
}

ScanParameter parse_scan_parameter(const std::string& name) {
  if (name == "k") return ScanParameter::k;
  if (name == "lambda") return ScanParameter::lambda;
  throw std::invalid_argument("scan parameter must be 'k' or 'lambda', got '" + name + "'");
}

const char* to_string(ScanParameter p) { return p == ScanParameter::k ? "k" : "lambda"; }

ModelParams with_parameter(const ModelParams& base, ScanParameter vary, double value) {
  ModelSpec spec;
  spec.lambda = base.lambda;
  spec.order = base.order;
  spec.size = base.size;
  if (vary == ScanParameter::k) {
    // Keep omega as the unit; the mass follows k.
    if (base.omega == 1.0) {
      spec.k = value;
    } else {
      spec.mass = value * base.omega;
      spec.omega = base.omega;
      if (!(value > 0.0)) throw std::invalid_argument("k must be positive");
    }
  } else {
    spec.mass = base.mass;
    spec.omega = base.omega;
    spec.lambda = value;
  }
  return make_params(spec);
}

std::vector<ScanPoint> scan(const ModelParams& base, ScanParameter vary,
                            std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("scan needs at least one value");
  std::vector<std::future<ScanPoint>> jobs;
  jobs.reserve(values.size());
  for (double v : values) {
    jobs.push_back(std::async(std::launch::async, [&base, vary, v] {
      ScanPoint point;
      point.value = v;
      try {
        point.result = solve(with_parameter(base, vary, v));
      } catch (const std::exception& e) {
        point.error = e.what();
      }
      return point;
    }));
  }
  std::vector<ScanPoint> out;
  out.reserve(jobs.size());
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

}  // namespace pgbag
