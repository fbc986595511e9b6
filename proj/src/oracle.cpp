#include "pgbag/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <string>

#include "pgbag/spectrum.hpp"

namespace pgbag {

namespace {

GaussHermiteRule build_rule(int count) {
  // Golub-Welsch: the Jacobi matrix of the physicists' Hermite polynomials
  // has a zero diagonal and sqrt(j/2) on the off-diagonal.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(count);
  Eigen::VectorXd sub(std::max(count - 1, 0));
  for (int j = 1; j < count; ++j) sub[j - 1] = std::sqrt(j / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

  GaussHermiteRule rule;
  rule.nodes.resize(count);
  rule.scaled_weights.resize(count);
  for (int j = 0; j < count; ++j) {
    double x = solver.eigenvalues()[j];
    // Newton polish on u_count, with u_n' = sqrt(2n) u_{n-1} - x u_n.
    for (int it = 0; it < 4; ++it) {
      const auto u = hermite_fns(count, x);
      const double du = std::sqrt(2.0 * count) * u[count - 1] - x * u[count];
      if (du == 0.0) break;
      x -= u[count] / du;
    }
    const auto u = hermite_fns(count - 1, x);
    double s = 0.0;
    for (double v : u) s += v * v;
    rule.nodes[j] = x;
    rule.scaled_weights[j] = 1.0 / s;
  }
  return rule;
}

const GaussHermiteRule& cached_rule(int count) {
  static std::mutex mutex;
  static std::map<int, GaussHermiteRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(count);
  if (it == cache.end()) it = cache.emplace(count, build_rule(count)).first;
  return it->second;
}

// Symmetric tridiagonal matrix with constant off-diagonal.
struct Tridiagonal {
  std::vector<double> diag;
  double off = 0.0;

  // Number of eigenvalues strictly below x (Sturm sequence).
  int count_below(double x) const {
    const double off2 = off * off;
    const double tiny = std::numeric_limits<double>::min();
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      q = diag[i] - x - (i == 0 ? 0.0 : off2 / q);
      if (q == 0.0) q = -tiny;
      if (q < 0.0) ++count;
    }
    return count;
  }

  double lower_bound() const {
    return *std::min_element(diag.begin(), diag.end()) - 2.0 * std::abs(off);
  }

  // Lowest `levels` eigenvalues by bisection with shared brackets.
  std::vector<double> lowest(int levels, double upper) const {
    std::vector<double> lo(levels, lower_bound()), hi(levels, upper);
    for (int j = 0; j < levels; ++j) {
      while (true) {
        const double mid = 0.5 * (lo[j] + hi[j]);
        const double width = hi[j] - lo[j];
        if (width <= 4.0 * std::numeric_limits<double>::epsilon() *
                         std::max({1.0, std::abs(lo[j]), std::abs(hi[j])}) ||
            mid <= lo[j] || mid >= hi[j])
          break;
        const int c = count_below(mid);
        for (int l = j; l < levels; ++l) {
          if (c > l)
            hi[l] = std::min(hi[l], mid);
          else
            lo[l] = std::max(lo[l], mid);
        }
      }
    }
    std::vector<double> out(levels);
    for (int j = 0; j < levels; ++j) out[j] = 0.5 * (lo[j] + hi[j]);
    return out;
  }

  // Eigenvector for a converged eigenvalue by two steps of inverse iteration.
  std::vector<double> eigenvector(double eigenvalue) const {
    const std::size_t n = diag.size();
    const double tiny = 1e-300;
    std::vector<double> y(n, 1.0), c(n), d(n);
    for (int step = 0; step < 2; ++step) {
      // Thomas algorithm on (T - eigenvalue I) y_new = y.
      double pivot = diag[0] - eigenvalue;
      if (std::abs(pivot) < tiny) pivot = tiny;
      c[0] = off / pivot;
      d[0] = y[0] / pivot;
      for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - eigenvalue - off * c[i - 1];
        if (std::abs(pivot) < tiny) pivot = tiny;
        c[i] = off / pivot;
        d[i] = (y[i] - off * d[i - 1]) / pivot;
      }
      y[n - 1] = d[n - 1];
      for (std::size_t i = n - 1; i-- > 0;) y[i] = d[i] - c[i] * y[i + 1];
      double norm = 0.0;
      for (double v : y) norm = std::max(norm, std::abs(v));
      for (double& v : y) v /= norm;
    }
    return y;
  }
};

Tridiagonal discretize(const std::function<double(double)>& potential, double half_domain,
                       int points) {
  const double h = 2.0 * half_domain / (points - 1);
  Tridiagonal t;
  t.off = -1.0 / (h * h);
  t.diag.resize(points - 2);
  for (int i = 1; i <= points - 2; ++i)
    t.diag[i - 1] = 2.0 / (h * h) + potential(-half_domain + i * h);
  return t;
}

}  // namespace

GaussHermiteRule gauss_hermite(int count) {
  if (count < 1) throw std::invalid_argument("gauss_hermite: count must be positive");
  return cached_rule(count);
}

double quad_element(int n, int m, int moment, double u, int nodes) {
  if (!(u >= 0.0)) throw std::invalid_argument("quad_element: u must be nonnegative");
  if (n < 0 || m < 0 || moment < 0)
    throw std::invalid_argument("quad_element: indices must be nonnegative");
  const int count = nodes > 0 ? nodes : n + m + 2 * moment + 8;
  const auto& rule = cached_rule(count);
  const double s = std::sqrt(1.0 + u);
  const int top = std::max(n, m);
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const double xi = rule.nodes[j] / s;
    const auto h = hermite_fns(top, xi);
    const double xi2 = xi * xi;
    double power = 1.0;
    for (int i = 0; i < moment; ++i) power *= xi2;
    sum += rule.scaled_weights[j] * h[n] * h[m] * power * std::exp(-u * xi2);
  }
  return sum / s;
}

SymmetricMatrix<double> quad_hamiltonian(const ModelParams& params) {
  const int size = params.size;
  const double u = 1.0 / params.k;
  const auto c = coefficients(params).c;
  SymmetricMatrix<double> h(size, size);
  for (int n = 0; n < size; ++n) {
    for (int m = n; m < size; ++m) {
      double v = -quad_element(n, m, 1, 0.0);
      if (n == m) v += 2.0 * m + 1.0 + params.threshold();
      v += params.k * params.lambda * quad_element(n, m, 0, u);
      for (int i = 1; i <= params.order; ++i)
        v += params.k * c[i - 1] * quad_element(n, m, i, u);
      h(n, m) = v;
      h(m, n) = v;
    }
  }
  return h;
}

double default_half_domain(const ModelParams& params) {
  const Potential w(params);
  const double threshold = params.threshold();
  const double tol = 1e-10 * std::max(1.0, std::abs(threshold));
  const double step = 0.01 * std::max(1.0, std::sqrt(params.k) / 10.0);
  const auto excess = [&](double xi) { return std::abs(w(xi) - threshold); };

  // Far point inside the monotone Gaussian tail, then walk back in.
  double far = 8.0;
  while (far * far / params.k < 2.0 * params.order + 2.0 || excess(far) >= 1e-6 * tol) far *= 1.25;
  double xi = far;
  while (xi > 8.0 && excess(xi) < tol) xi -= step;
  if (xi <= 8.0 && excess(8.0) < tol) return 8.0;
  return std::max(8.0, xi + step);
}

int default_grid_points(double half_domain) {
  int points = static_cast<int>(std::ceil(2.0 * half_domain / 0.01)) + 1;
  points = std::max(points, 8001);
  return points % 2 == 0 ? points + 1 : points;
}

GridSpectrum grid_spectrum(const ModelParams& params, const GridOptions& options) {
  const bool model_potential = !options.potential;
  const double half_domain = options.half_domain.value_or(
      model_potential ? default_half_domain(params) : 8.0);
  if (!(half_domain > 0.0)) throw std::invalid_argument("grid half-domain must be positive");
  const int points = options.points.value_or(default_grid_points(half_domain));
  if (points < 201 || points % 2 == 0)
    throw std::invalid_argument("grid points must be odd and at least 201");
  const double threshold = params.threshold();
  const double cutoff = options.cutoff.value_or(threshold + 1.0);

  std::function<double(double)> potential = options.potential;
  if (model_potential) potential = Potential(params);

  const auto coarse_t = discretize(potential, half_domain, points);
  const auto fine_t = discretize(potential, half_domain, 2 * points - 1);
  int levels = std::min(coarse_t.count_below(cutoff), fine_t.count_below(cutoff));
  if (options.max_levels) levels = std::min(levels, std::max(*options.max_levels, 0));

  GridSpectrum out;
  out.half_domain = half_domain;
  out.points = points;
  out.discrete_count = fine_t.count_below(model_potential ? threshold : cutoff);
  out.coarse = coarse_t.lowest(levels, cutoff);
  out.fine = fine_t.lowest(levels, cutoff);
  for (int j = 0; j < levels; ++j) {
    out.eigenvalues.push_back((4.0 * out.fine[j] - out.coarse[j]) / 3.0);
    out.error_estimates.push_back(std::abs(out.fine[j] - out.coarse[j]) / 3.0);
  }

  // Bound levels must have decayed before the walls.
  const double bound_limit = model_potential ? threshold : cutoff;
  const double h = 2.0 * half_domain / (2 * points - 2);
  for (int j = 0; j < levels; ++j) {
    if (out.fine[j] >= bound_limit) continue;
    const auto y = fine_t.eigenvector(out.fine[j]);
    double total = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double xi = -half_domain + static_cast<double>(i + 1) * h;
      total += y[i] * y[i];
      if (std::abs(xi) > 0.9 * half_domain) edge += y[i] * y[i];
    }
    const double mass = edge / total;
    if (mass > options.boundary_mass_tolerance) {
      const double kappa = std::sqrt(std::max(potential(half_domain) - out.fine[j], 1e-4));
      const double suggested =
          half_domain + std::log(mass / options.boundary_mass_tolerance) / (2.0 * kappa) + 1.0;
      throw DomainTooSmall("grid domain too small: level " + std::to_string(j) +
                               " has boundary weight " + std::to_string(mass) + "; try L = " +
                               std::to_string(suggested),
                           suggested);
    }
  }
  return out;
}

ValidationReport validate(const ModelParams& params, int n_max) {
  if (n_max < 0) throw std::invalid_argument("validate: n_max must be nonnegative");
  ValidationReport report;

  const double u = 1.0 / params.k;
  const auto closed = moment_matrices<double>(u, n_max + 1, params.order);
  for (int i = 0; i <= params.order; ++i) {
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n)
      for (int m = 0; m <= n_max; ++m)
        worst = std::max(worst, std::abs(closed[i](n, m) - quad_element(n, m, i, u)));
    report.element_max_abs_diff.push_back(worst);
  }

  SpectrumResult spectral;
  try {
    spectral = solve(params);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("validate: spectral solve failed: ") + e.what());
  }
  report.discrete_count = spectral.discrete_count;
  const int compared = std::min(spectral.discrete_count, n_max + 1);

  GridOptions options;
  options.max_levels = std::max(compared, 1);
  GridSpectrum grid;
  for (int attempt = 0;; ++attempt) {
    try {
      grid = grid_spectrum(params, options);
      break;
    } catch (const DomainTooSmall& e) {
      if (attempt == 5) throw std::runtime_error(std::string("validate: ") + e.what());
      options.half_domain = e.suggested_half_domain;
    }
  }
  report.grid_meta.half_domain = grid.half_domain;
  report.grid_meta.points = grid.points;
  report.grid_meta.discrete_count = grid.discrete_count;

  const int available = std::min<int>(compared, static_cast<int>(grid.eigenvalues.size()));
  for (int j = 0; j < available; ++j) {
    report.spectral_diffs.push_back(std::abs(spectral.eigenvalues[j] - grid.eigenvalues[j]));
    report.grid_meta.convergence_estimate =
        std::max(report.grid_meta.convergence_estimate, grid.error_estimates[j]);
  }

  for (int j = 0; j < spectral.discrete_count; ++j) {
    const double nu = spectral.nu[j];
    report.nu_integer_distances.push_back(
        {std::abs(nu - std::round(nu)), std::abs(nu - (std::floor(nu) + 0.5))});
  }
  return report;
}

}  // namespace pgbag
