#ifndef PGBAG_ORACLE_HPP
#define PGBAG_ORACLE_HPP

// Independent checks for the basis machinery:
//   - Gauss-Hermite quadrature of single matrix elements (checks `matrix`),
//   - a finite-difference eigensolver on a box (checks `spectrum`).
// Neither path shares code with the closed-form builders.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pgbag/matrix.hpp"
#include "pgbag/model.hpp"

namespace pgbag {

/// u_0(xi)..u_{n_max}(xi), the normalized oscillator eigenfunctions, by the
/// three-term recurrence on the functions themselves.
template <typename Scalar = double>
std::vector<Scalar> hermite_fns(int n_max, Scalar xi) {
  if (n_max < 0) throw std::invalid_argument("hermite_fns: n must be nonnegative");
  using std::exp;
  using std::sqrt;
  std::vector<Scalar> u(n_max + 1);
  u[0] = exp(-xi * xi / 2) / sqrt(sqrt(std::numbers::pi_v<Scalar>));
  if (n_max >= 1) u[1] = sqrt(Scalar(2)) * xi * u[0];
  for (int n = 1; n < n_max; ++n)
    u[n + 1] = sqrt(Scalar(2) / Scalar(n + 1)) * xi * u[n] - sqrt(Scalar(n) / Scalar(n + 1)) * u[n - 1];
  return u;
}

template <typename Scalar = double>
Scalar hermite_fn(int n, Scalar xi) {
  return hermite_fns<Scalar>(n, xi).back();
}

/// Gauss-Hermite rule for weight exp(-x^2). `scaled_weights[j]` holds
/// w_j exp(x_j^2), which stays O(1) at the outermost nodes.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> scaled_weights;
};

GaussHermiteRule gauss_hermite(int count);

/// <n| xi^(2 moment) exp(-u xi^2) |m> by quadrature after xi = eta / sqrt(1 + u).
/// `nodes` = 0 selects n + m + 2 moment + 8.
double quad_element(int n, int m, int moment, double u, int nodes = 0);

/// Hamiltonian assembled entry by entry from quad_element; the kinetic part
/// uses -u_m'' = (2m + 1 - xi^2) u_m.
SymmetricMatrix<double> quad_hamiltonian(const ModelParams& params);

/// Thrown when a bound grid eigenfunction still has weight near the walls.
class DomainTooSmall : public std::runtime_error {
 public:
  DomainTooSmall(const std::string& what, double suggested)
      : std::runtime_error(what), suggested_half_domain(suggested) {}
  double suggested_half_domain;
};

struct GridOptions {
  std::optional<double> half_domain;  // default: default_half_domain()
  std::optional<int> points;          // odd, >= 201; default keeps h <= 0.01, at least 8001
  std::optional<int> max_levels;      // cap on the number of levels returned
  std::optional<double> cutoff;       // default threshold + 1
  std::function<double(double)> potential;  // replaces W when set
  double boundary_mass_tolerance = 1e-8;
};

struct GridSpectrum {
  std::vector<double> eigenvalues;      // Richardson-corrected
  std::vector<double> coarse;           // `points` nodes
  std::vector<double> fine;             // 2 points - 1 nodes
  std::vector<double> error_estimates;  // |fine - coarse| / 3
  double half_domain = 0.0;
  int points = 0;
  int discrete_count = 0;  // fine-grid levels below the threshold
};

/// Smallest L >= 8 beyond which |W(xi) + lambda (k - 1)| < 1e-10 max(1, |threshold|).
double default_half_domain(const ModelParams& params);

int default_grid_points(double half_domain);

/// Eigenvalues of -d^2/dxi^2 + W(xi) on [-L, L], Dirichlet walls, second
/// order central differences, with a two-grid Richardson correction.
GridSpectrum grid_spectrum(const ModelParams& params, const GridOptions& options = {});

struct NuDistance {
  double integer = 0.0;
  double half_integer = 0.0;
};

struct GridMeta {
  double half_domain = 0.0;
  int points = 0;
  double convergence_estimate = 0.0;
  int discrete_count = 0;
};

struct ValidationReport {
  std::vector<double> element_max_abs_diff;  // index = moment order i
  std::vector<double> spectral_diffs;        // per discrete level
  GridMeta grid_meta;
  std::vector<NuDistance> nu_integer_distances;
  int discrete_count = 0;
};

/// Runs both oracles: elements for n, m <= n_max and the lowest
/// min(D, n_max + 1) discrete levels.
ValidationReport validate(const ModelParams& params, int n_max);

}  // namespace pgbag

#endif  // PGBAG_ORACLE_HPP
