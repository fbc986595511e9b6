#ifndef PGBAG_SPECTRUM_HPP
#define PGBAG_SPECTRUM_HPP

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pgbag/matrix.hpp"
#include "pgbag/model.hpp"

namespace pgbag {

template <typename Scalar>
void require_symmetric(const SymmetricMatrix<Scalar>& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("matrix is not square");
  using std::abs;
  const Scalar scale = h.cwiseAbs().maxCoeff();
  const Scalar asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > Scalar(1e-12) * (scale > Scalar(0) ? scale : Scalar(1)))
    throw std::invalid_argument("matrix is not symmetric");
}

template <typename Scalar>
struct EigenPairs {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;  // ascending
  SymmetricMatrix<Scalar> vectors;                   // column j pairs with values[j]
};

/// Full eigendecomposition of a dense symmetric matrix (Householder
/// tridiagonalization followed by implicit symmetric QR).
template <typename Scalar>
EigenPairs<Scalar> eigenpairs_sym(const SymmetricMatrix<Scalar>& h) {
  require_symmetric(h);
  Eigen::SelfAdjointEigenSolver<SymmetricMatrix<Scalar>> solver(h, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Ascending eigenvalues of a dense symmetric matrix.
template <typename Scalar>
std::vector<Scalar> eigenvalues_sym(const SymmetricMatrix<Scalar>& h) {
  require_symmetric(h);
  Eigen::SelfAdjointEigenSolver<SymmetricMatrix<Scalar>> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  const auto& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

/// Union of the Gershgorin discs of a symmetric matrix, as [lo, hi].
template <typename Scalar>
std::pair<Scalar, Scalar> gershgorin_interval(const SymmetricMatrix<Scalar>& h) {
  Scalar lo = h(0, 0), hi = h(0, 0);
  for (Index i = 0; i < h.rows(); ++i) {
    const Scalar radius = h.row(i).cwiseAbs().sum() - std::abs(h(i, i));
    lo = std::min(lo, h(i, i) - radius);
    hi = std::max(hi, h(i, i) + radius);
  }
  return {lo, hi};
}

/// Pseudoquantum number: epsilon = 2 nu + 1.
inline double nu_of(double epsilon) { return (epsilon - 1.0) / 2.0; }

struct Classification {
  int discrete_count = 0;
  double threshold = 0.0;
};

/// Counts eigenvalues strictly below -lambda (k - 1). Expects ascending input.
Classification classify(std::span<const double> eigenvalues, const ModelParams& params);

struct PhysicalEnergy {
  double energy_squared = 0.0;
  std::optional<double> energy;  // empty when energy_squared < 0
};

/// E^2 = M^2 + M omega (epsilon + lambda (k - 1)).
PhysicalEnergy physical_energy(double epsilon, const ModelParams& params);

struct Level {
  int index = 0;
  double epsilon = 0.0;
  double nu = 0.0;
  bool is_discrete = false;
  double energy_squared = 0.0;
  std::optional<double> energy;  // discrete, non-supercritical levels only
  bool supercritical = false;    // discrete level with E^2 < 0
};

/// One record per eigenvalue; energies are filled for discrete levels.
std::vector<Level> energies(std::span<const double> eigenvalues, const ModelParams& params);

struct SpectrumResult {
  std::vector<double> eigenvalues;
  std::vector<double> nu;
  double threshold = 0.0;
  int discrete_count = 0;
  std::vector<Level> levels;
  ModelParams params;
};

SpectrumResult solve(const ModelParams& params);

enum class ScanParameter { k, lambda };

ScanParameter parse_scan_parameter(const std::string& name);
const char* to_string(ScanParameter p);

/// Copy of `base` with one parameter replaced; revalidated.
ModelParams with_parameter(const ModelParams& base, ScanParameter vary, double value);

struct ScanPoint {
  double value = 0.0;
  std::optional<SpectrumResult> result;
  std::string error;  // set when result is empty
};

/// Solves each point (concurrently); output order follows `values`.
std::vector<ScanPoint> scan(const ModelParams& base, ScanParameter vary,
                            std::span<const double> values);

}  // namespace pgbag

#endif  // PGBAG_SPECTRUM_HPP
