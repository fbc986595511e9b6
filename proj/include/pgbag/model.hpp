#ifndef PGBAG_MODEL_HPP
#define PGBAG_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pgbag {

using Rational = boost::multiprecision::cpp_rational;

/// Inputs for make_params(). Supply either (mass, omega) or k alone.
struct ModelSpec {
  std::optional<double> mass;
  std::optional<double> omega;
  std::optional<double> k;
  double lambda = -1.0;
  int order = 3;
  int size = 50;
};

/// Physical and numerical parameters of one (k, lambda)^r model.
///
/// Natural units with hbar = c = 1. `k` is the ratio mass/omega, `lambda`
/// sets the depth of the well, `order` is the polynomial order r of the
/// pseudo-Gaussian and `size` the truncation N of the oscillator basis.
struct ModelParams {
  double mass = 1.0;
  double omega = 1.0;
  double k = 1.0;
  double lambda = -1.0;
  int order = 3;
  int size = 50;
  /// Non-fatal remarks collected during validation (lambda >= 0, k <= 1, ...).
  std::vector<std::string> warnings;

  /// Separation value -lambda (k - 1) between discrete and continuum levels.
  double threshold() const { return -(lambda * (k - 1.0)); }
};

/// Validates a ModelSpec and fills in the derived quantities.
/// Throws std::invalid_argument on a domain violation.
ModelParams make_params(const ModelSpec& spec);

/// Coefficients C_1..C_r of the pseudo-Gaussian; c[i - 1] holds C_i.
struct CoefficientSet {
  std::vector<double> c;
};

CoefficientSet coefficients(const ModelParams& params);

/// C_i = (lambda + i) / (k^i i!) for i = 1..order, in exact arithmetic.
std::vector<Rational> exact_coefficients(const Rational& lambda, const Rational& k, int order);

/// W(xi) with the coefficients computed once; cheap to call in loops.
class Potential {
 public:
  explicit Potential(const ModelParams& params);
  double operator()(double xi) const;
  double asymptote() const { return asymptote_; }

 private:
  double k_;
  double lambda_;
  double asymptote_;
  std::vector<double> c_;
};

/// Scaled potential W(xi) = k (lambda + sum C_i xi^2i) exp(-xi^2/k) - lambda (k - 1).
double eval_w(const ModelParams& params, double xi);

/// Unscaled potential V(x) = M^2 (lambda + sum C'_i x^2i) exp(-omega^2 x^2),
/// with C'_i = C_i (M omega)^i so that W(sqrt(M omega) x) = V(x)/(M omega) - lambda (k - 1).
double eval_v(const ModelParams& params, double x);

/// Maclaurin coefficients t_0..t_{j_max} of W in powers of xi^2, exact.
/// Doubles are dyadic rationals, so the conversion of params.k and
/// params.lambda is exact.
std::vector<Rational> taylor_coeffs(const ModelParams& params, int j_max);
std::vector<Rational> taylor_coeffs(const Rational& lambda, const Rational& k, int order, int j_max);

}  // namespace pgbag

#endif  // PGBAG_MODEL_HPP
