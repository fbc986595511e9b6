#include "pgbag/model.hpp"

#include <cmath>
#include <algorithm>
#include <stdexcept>

namespace pgbag {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument(std::string(name) + " must be positive");
}

}  // namespace

ModelParams make_params(const ModelSpec& spec) {
  const bool physical = spec.mass.has_value() || spec.omega.has_value();
  if (physical && spec.k.has_value())
    throw std::invalid_argument("supply either M and omega, or k, not both");
  if (physical && !(spec.mass.has_value() && spec.omega.has_value()))
    throw std::invalid_argument("M and omega must be given together");
  if (!physical && !spec.k.has_value())
    throw std::invalid_argument("one of (M, omega) or k is required");

  ModelParams p;
  if (physical) {
    require_positive(*spec.mass, "M");
    require_positive(*spec.omega, "omega");
    p.mass = *spec.mass;
    p.omega = *spec.omega;
    p.k = p.mass / p.omega;
  } else {
    require_positive(*spec.k, "k");
    p.k = *spec.k;
    p.omega = 1.0;
    p.mass = p.k;
  }
  if (!std::isfinite(spec.lambda))
    throw std::invalid_argument("lambda must be finite");
  if (spec.order < 1)
    throw std::invalid_argument("r must be at least 1");
  if (spec.size < 2)
    throw std::invalid_argument("N must be at least 2");
  p.lambda = spec.lambda;
  p.order = spec.order;
  p.size = spec.size;

  if (p.lambda >= 0.0)
    p.warnings.emplace_back("lambda >= 0: the well has no attractive depth");
  else if (p.lambda != std::floor(p.lambda))
    p.warnings.emplace_back("non-integer lambda: outside the studied presets");
  if (p.threshold() <= 0.0)
    p.warnings.emplace_back("threshold <= 0, no discrete levels expected");
  return p;
}

std::vector<Rational> exact_coefficients(const Rational& lambda, const Rational& k, int order) {
  std::vector<Rational> c;
  c.reserve(order);
  Rational denom = 1;
  for (int i = 1; i <= order; ++i) {
    denom *= k * i;
    c.push_back((lambda + i) / denom);
  }
  return c;
}

CoefficientSet coefficients(const ModelParams& params) {
  CoefficientSet set;
  set.c.reserve(params.order);
  double denom = 1.0;
  for (int i = 1; i <= params.order; ++i) {
    denom *= params.k * i;
    set.c.push_back((params.lambda + i) / denom);
  }
  return set;
}

Potential::Potential(const ModelParams& params)
    : k_(params.k),
      lambda_(params.lambda),
      asymptote_(params.threshold()),
      c_(coefficients(params).c) {}

double Potential::operator()(double xi) const {
  const double xi2 = xi * xi;
  // Horner in xi^2: lambda + xi^2 (C_1 + xi^2 (C_2 + ...)).
  double poly = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) poly = (poly + *it) * xi2;
  poly += lambda_;
  return k_ * poly * std::exp(-xi2 / k_) + asymptote_;
}

double eval_w(const ModelParams& params, double xi) { return Potential(params)(xi); }

double eval_v(const ModelParams& params, double x) {
  const auto c = coefficients(params).c;
  const double mw = params.mass * params.omega;
  const double x2 = x * x;
  double poly = 0.0;
  for (int i = params.order; i >= 1; --i)
    poly = (poly + c[i - 1] * std::pow(mw, i)) * x2;
  poly += params.lambda;
  return params.mass * params.mass * poly * std::exp(-params.omega * params.omega * x2);
}

std::vector<Rational> taylor_coeffs(const Rational& lambda, const Rational& k, int order, int j_max) {
  if (j_max < 0) throw std::invalid_argument("j_max must be nonnegative");
  // C_0 := lambda so that the product of the polynomial with the
  // exponential series is one uniform convolution.
  std::vector<Rational> c{lambda};
  for (const auto& ci : exact_coefficients(lambda, k, order)) c.push_back(ci);

  // e_j = (-1)^j / (k^j j!), the exp(-xi^2/k) series.
  std::vector<Rational> e(j_max + 1);
  e[0] = 1;
  for (int j = 1; j <= j_max; ++j) e[j] = -e[j - 1] / (k * j);

  std::vector<Rational> t(j_max + 1);
  for (int j = 0; j <= j_max; ++j) {
    Rational sum = 0;
    for (int i = 0; i <= std::min(j, order); ++i) sum += c[i] * e[j - i];
    t[j] = k * sum;
  }
  t[0] -= lambda * (k - 1);
  return t;
}

std::vector<Rational> taylor_coeffs(const ModelParams& params, int j_max) {
  return taylor_coeffs(Rational(params.lambda), Rational(params.k), params.order, j_max);
}

}  // namespace pgbag
