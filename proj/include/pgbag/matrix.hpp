#ifndef PGBAG_MATRIX_HPP
#define PGBAG_MATRIX_HPP

// Operators in the harmonic-oscillator energy basis {|n>, n = 0, 1, ...}.
//
// Every matrix here is real, symmetric and even in xi, so entries with n + m
// odd vanish identically. Builders write each off-diagonal value once and
// mirror it; nothing is symmetrized after the fact.

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "pgbag/model.hpp"

namespace pgbag {

template <typename Scalar>
using SymmetricMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;

namespace detail {

inline void require_size(Index size) {
  if (size < 1) throw std::invalid_argument("matrix size must be at least 1");
}

// Three-band pattern shared by xi^2 and -d^2/dxi^2: diagonal n + 1/2 and
// +-sqrt((n+1)(n+2))/2 two places off the diagonal.
template <typename Scalar>
SymmetricMatrix<Scalar> ladder_band(Index size, Scalar off_sign) {
  require_size(size);
  SymmetricMatrix<Scalar> a = SymmetricMatrix<Scalar>::Zero(size, size);
  for (Index n = 0; n < size; ++n) {
    a(n, n) = Scalar(n) + Scalar(1) / 2;
    if (n + 2 < size) {
      using std::sqrt;
      const Scalar v = off_sign * sqrt(Scalar((n + 1) * (n + 2))) / 2;
      a(n, n + 2) = v;
      a(n + 2, n) = v;
    }
  }
  return a;
}

// Leading size x size block of `full`, taking the upper triangle as the
// authoritative half.
template <typename Scalar>
SymmetricMatrix<Scalar> symmetric_block(const SymmetricMatrix<Scalar>& full, Index size) {
  SymmetricMatrix<Scalar> a(size, size);
  for (Index n = 0; n < size; ++n)
    for (Index m = n; m < size; ++m) {
      a(n, m) = full(n, m);
      a(m, n) = full(n, m);
    }
  return a;
}

}  // namespace detail

/// <n| xi^2 |m>.
template <typename Scalar = double>
SymmetricMatrix<Scalar> xi2_matrix(Index size) {
  return detail::ladder_band<Scalar>(size, Scalar(1));
}

/// <n| -d^2/dxi^2 |m>.
template <typename Scalar = double>
SymmetricMatrix<Scalar> kinetic_matrix(Index size) {
  return detail::ladder_band<Scalar>(size, Scalar(-1));
}

/// <n| exp(-u xi^2) |m> for u >= 0.
///
/// Coefficient extraction from the generating functional
///   (1+u)^(-1/2) exp(alpha s t + beta (s^2 + t^2)),
///   alpha = 2/(1+u), beta = -u/(1+u),
/// gives
///   a[n][m] = sqrt(n! m! / 2^(n+m)) (1+u)^(-1/2)
///             sum_p alpha^p beta^((n-p)/2 + (m-p)/2) / (p! ((n-p)/2)! ((m-p)/2)!).
/// All terms of the sum share the sign (-1)^((m-n)/2), so it is accumulated
/// in magnitude with every term formed in the log domain; the factorials
/// overflow doubles long before n = 170 otherwise.
template <typename Scalar = double>
SymmetricMatrix<Scalar> gaussian_matrix(Scalar u, Index size) {
  detail::require_size(size);
  if (!(u >= Scalar(0))) throw std::invalid_argument("gaussian_matrix: u must be nonnegative");
  SymmetricMatrix<Scalar> a = SymmetricMatrix<Scalar>::Zero(size, size);
  if (u == Scalar(0)) {
    a.setIdentity();
    return a;
  }

  using Wide = std::conditional_t<std::is_same_v<Scalar, double>, long double, Scalar>;
  using std::exp;
  using std::lgamma;
  using std::log;
  const Wide w = u;
  const Wide log_alpha = log(Wide(2) / (1 + w));
  const Wide log_abs_beta = log(w / (1 + w));
  const Wide log_prefactor = -log(1 + w) / 2;
  const Wide log2 = log(Wide(2));

  std::vector<Wide> log_fact(size);
  for (Index n = 0; n < size; ++n) log_fact[n] = lgamma(Wide(n + 1));

  for (Index n = 0; n < size; ++n) {
    for (Index m = n; m < size; m += 2) {
      const Wide log_norm =
          (log_fact[n] + log_fact[m] - Wide(n + m) * log2) / 2 + log_prefactor;
      Wide sum = 0;
      for (Index p = n % 2; p <= n; p += 2) {
        const Index i = (n - p) / 2;
        const Index j = (m - p) / 2;
        sum += exp(Wide(p) * log_alpha + Wide(i + j) * log_abs_beta - log_fact[p] -
                   log_fact[i] - log_fact[j] + log_norm);
      }
      const Scalar v = static_cast<Scalar>(((m - n) / 2) % 2 == 0 ? sum : -sum);
      a(n, m) = v;
      a(m, n) = v;
    }
  }
  return a;
}

/// G_0..G_order with G_i[n][m] = <n| xi^(2i) exp(-u xi^2) |m>.
///
/// G_i = X2 G_(i-1) is formed at size + 2 order + extra_padding. X2 only
/// couples n to n and n +- 2, so each product loses exactly two trustworthy
/// rows and the leading size x size block of every G_i is exact.
template <typename Scalar = double>
std::vector<SymmetricMatrix<Scalar>> moment_matrices(Scalar u, Index size, int order,
                                                     Index extra_padding = 0) {
  detail::require_size(size);
  if (order < 0) throw std::invalid_argument("moment_matrices: order must be nonnegative");
  if (extra_padding < 0) throw std::invalid_argument("moment_matrices: negative padding");
  const Index padded = size + 2 * order + extra_padding;
  const SymmetricMatrix<Scalar> x2 = xi2_matrix<Scalar>(padded);
  SymmetricMatrix<Scalar> g = gaussian_matrix<Scalar>(u, padded);

  std::vector<SymmetricMatrix<Scalar>> out;
  out.reserve(order + 1);
  out.push_back(detail::symmetric_block(g, size));
  for (int i = 1; i <= order; ++i) {
    g = (x2 * g).eval();
    out.push_back(detail::symmetric_block(g, size));
  }
  return out;
}

/// Truncated N x N matrix of -d^2/dxi^2 + W(xi), u = 1/k:
///   H = K + k lambda G_0 + k sum_i C_i G_i - lambda (k - 1) I.
template <typename Scalar = double>
SymmetricMatrix<Scalar> hamiltonian(const ModelParams& params) {
  const Index n = params.size;
  const Scalar k = params.k;
  const Scalar lambda = params.lambda;
  const auto g = moment_matrices<Scalar>(Scalar(1) / k, n, params.order);
  const auto c = coefficients(params).c;

  SymmetricMatrix<Scalar> h = kinetic_matrix<Scalar>(n);
  h += (k * lambda) * g[0];
  for (int i = 1; i <= params.order; ++i) h += (k * Scalar(c[i - 1])) * g[i];
  h.diagonal().array() += Scalar(params.threshold());
  return h;
}

}  // namespace pgbag

#endif  // PGBAG_MATRIX_HPP
