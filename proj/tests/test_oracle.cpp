#include "doctest.h"

#include <cmath>
#include <numbers>

#include "pgbag/matrix.hpp"
#include "pgbag/oracle.hpp"
#include "pgbag/spectrum.hpp"

using namespace pgbag;

namespace {

ModelParams ratio(double k, double lambda, int n = 50, int r = 3) {
  return make_params({.k = k, .lambda = lambda, .order = r, .size = n});
}

GridOptions oscillator_hook(double half_domain, int points) {
  GridOptions o;
  o.half_domain = half_domain;
  o.points = points;
  o.cutoff = 40.0;
  o.max_levels = 6;
  o.potential = [](double xi) { return xi * xi; };
  return o;
}

}  // namespace

TEST_CASE("hermite functions") {
  CHECK(hermite_fn(0, 0.0) == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-15));
  CHECK(hermite_fn(1, 0.0) == 0.0);
  CHECK(hermite_fn(4, 1.3) == doctest::Approx(hermite_fn(4, -1.3)).epsilon(1e-15));
  CHECK(hermite_fn(5, 1.3) == doctest::Approx(-hermite_fn(5, -1.3)).epsilon(1e-15));

  // Normalization by a plain trapezoid sum (spectrally accurate for these).
  for (int n : {0, 3, 10}) {
    double sum = 0.0;
    const double h = 0.01;
    for (int i = -2000; i <= 2000; ++i) sum += std::pow(hermite_fn(n, i * h), 2) * h;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(quad_element(3, 3, 0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(hermite_fns(-1, 0.0), std::invalid_argument);
}

TEST_CASE("Gauss-Hermite rule integrates even moments exactly") {
  for (int count : {1, 5, 20, 80}) {
    const auto rule = gauss_hermite(count);
    for (int j = 0; j < count; ++j) {
      const double moment_order = 2.0 * j;
      double sum = 0.0;
      for (int i = 0; i < count; ++i)
        sum += rule.scaled_weights[i] * std::exp(-rule.nodes[i] * rule.nodes[i]) *
               std::pow(rule.nodes[i], moment_order);
      const double want = std::tgamma(j + 0.5);
      CHECK(sum == doctest::Approx(want).epsilon(1e-12));
      if (j >= 6) break;
    }
  }
  CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
}

TEST_CASE("quad_element") {
  for (double u : {0.0, 0.1, 1.0 / 11, 2.0}) {
    CHECK(quad_element(0, 0, 0, u) == doctest::Approx(1.0 / std::sqrt(1 + u)).epsilon(1e-14));
    CHECK(quad_element(0, 0, 1, u) == doctest::Approx(0.5 * std::pow(1 + u, -1.5)).epsilon(1e-14));
    CHECK(std::abs(quad_element(1, 0, 0, u)) < 1e-15);
  }
  CHECK(quad_element(4, 4, 0, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(quad_element(4, 2, 0, 0.0)) < 1e-14);
  CHECK_THROWS_AS(quad_element(0, 0, 0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(quad_element(-1, 0, 0, 0.5), std::invalid_argument);

  SUBCASE("plateau past the exactness bound") {
    for (auto [n, m, i] : {std::tuple{30, 30, 3}, {12, 8, 2}, {5, 1, 0}}) {
      const double u = 1.0 / 11;
      const int exact = (n + m + 2 * i) / 2 + 1;
      const double base = quad_element(n, m, i, u, exact);
      for (int extra : {1, 8, 30})
        CHECK(std::abs(quad_element(n, m, i, u, exact + extra) - base) < 1e-13 * std::max(1.0, std::abs(base)));
    }
  }
}

TEST_CASE("quadrature-assembled hamiltonian has the same spectrum") {
  for (auto [k, lambda] : {std::pair{11.0, -1.0}, {10.0, -7.0}}) {
    const auto p = ratio(k, lambda, 30);
    const auto closed = eigenvalues_sym(hamiltonian(p));
    const auto quad = eigenvalues_sym(quad_hamiltonian(p));
    for (std::size_t n = 0; n < closed.size(); ++n) CHECK(std::abs(closed[n] - quad[n]) < 1e-9);
  }
}

TEST_CASE("grid oracle on the oscillator hook") {
  const auto p = ratio(11.0, -1.0);
  const auto g = grid_spectrum(p, oscillator_hook(10.0, 4001));
  REQUIRE(g.eigenvalues.size() == 6);
  CHECK(std::abs(g.eigenvalues[0] - 1.0) < 1e-6);
  CHECK(std::abs(g.eigenvalues[5] - 11.0) < 1e-5);

  SUBCASE("second-order convergence") {
    const auto finer = grid_spectrum(p, oscillator_hook(10.0, 8001));
    for (int n = 0; n < 6; ++n) {
      const double ratio = g.error_estimates[n] / finer.error_estimates[n];
      CHECK(ratio == doctest::Approx(4.0).epsilon(0.01));
    }
  }
  SUBCASE("too small a box is rejected with a suggestion") {
    try {
      grid_spectrum(p, oscillator_hook(3.0, 2001));
      FAIL("expected DomainTooSmall");
    } catch (const DomainTooSmall& e) {
      CHECK(e.suggested_half_domain > 3.0);
      // Following the suggestions reaches a box that holds every level.
      double half = e.suggested_half_domain;
      bool held = false;
      for (int attempt = 0; attempt < 5 && !held; ++attempt) {
        try {
          grid_spectrum(p, oscillator_hook(half, 4001));
          held = true;
        } catch (const DomainTooSmall& again) {
          CHECK(again.suggested_half_domain > half);
          half = again.suggested_half_domain;
        }
      }
      CHECK(held);
    }
  }
}

TEST_CASE("grid options are validated") {
  const auto p = ratio(11.0, -1.0);
  CHECK_THROWS_AS(grid_spectrum(p, {.points = 8000}), std::invalid_argument);
  CHECK_THROWS_AS(grid_spectrum(p, {.points = 101}), std::invalid_argument);
  CHECK_THROWS_AS(grid_spectrum(p, {.half_domain = -1.0}), std::invalid_argument);
}

TEST_CASE("default half-domain follows the asymptote rule") {
  for (auto [k, lambda] : {std::pair{11.0, -1.0}, {61.0, -1.0}, {10.0, -10.0}, {1.0, -1.0}, {1e4, -1.0}}) {
    const auto p = ratio(k, lambda);
    const double half = default_half_domain(p);
    CHECK(half >= 8.0);
    const double tol = 1e-10 * std::max(1.0, std::abs(p.threshold()));
    for (double xi = half; xi < 4.0 * half; xi += half / 200)
      CHECK(std::abs(eval_w(p, xi) - p.threshold()) < tol);
  }
  CHECK(default_half_domain(ratio(1.0, -1.0)) == 8.0);
  CHECK(default_grid_points(19.0) == 8001);
  CHECK(default_grid_points(100.0) % 2 == 1);
}

TEST_CASE("validate at k = 11") {
  const auto r = validate(ratio(11.0, -1.0), 30);
  REQUIRE(r.element_max_abs_diff.size() == 4);
  CHECK(r.element_max_abs_diff[0] < 1e-10);
  for (double d : r.element_max_abs_diff) CHECK(d < 1e-8);
  CHECK(r.discrete_count == 6);
  CHECK(r.grid_meta.discrete_count == 6);
  REQUIRE(r.spectral_diffs.size() == 6);
  for (double d : r.spectral_diffs) {
    CHECK(std::isfinite(d));
    CHECK(d >= 0.0);
    CHECK(d < 1e-4);
  }
  CHECK(r.grid_meta.half_domain >= default_half_domain(ratio(11.0, -1.0)));
  CHECK(r.grid_meta.convergence_estimate > 0.0);
  REQUIRE(r.nu_integer_distances.size() == 6);
  for (const auto& d : r.nu_integer_distances) {
    CHECK(d.integer >= 0.0);
    CHECK(d.integer <= 0.5);
    CHECK(d.half_integer <= 0.5);
    CHECK(d.integer + d.half_integer == doctest::Approx(0.5));
  }
}

TEST_CASE("validate at k = 1 grows the box for the weakly bound level") {
  const auto r = validate(ratio(1.0, -1.0), 10);
  CHECK(r.discrete_count == 1);
  CHECK(r.grid_meta.discrete_count == 1);
  CHECK(r.grid_meta.half_domain > 8.0);
  REQUIRE(r.spectral_diffs.size() == 1);
  CHECK(r.spectral_diffs[0] < 1e-3);
}

TEST_CASE("validate in the oscillator limit") {
  const auto p = ratio(1e4, -1.0);
  const auto r = validate(p, 30);
  REQUIRE(r.spectral_diffs.size() == 31);
  for (double d : r.spectral_diffs) CHECK(d < 1e-2);
  const auto s = solve(p);
  for (int n = 0; n <= 8; ++n) CHECK(std::abs(s.eigenvalues[n] - 2.0 * n) < 1e-2);
}
