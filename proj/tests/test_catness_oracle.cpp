#include <doctest.h>

#include <cmath>

#include "dpbulk/catness.hpp"
#include "dpbulk/constants.hpp"
#include "dpbulk/errors.hpp"

using namespace dpbulk;

namespace {
MassConfiguration single(double m, Vec3 r, double sigma) { return {{{r, m}}, sigma}; }
}  // namespace

// The oracle's unit tests run at spacing sigma/4 to stay fast; the acceptance
// suite repeats them at sigma/6.
TEST_CASE("quadrature oracle: coincident masses") {
  const double sigma = 1e-12;
  const auto a = single(1.0, {0, 0, 0}, sigma);
  auto grid = default_quadrature_grid(sigma);
  grid.spacing = sigma / 4.0;
  const auto q = catness_quadrature_oracle(a, a, grid);
  CHECK(q.u11 == doctest::Approx(-constants().G / (sigma * std::sqrt(pi))).epsilon(1e-4));
  CHECK(q.ell_g_sq == 0.0);
}

TEST_CASE("quadrature oracle: d = 4 sigma and d = 16 sigma against erf law") {
  const double sigma = 2e-12, m = 3e-23;
  auto grid = default_quadrature_grid(sigma);
  grid.spacing = sigma / 4.0;
  for (double dist : {4.0, 16.0}) {
    const auto a = single(m, {0, 0, 0}, sigma);
    const auto b = single(m, {dist * sigma, 0, 0}, sigma);
    const auto q = catness_quadrature_oracle(a, b, grid);
    const auto c = catness(a, b);
    CHECK(q.u12 == doctest::Approx(c.u12).epsilon(1e-4));
    CHECK(q.u11 == doctest::Approx(c.u11).epsilon(1e-4));
    CHECK(q.u22 == doctest::Approx(c.u22).epsilon(1e-4));
  }
}

TEST_CASE("quadrature oracle: multi-point configurations") {
  const double sigma = 1e-12;
  MassConfiguration f1{{{{0, 0, 0}, 2e-23}, {{1.5e-12, 0.5e-12, 0}, 3e-23}}, sigma};
  MassConfiguration f2{{{{0.3e-12, 0, 0}, 2e-23}, {{1.2e-12, 0.9e-12, -0.4e-12}, 3e-23}}, sigma};
  auto grid = default_quadrature_grid(sigma);
  grid.spacing = sigma / 4.0;
  const auto q = catness_quadrature_oracle(f1, f2, grid);
  const auto c = catness(f1, f2);
  CHECK(q.u12 == doctest::Approx(c.u12).epsilon(1e-4));
  CHECK(q.u11 == doctest::Approx(c.u11).epsilon(1e-4));
  // ell^2 is a small difference of large terms; compare on the scale of U
  CHECK(std::abs(q.ell_g_sq - c.ell_g_sq) < 1e-4 * std::abs(c.u11));
}

TEST_CASE("quadrature oracle rejects coarse grids and thin margins") {
  const double sigma = 1e-12;
  const auto a = single(1.0, {0, 0, 0}, sigma);
  QuadratureGrid coarse{sigma / 2.5, 6.0 * sigma};
  CHECK_THROWS_AS(catness_quadrature_oracle(a, a, coarse), ValidationError);
  QuadratureGrid thin{sigma / 6.0, 4.0 * sigma};
  CHECK_THROWS_AS(catness_quadrature_oracle(a, a, thin), ValidationError);
  QuadratureGrid huge{sigma / 6.0, 6.0 * sigma, 1000};
  CHECK_THROWS_AS(catness_quadrature_oracle(a, a, huge), ValidationError);
}
