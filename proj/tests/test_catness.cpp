#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dpbulk/catness.hpp"
#include "dpbulk/constants.hpp"
#include "dpbulk/errors.hpp"
#include "dpbulk/gaussian_dynamics.hpp"
#include "dpbulk/material.hpp"

using namespace dpbulk;

namespace {

// (2/pi) int_0^inf exp(-k^2) sin(k d)/(k d) dk, sigma = 1: the Fourier-space
// pair integral, evaluated once with 30-digit quadrature and frozen here.
constexpr double kFourierPair0 = 0.564189583547756286948;
constexpr double kFourierPair1 = 0.520499877813046537683;
constexpr double kFourierPair4 = 0.248830566254738183541;

MassConfiguration single(double m, Vec3 r, double sigma) { return {{{r, m}}, sigma}; }

MassConfiguration random_configuration(std::mt19937_64& rng, double sigma, double m) {
  std::uniform_int_distribution<int> count(1, 5);
  std::uniform_real_distribution<double> pos(-3.0 * sigma, 3.0 * sigma);
  std::uniform_real_distribution<double> mass(0.5 * m, 2.0 * m);
  MassConfiguration cfg;
  cfg.sigma = sigma;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) cfg.points.push_back({{pos(rng), pos(rng), pos(rng)}, mass(rng)});
  return cfg;
}

}  // namespace

TEST_CASE("pair potential: coincident unit masses") {
  const double sigma = 1e-12;
  const auto a = single(1.0, {0, 0, 0}, sigma);
  const double u = pair_potential(a, a);
  CHECK(u == doctest::Approx(-constants().G / (sigma * std::sqrt(pi))).epsilon(1e-15));
  CHECK(u == doctest::Approx(-constants().G * kFourierPair0 / sigma).epsilon(1e-13));
  CHECK(u == doctest::Approx(-3.765e4).epsilon(1e-3));
}

TEST_CASE("pair potential: far masses reduce to plain Newton") {
  const auto a = single(1.0, {0, 0, 0}, 1e-12);
  const auto b = single(1.0, {1.0, 0, 0}, 1e-12);
  CHECK(pair_potential(a, b) == doctest::Approx(-6.6743e-8).epsilon(1e-12));
}

TEST_CASE("pair potential: erf law against the Fourier-space integral") {
  const double m = 2e-23, sigma = 1e-12, G = constants().G;
  const auto a = single(m, {0, 0, 0}, sigma);
  const auto b1 = single(m, {sigma, 0, 0}, sigma);
  const auto b4 = single(m, {0, 0, 4.0 * sigma}, sigma);
  CHECK(pair_potential(a, b1) == doctest::Approx(-G * m * m * kFourierPair1 / sigma).epsilon(1e-13));
  CHECK(pair_potential(a, b4) == doctest::Approx(-G * m * m * kFourierPair4 / sigma).epsilon(1e-13));
  CHECK(std::erf(0.5) == doctest::Approx(0.5205).epsilon(1e-4));
}

TEST_CASE("pair potential: regularized below 1e-6 sigma, continuous across it") {
  const double sigma = 1e-12;
  const double below = smeared_pair_energy(1.0, 1.0, 0.5e-6 * sigma, sigma);
  const double above = smeared_pair_energy(1.0, 1.0, 2e-6 * sigma, sigma);
  CHECK(std::isfinite(below));
  CHECK(above == doctest::Approx(below).epsilon(1e-11));
}

TEST_CASE("pair potential errors") {
  const auto a = single(1.0, {0, 0, 0}, 1e-12);
  const auto b = single(1.0, {0, 0, 0}, 2e-12);
  CHECK_THROWS_AS(pair_potential(a, b), ValidationError);
  CHECK_THROWS_AS(pair_potential(a, MassConfiguration{{}, 1e-12}), ValidationError);
  CHECK_THROWS_AS(catness(a, single(-1.0, {0, 0, 0}, 1e-12)), ValidationError);
}

TEST_CASE("catness of identical configurations is zero") {
  const auto a = MassConfiguration{{{{0, 0, 0}, 1.0}, {{3e-12, 0, 1e-12}, 2.0}}, 1e-12};
  const auto r = catness(a, a);
  CHECK(r.ell_g_sq == 0.0);
  CHECK(std::isinf(r.tau_g));
}

TEST_CASE("catness of a displaced nucleus") {
  const double m = 2e-23, sigma = 1e-12;
  const auto r = catness(single(m, {0, 0, 0}, sigma), single(m, {sigma, 0, 0}, sigma));
  CHECK(r.ell_g_sq == doctest::Approx(2.33278562388139e-42).epsilon(1e-9));
  CHECK(r.tau_g == doctest::Approx(4.52065464654810e14).epsilon(1e-9));
  CHECK(r.ell_g_sq == -r.u11 - r.u22 + 2.0 * r.u12);
}

TEST_CASE("small-displacement law G m^2 d^2 / (6 sqrt(pi) sigma^3)") {
  const double m = 2e-23, sigma = 1e-12, G = constants().G;
  for (double frac : {0.01, 0.003, 0.001}) {
    const double d = frac * sigma;
    const auto r = catness(single(m, {0, 0, 0}, sigma), single(m, {d, 0, 0}, sigma));
    const double law = G * m * m * d * d / (6.0 * std::sqrt(pi) * sigma * sigma * sigma);
    CHECK(r.ell_g_sq / law == doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("rigid lattice displacement: ell^2/(M d^2) -> acoustic omega_G^2") {
  const double sigma = 1e-12, spacing = 50.0 * sigma;
  const double m1 = 28.0 * units::amu, m2 = 16.0 * units::amu;
  MassConfiguration lattice{{}, sigma};
  double M = 0.0, M2 = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const double m = (i + j + k) % 2 ? m1 : m2;
        lattice.points.push_back({{i * spacing, j * spacing, k * spacing}, m});
        M += m;
        M2 += m * m;
      }
  const double d = 0.01 * sigma;
  const auto r = catness(lattice, translated(lattice, {d / std::sqrt(3.0), d / std::sqrt(3.0), d / std::sqrt(3.0)}));
  const double n = static_cast<double>(lattice.points.size());
  Material mat{"lattice", 1.0, M / n, M2 / n, sigma, 1e5};
  const double w = derive_scales(mat, NuclearDensity::Acoustic).omega_G_nucl;
  CHECK(r.ell_g_sq / (M * d * d) == doctest::Approx(w * w).epsilon(0.01));
}

TEST_CASE("catness decay time against the c.o.m. coherence decay rate") {
  const double m = 2e-23, sigma = 1e-12;
  Material mat{"n", 1.0, m, m * m, sigma, 1e5};
  const double w = derive_scales(mat, NuclearDensity::Acoustic).omega_G_nucl;
  for (double frac : {0.01, 0.001}) {
    const double d = frac * sigma;
    const auto r = catness(single(m, {0, 0, 0}, sigma), single(m, {0, d, 0}, sigma));
    CHECK(com_superposition_decay_rate(m, w, d) * r.tau_g == doctest::Approx(0.5).epsilon(0.01));
  }
}

TEST_CASE("catness properties over random configurations") {
  std::mt19937_64 rng(20140425);
  const double sigma = 1e-12, m = 2e-23;
  std::uniform_real_distribution<double> shift(-2.0 * sigma, 2.0 * sigma);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto f1 = random_configuration(rng, sigma, m);
    const auto f2 = random_configuration(rng, sigma, m);
    const auto r = catness(f1, f2);
    CHECK(r.ell_g_sq >= -1e-12 * (std::abs(r.u11) + std::abs(r.u22)));
    CHECK(catness(f2, f1).ell_g_sq == r.ell_g_sq);
    if (trial % 10 == 0) {
      const Vec3 v{shift(rng), shift(rng), shift(rng)};
      const auto t = catness(translated(f1, v), translated(f2, v));
      CHECK(t.u11 == doctest::Approx(r.u11).epsilon(1e-12));
      CHECK(t.u22 == doctest::Approx(r.u22).epsilon(1e-12));
      CHECK(t.u12 == doctest::Approx(r.u12).epsilon(1e-12));
    }
  }
}
