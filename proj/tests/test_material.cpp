#include <doctest.h>

#include <cmath>
#include <cstring>

#include "dpbulk/constants.hpp"
#include "dpbulk/errors.hpp"
#include "dpbulk/material.hpp"

using namespace dpbulk;

TEST_CASE("constants are the CGS reference values") {
  const auto c = constants();
  CHECK(c.G == doctest::Approx(6.674e-8).epsilon(1e-4));
  CHECK(c.hbar == doctest::Approx(1.0546e-27).epsilon(1e-4));
  // hbar = h / 2 pi with h = 6.626e-27 erg s
  CHECK(c.hbar == doctest::Approx(6.62607015e-27 / (2.0 * pi)).epsilon(1e-9));
  CHECK(c.G * c.hbar == doctest::Approx(7.0385286782031e-35).epsilon(1e-12));

  const auto again = constants();
  CHECK(std::memcmp(&c, &again, sizeof c) == 0);
}

TEST_CASE("G hbar / sigma^3 at nuclear sigma") {
  const auto c = constants();
  const double sigma = 1e-12;
  CHECK(c.G * c.hbar / (sigma * sigma * sigma) == doctest::Approx(70.38).epsilon(1e-3));
}

TEST_CASE("derive_scales for a carbon-like nucleus") {
  Material mat{"c", 1.0, 2e-23, 4e-46, 1e-12, 1e5};
  const auto s = derive_scales(mat, NuclearDensity::Simple);
  // m / (4 pi sigma^2)^{3/2}, evaluated at 30 digits
  CHECK(s.f_nucl_simple == doctest::Approx(448967805312.916).epsilon(1e-12));
  CHECK(s.omega_G_nucl == doctest::Approx(354.286632426006).epsilon(1e-12));
  CHECK(s.lambda_dominance == doctest::Approx(282.257333039190).epsilon(1e-12));
  CHECK(s.heating_per_dof == doctest::Approx(6.61844093957391e-23).epsilon(1e-12));
  // omega^2 = 4 pi G f / 3
  CHECK(s.omega_G_nucl * s.omega_G_nucl ==
        doctest::Approx(4.0 * pi * constants().G * s.f_nucl_simple / 3.0).epsilon(1e-14));
}

TEST_CASE("single species: acoustic and simple nuclear densities coincide") {
  const double m = 3.1e-23;
  Material mat{"x", 2.0, m, m * m, 1e-12, 4e5};
  const auto a = derive_scales(mat, NuclearDensity::Acoustic);
  const auto b = derive_scales(mat, NuclearDensity::Simple);
  CHECK(a.f_nucl_acoustic == doctest::Approx(a.f_nucl_simple).epsilon(1e-15));
  CHECK(a.omega_G_nucl == doctest::Approx(b.omega_G_nucl).epsilon(1e-15));
}

TEST_CASE("mixture: acoustic/simple ratio is <m^2>/<m>^2") {
  const auto rock = material_preset("rock");
  const auto s = derive_scales(rock);
  const double ratio = rock.m_sq_av / (rock.m_av * rock.m_av);
  CHECK(ratio > 1.0);
  CHECK(s.f_nucl_acoustic / s.f_nucl_simple == doctest::Approx(ratio).epsilon(1e-14));
}

TEST_CASE("heating per dof at 1e3 rad/s") {
  CHECK(heating_per_dof(1e3) == doctest::Approx(5.272859085e-22).epsilon(1e-12));
}

TEST_CASE("sigma scaling: f ~ alpha^-3, omega ~ alpha^-3/2") {
  const auto base = material_preset("paper-default");
  const auto s0 = derive_scales(base);
  for (double alpha : {10.0, 100.0}) {
    auto scaled = base;
    scaled.sigma *= alpha;
    const auto s = derive_scales(scaled);
    CHECK(s.f_nucl_acoustic / s0.f_nucl_acoustic == doctest::Approx(std::pow(alpha, -3)).epsilon(1e-13));
    CHECK(s.omega_G_nucl / s0.omega_G_nucl == doctest::Approx(std::pow(alpha, -1.5)).epsilon(1e-13));
  }
}

TEST_CASE("derive_scales is pure") {
  const auto mat = material_preset("tungsten");
  const auto a = derive_scales(mat);
  const auto b = derive_scales(mat);
  CHECK(a.omega_G_nucl == b.omega_G_nucl);
  CHECK(a.f_nucl_acoustic == b.f_nucl_acoustic);
  CHECK(a.heating_per_dof == b.heating_per_dof);
}

TEST_CASE("presets") {
  const auto presets = material_presets();
  REQUIRE(presets.size() >= 3);
  for (const auto& m : presets) CHECK_NOTHROW(derive_scales(m));

  const auto def = material_preset("paper-default");
  CHECK(def.sigma == 1e-12);
  CHECK(def.c_l == 1e5);
  CHECK(def.mass_density == 1.0);
  CHECK(material_preset("rock").mass_density == 2.7);
  CHECK(material_preset("tungsten").mass_density == 19.3);

  const double heat = derive_scales(def).heating_per_dof;
  CHECK(heat >= 1e-22);
  CHECK(heat <= 1e-20);
  CHECK_THROWS_AS(material_preset("granite"), ValidationError);
}

TEST_CASE("material validation") {
  Material ok{"ok", 1.0, 2e-23, 4e-46, 1e-12, 1e5};
  CHECK_NOTHROW(validate(ok));
  for (double Material::*field : {&Material::mass_density, &Material::m_av, &Material::m_sq_av,
                                  &Material::sigma, &Material::c_l}) {
    Material bad = ok;
    bad.*field = 0.0;
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad.*field = -1.0;
    CHECK_THROWS_AS(derive_scales(bad), ValidationError);
  }
  Material cs = ok;
  cs.m_sq_av = 0.9 * ok.m_av * ok.m_av;
  CHECK_THROWS_AS(validate(cs), ValidationError);
  CHECK(nuclear_density_from_string("simple") == NuclearDensity::Simple);
  CHECK_THROWS_AS(nuclear_density_from_string("nuclear"), ValidationError);
}
