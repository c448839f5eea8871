#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "killingbeck/model.hpp"

using Catch::Approx;
using namespace kb;

// Reference numbers in this file were frozen from a 40-digit arbitrary
// precision evaluation of the same formulas.

TEST_CASE("flux-shifted magnetic quantum number") {
  CHECK(m_prime_of(1, 0.0) == 1.0);
  CHECK(m_prime_of(1, 2.0) == Approx(0.68169011381620932846).epsilon(1e-15));
  CHECK(m_prime_of(-2, 1.0) == Approx(-2.0 - 1.0 / (2.0 * pi)).epsilon(1e-15));

  SECTION("one flux quantum shifts m by one unit") {
    for (const double phi : {0.0, 0.5, 1.3, 2.6}) {
      for (const int m : {-1, 0, 1, 3}) {
        CHECK(m_prime_of(m, phi + 2.0 * pi) ==
              Approx(m_prime_of(m - 1, phi)).margin(1e-15));
      }
    }
  }
}

TEST_CASE("mass factor selects the symmetry limit") {
  CHECK(mass_factor(SymmetryMode::Spin, 5.3, 5.0) == Approx(10.3));
  CHECK(mass_factor(SymmetryMode::PseudoSpin, 5.3, 5.0) == Approx(0.3));
}

TEST_CASE("derived scales at a representative bound state") {
  // n=1, b=0.005, a=0.001, B=1.0 cell of the spin reference grid.
  const PotentialParams pot{0.001, 0.005, 0.0};
  const FieldConfig fld{1.0, 2.0};
  const ParticleSpec part{5.0, 1};
  const double E = 5.273485251;

  const DerivedScales d = derived_scales(pot, fld, part, SymmetryMode::Spin, E);
  CHECK(d.omega_c == 1.0);
  CHECK(d.m_prime == Approx(0.68169011381620932846).epsilon(1e-15));
  CHECK(d.eps_B == Approx(0.270546970502).epsilon(1e-12));
  CHECK(d.zeta == Approx(3.1504917494226377).epsilon(1e-13));
  CHECK(d.b_prime == Approx(0.27386453492894084425).epsilon(1e-13));
  CHECK(d.c_prime == 0.0);
  CHECK(d.P == Approx(d.m_prime + 0.5).epsilon(1e-15));
  // with no Coulomb term the regularized product reduces to -P b'
  CHECK(d.S == Approx(-d.P * d.b_prime).epsilon(1e-15));
}

TEST_CASE("derived scales reject a vanished confinement scale") {
  const PotentialParams pot{-0.1, 0.0, 0.0};
  const FieldConfig fld{0.0, 0.0};
  const ParticleSpec part{5.0, 1};
  CHECK_THROWS_AS(derived_scales(pot, fld, part, SymmetryMode::Spin, 5.1), std::domain_error);
}

TEST_CASE("radial coefficients") {
  const PotentialParams pot{0.003, 0.007, 0.2};
  const FieldConfig fld{1.2, 2.0};
  const ParticleSpec part{5.0, 1};
  const double E = 5.31;

  for (const SymmetryMode mode : {SymmetryMode::Spin, SymmetryMode::PseudoSpin}) {
    const RadialCoefficients k = radial_coefficients(pot, fld, part, mode, E);
    const double fac = mass_factor(mode, E, part.M);
    const double mp = m_prime_of(part.m, fld.phi_AB);
    CHECK(k.k_cent == Approx(mp * mp - 0.25).epsilon(1e-15));
    CHECK(k.k_coul == Approx(2.0 * fac * 0.2).epsilon(1e-15));
    CHECK(k.k_lin == Approx(2.0 * fac * 0.007).epsilon(1e-15));

    // the r^2 coefficient and the combined confinement scale are one and
    // the same quantity; the constant term equals zeta
    const DerivedScales d = derived_scales(pot, fld, part, mode, E);
    CHECK(k.k_quad == Approx(d.eps_B).epsilon(1e-15));
    CHECK(k.k2 == Approx(d.zeta).epsilon(1e-15));
  }
}

TEST_CASE("defaults match the reference-grid caption") {
  const ParticleSpec part{};
  CHECK(part.M == 5.0);
  CHECK(part.m == 1);
  CHECK(ParticleSpec::e == 1.0);
  CHECK(ParticleSpec::c_light == 1.0);
  const QuantumNumbers qn{};
  CHECK(qn.n == 1);
}
