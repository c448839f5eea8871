#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "killingbeck/errors.hpp"

// Domain types and derived scales for a Dirac particle in the Killingbeck
// potential V(r) = a r^2 + b r - c/r under a uniform magnetic field B and an
// Aharonov-Bohm flux line, in natural units hbar = e = c = 1. Every quantity
// is a pure number; energies are conventionally labeled MeV.
//
// Two symmetry limits are supported. In the spin-symmetric limit the upper
// spinor component obeys a Schrodinger-like radial equation whose potential
// terms carry the factor 2(E+M); the pseudo-spin limit governs the lower
// component and swaps that factor to 2(E-M). All derived scales below take
// the mode's factor, written (E +/- M).

namespace kb {

inline constexpr double pi = std::numbers::pi;

enum class SymmetryMode { Spin, PseudoSpin };

// Which closed-form quantization condition to use. LiteralPaper is the
// published closed form exactly as printed (the form that reproduces the
// reference tables); DerivationConsistent is the same termination condition
// rebuilt from the scale definitions, with the flux-shifted m' carried
// through every term. The two coincide at zero flux.
enum class ResidualVariant { LiteralPaper, DerivationConsistent };

struct PotentialParams {
  double a = 0.0;          // quadratic strength
  double b = 0.0;          // linear strength
  double c_coulomb = 0.0;  // Coulomb strength (the -c/r term)
};

struct FieldConfig {
  double B = 0.0;       // uniform magnetic field, B >= 0
  double phi_AB = 0.0;  // Aharonov-Bohm flux through the origin
};

struct ParticleSpec {
  double M = 5.0;  // rest mass, > 0
  int m = 1;       // magnetic quantum number
  static constexpr double e = 1.0;        // charge, fixed by the unit system
  static constexpr double c_light = 1.0;  // speed of light, fixed
};

struct QuantumNumbers {
  int n = 1;  // radial quantum number, >= 0 (0 admitted for limit checks)
  int m = 1;  // magnetic quantum number
};

// Flux-shifted magnetic quantum number m' = m - phi/(2 pi). The flux enters
// the radial problem only through this combination.
inline double m_prime_of(int m, double phi_AB) { return m - phi_AB / (2.0 * pi); }

// (E+M) for spin symmetry, (E-M) for pseudo-spin symmetry.
inline double mass_factor(SymmetryMode mode, double E, double M) {
  return mode == SymmetryMode::Spin ? E + M : E - M;
}

// Scales of the dimensionless radial problem after the substitution
// chi = eps_B^{1/4} r. The product S = Q*c' is stored instead of Q itself:
// Q carries c' in a denominator and is singular at c = 0, but only Q*c'
// ever appears downstream, and it reduces algebraically to c' - P*b'.
struct DerivedScales {
  double omega_c;  // cyclotron frequency, = B with e = c = 1
  double m_prime;  // flux-shifted magnetic quantum number
  double eps_B;    // combined quadratic confinement 2a(E+/-M) + omega_c^2/4
  double zeta;     // E^2 - M^2 + m' omega_c / 2
  double b_prime;  // 2(E+/-M) b / eps_B^{3/4}
  double c_prime;  // 2(E+/-M) c / eps_B^{1/4}
  double S;        // regularized product Q*c' = c' - P*b'
  double P;        // index parameter m' + 1/2
};

inline DerivedScales derived_scales(const PotentialParams& pot, const FieldConfig& fld,
                                    const ParticleSpec& part, SymmetryMode mode, double E) {
  const double fac = mass_factor(mode, E, part.M);
  DerivedScales d{};
  d.omega_c = fld.B;
  d.m_prime = m_prime_of(part.m, fld.phi_AB);
  d.eps_B = 2.0 * pot.a * fac + d.omega_c * d.omega_c / 4.0;
  if (!(d.eps_B > 0.0))
    throw std::domain_error("derived_scales: eps_B <= 0 at trial energy (no confinement scale)");
  d.zeta = E * E - part.M * part.M + d.m_prime * d.omega_c / 2.0;
  const double q = std::pow(d.eps_B, 0.25);  // eps_B^{1/4}
  d.b_prime = 2.0 * fac * pot.b / (q * q * q);
  d.c_prime = 2.0 * fac * pot.c_coulomb / q;
  d.P = d.m_prime + 0.5;
  d.S = d.c_prime - d.P * d.b_prime;
  return d;
}

// The five bracket coefficients of the raw radial equation
//   f'' + [k2 - k_cent/r^2 + k_coul/r - k_lin r - k_quad r^2] f = 0.
// For pseudo-spin the potential terms carry 2(E-M) in place of 2(E+M); the
// template is otherwise identical, and k_quad always equals eps_B.
struct RadialCoefficients {
  double k2;      // constant term (equals zeta)
  double k_cent;  // centrifugal coefficient m'^2 - 1/4
  double k_coul;  // 1/r coefficient 2(E+/-M) c
  double k_lin;   // r coefficient 2(E+/-M) b
  double k_quad;  // r^2 coefficient 2a(E+/-M) + B^2/4
};

inline RadialCoefficients radial_coefficients(const PotentialParams& pot, const FieldConfig& fld,
                                              const ParticleSpec& part, SymmetryMode mode,
                                              double E) {
  const double fac = mass_factor(mode, E, part.M);
  const double mp = m_prime_of(part.m, fld.phi_AB);
  RadialCoefficients k{};
  k.k2 = E * E - part.M * part.M + mp * fld.B / 2.0;
  k.k_cent = mp * mp - 0.25;
  k.k_coul = 2.0 * fac * pot.c_coulomb;
  k.k_lin = 2.0 * fac * pot.b;
  k.k_quad = 2.0 * pot.a * fac + fld.B * fld.B / 4.0;
  return k;
}

}  // namespace kb
