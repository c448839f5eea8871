#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "killingbeck/errors.hpp"
#include "killingbeck/model.hpp"

// Frobenius series engine for the confluent-Heun-type radial problem.
//
// The bound-state component is written
//   f(chi) = chi^{m'+1/2} exp(-chi(chi + b')/2) F(chi),
// and F is generated coefficient-by-coefficient from the three-term
// recurrence
//   C_{n+2} = ([S - b'(n+1)] C_{n+1} - (R - 2n) C_n) / ((n+2)(n+2P+1)),
// seeded with C_{-1} = 0, C_0 = 1. The recurrence annihilates, order by
// order, the series operator
//   L[F] = chi F'' + (2P + b' chi - 2 chi^2) F' + (R chi - S) F,
// which series_ode_residual evaluates directly for convergence checks.
//
// The series becomes a polynomial of degree n exactly when both R = 2n and
// C_{n+1} = 0 hold; termination_check reports the two conditions separately
// because the closed-form spectra impose only R = 2n.

namespace kb {

struct SeriesSolution {
  double P;       // index parameter m' + 1/2 (or m' + 3/2 for the lower component)
  double b_prime; // linear coefficient of the exponential ansatz
  double S;       // regularized product Q*c'
  double R;       // termination parameter
  std::vector<double> coeffs;  // C_0 .. C_N, coeffs[0] == 1
  int N = 0;                   // truncation order
};

struct TerminationReport {
  bool terminates = false;
  std::optional<int> degree;    // polynomial degree when terminating
  bool r_condition_met = false; // |R - 2n| <= tol
  bool c_condition_met = false; // |C_{n+1}| <= tol * max coefficient scale
  double c_np1_magnitude = 0.0;
};

inline constexpr int kDefaultTruncation = 200;
inline constexpr double kDefaultTerminationTol = 1e-10;

inline SeriesSolution series_coefficients(double P, double b_prime, double S, double R, int N) {
  if (N < 2) throw std::invalid_argument("series_coefficients: truncation order must be >= 2");
  SeriesSolution sol{P, b_prime, S, R, {}, N};
  sol.coeffs.resize(static_cast<std::size_t>(N) + 1);
  sol.coeffs[0] = 1.0;
  for (int n = -1; n <= N - 2; ++n) {
    const double denom = (n + 2.0) * (n + 2.0 * P + 1.0);
    if (std::abs(denom) < 1e-12)
      throw degenerate_index_error("series_coefficients: vanishing denominator, 2P hit a non-positive integer");
    const double c_n = (n >= 0) ? sol.coeffs[static_cast<std::size_t>(n)] : 0.0;
    const double c_n1 = sol.coeffs[static_cast<std::size_t>(n) + 1];
    const double next = ((S - b_prime * (n + 1.0)) * c_n1 - (R - 2.0 * n) * c_n) / denom;
    if (!std::isfinite(next))
      throw std::overflow_error("series_coefficients: coefficient overflow");
    sol.coeffs[static_cast<std::size_t>(n) + 2] = next;
  }
  return sol;
}

// First three coefficients in closed form, written independently of the
// recurrence loop so the two can cross-check each other.
struct FirstThree {
  double C1, C2, C3;
};

inline FirstThree closed_form_first_three(double P, double b_prime, double S, double R) {
  if (!(P > 0.0)) throw std::invalid_argument("closed_form_first_three: requires P > 0");
  const double C1 = S / (2.0 * P);
  const double C2 = ((S - b_prime) * (S / (2.0 * P)) - R) / (2.0 * (2.0 * P + 1.0));
  const double C3 = ((S - 2.0 * b_prime) * (((S - b_prime) * (S / (2.0 * P)) - R) / (2.0 * (2.0 * P + 1.0))) -
                     (R - 2.0) * (S / (2.0 * P))) /
                    (6.0 * (P + 1.0));
  return {C1, C2, C3};
}

inline TerminationReport termination_check(const SeriesSolution& sol, int n,
                                           double tol = kDefaultTerminationTol) {
  if (n < 0 || n + 1 > sol.N)
    throw std::invalid_argument("termination_check: need coefficients up to C_{n+1}");
  TerminationReport rep{};
  rep.r_condition_met = std::abs(sol.R - 2.0 * n) <= tol;
  double scale = 1.0;
  for (int k = 0; k <= n; ++k) scale = std::max(scale, std::abs(sol.coeffs[static_cast<std::size_t>(k)]));
  rep.c_np1_magnitude = std::abs(sol.coeffs[static_cast<std::size_t>(n) + 1]);
  rep.c_condition_met = rep.c_np1_magnitude <= tol * scale;
  rep.terminates = rep.r_condition_met && rep.c_condition_met;
  if (rep.terminates) rep.degree = n;
  return rep;
}

// Series evaluation result. A tripped flag is a warning, not a failure:
// the partial sum is still returned together with the size of the last
// retained term as a tail estimate.
struct SeriesEval {
  double value = 0.0;
  double tail_estimate = 0.0;
  bool truncated = false;  // last retained term exceeded 1e-12 of the sum
};

inline SeriesEval evaluate_series(const SeriesSolution& sol, double chi) {
  if (chi < 0.0) throw std::invalid_argument("evaluate_series: chi must be >= 0");
  // Renormalize by the largest coefficient so Horner never mixes extreme
  // magnitudes; the scale is restored at the end.
  double scale = 0.0;
  for (double c : sol.coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) scale = 1.0;
  double acc = 0.0;
  for (std::size_t k = sol.coeffs.size(); k-- > 0;) acc = acc * chi + sol.coeffs[k] / scale;
  SeriesEval ev{};
  ev.value = acc * scale;
  const double last = std::abs(sol.coeffs.back()) * std::pow(chi, static_cast<double>(sol.N));
  ev.tail_estimate = last;
  ev.truncated = last > 1e-12 * std::abs(ev.value);
  return ev;
}

// Residual of the series operator L (see header comment) on the truncated
// series at a point chi. Derivatives are taken analytically from the
// coefficients. For an exact polynomial solution this is zero up to
// rounding; for a truncated convergent series it shrinks as N grows.
inline double series_ode_residual(const SeriesSolution& sol, double chi) {
  // Horner accumulators; the guarded updates stop at k = 1 resp. k = 2, so
  // Fp and Fpp come out at the correct power of chi without any division.
  double F = 0.0, Fp = 0.0, Fpp = 0.0;
  for (std::size_t k = sol.coeffs.size(); k-- > 0;) {
    const double kk = static_cast<double>(k);
    F = F * chi + sol.coeffs[k];
    if (k >= 1) Fp = Fp * chi + kk * sol.coeffs[k];
    if (k >= 2) Fpp = Fpp * chi + kk * (kk - 1.0) * sol.coeffs[k];
  }
  return chi * Fpp + (2.0 * sol.P + sol.b_prime * chi - 2.0 * chi * chi) * Fp +
         (sol.R * chi - sol.S) * F;
}

enum class RadialKind { UpperSpin, LowerSpin, PseudoSpin };

// Series parameters appropriate to each component kind. The lower spin
// component carries an index shifted by one unit (prefactor exponent
// m'+3/2), which shifts P by one and S, R accordingly; the upper and
// pseudo-spin components use the scales as they come.
struct SeriesParams {
  double P, b_prime, S, R;
};

inline SeriesParams series_params_for(const DerivedScales& d, RadialKind kind) {
  const double R_upper = d.zeta / std::sqrt(d.eps_B) + d.b_prime * d.b_prime / 4.0 - 2.0 * d.P - 1.0;
  if (kind == RadialKind::LowerSpin) {
    const double P = d.P + 1.0;
    return {P, d.b_prime, d.c_prime - P * d.b_prime, R_upper - 2.0};
  }
  return {d.P, d.b_prime, d.S, R_upper};
}

struct ComponentEval {
  double value = 0.0;
  double tail_estimate = 0.0;
  bool truncated = false;
};

// Radial component value at scaled radius chi:
//   chi^{exponent} * exp(-chi(chi + b')/2) * F(chi),
// exponent = m'+1/2 for the upper and pseudo-spin components, m'+3/2 for
// the lower spin component. Requires the solution to have been built with
// the matching series_params_for parameters.
inline ComponentEval radial_component(const DerivedScales& d, const SeriesSolution& sol,
                                      RadialKind kind, double chi) {
  if (chi < 0.0) throw std::invalid_argument("radial_component: chi must be >= 0");
  const double exponent =
      kind == RadialKind::LowerSpin ? d.m_prime + 1.5 : d.m_prime + 0.5;
  const SeriesEval ev = evaluate_series(sol, chi);
  ComponentEval out{};
  out.tail_estimate = ev.tail_estimate;
  out.truncated = ev.truncated;
  if (chi == 0.0) {
    out.value = exponent > 0.0 ? 0.0 : (exponent == 0.0 ? ev.value : std::numeric_limits<double>::infinity());
    return out;
  }
  out.value = std::pow(chi, exponent) * std::exp(-chi * (chi + d.b_prime) / 2.0) * ev.value;
  return out;
}

}  // namespace kb
