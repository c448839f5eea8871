#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "killingbeck/errors.hpp"
#include "killingbeck/heun.hpp"
#include "killingbeck/model.hpp"
#include "killingbeck/tables.hpp"

// Quantization-condition residuals and the bracketing root finder.
//
// Bound energies are the zeros of a transcendental residual in E built from
// the series termination parameter R = 2n. Two algebraic variants of that
// residual are implemented (see ResidualVariant in model.hpp); both are
// smooth in E wherever eps_B(E) > 0, so roots are isolated by a uniform
// scan and refined by bisection. The pseudo-spin mode additionally exposes
// the as-printed published sum as a diagnostic; it vanishes nowhere near
// the reference energies and is never used for root finding.

namespace kb {

struct SolverConfig {
  PotentialParams pot{};
  FieldConfig fields{};
  ParticleSpec part{};
  QuantumNumbers qn{};
  SymmetryMode mode = SymmetryMode::Spin;
  ResidualVariant variant = ResidualVariant::LiteralPaper;
  double E_min = 5.0;
  double E_max = 6.5;
  double scan_step = 0.0;     // 0 = auto: (E_max - E_min)/2000
  double refine_tol = 1e-12;  // absolute bracket width in E
};

struct EnergyLevel {
  double E = 0.0;
  double residual = 0.0;   // residual value at E
  double bracket_lo = 0.0; // enclosing interval, endpoints of opposite sign
  double bracket_hi = 0.0;
  QuantumNumbers qn{};
  SymmetryMode mode = SymmetryMode::Spin;
  ResidualVariant variant = ResidualVariant::LiteralPaper;
};

namespace detail {

// Shared flux bracket of the published closed form: the term multiplying
// -2 sqrt(eps) is ((1 + sqrt(arg))/2 + n + 1/2) with an E-independent
// square-root argument. The argument must be non-negative.
inline double literal_sqrt_arg(int m, double phi) {
  return 1.0 - 4.0 * (0.25 - static_cast<double>(m) * m - phi * phi / (4.0 * pi * pi) +
                      phi / (2.0 * pi));
}

}  // namespace detail

// Spin-symmetry residual. LiteralPaper: the published closed form verbatim,
// with its flux terms written in m and phi separately. DerivationConsistent:
// the same R = 2n condition cleared of denominators, with the flux-shifted
// m' carried through every term.
inline double residual_spin(double E, const SolverConfig& cfg) {
  const double M = cfg.part.M;
  const double B = cfg.fields.B;
  const double phi = cfg.fields.phi_AB;
  const double fac = E + M;
  const double eps = 2.0 * cfg.pot.a * fac + B * B / 4.0;
  if (!(eps > 0.0)) throw std::domain_error("residual_spin: eps_B <= 0 at trial energy");
  const double bb = fac * fac * cfg.pot.b * cfg.pot.b / eps;
  if (cfg.variant == ResidualVariant::LiteralPaper) {
    const double arg = detail::literal_sqrt_arg(cfg.part.m, phi);
    if (arg < 0.0) throw std::domain_error("residual_spin: negative square-root argument");
    const double bracket = (1.0 + std::sqrt(arg)) / 2.0 + cfg.qn.n + 0.5;
    return -2.0 * std::sqrt(eps) * bracket + E * E - M * M + cfg.part.m * B / 2.0 -
           B * phi / (2.0 * pi) + bb;
  }
  const double mp = m_prime_of(cfg.part.m, phi);
  const double zeta = E * E - M * M + mp * B / 2.0;
  return zeta + bb - 2.0 * std::sqrt(eps) * (cfg.qn.n + mp + 1.0);
}

// Pseudo-spin residual. LiteralPaper is the table-matching form: the spin
// closed form with eps_B -> 2a(E-M) + B^2/4 and (E+M)^2 b^2 -> (E-M)^2 b^2,
// the flux terms unchanged. DerivationConsistent mirrors the spin variant
// with the swapped mass factor.
inline double residual_pspin(double E, const SolverConfig& cfg) {
  const double M = cfg.part.M;
  const double B = cfg.fields.B;
  const double phi = cfg.fields.phi_AB;
  const double fac = E - M;
  const double eps = 2.0 * cfg.pot.a * fac + B * B / 4.0;
  if (!(eps > 0.0)) throw std::domain_error("residual_pspin: eps_B <= 0 at trial energy");
  const double bb = fac * fac * cfg.pot.b * cfg.pot.b / eps;
  if (cfg.variant == ResidualVariant::LiteralPaper) {
    const double arg = detail::literal_sqrt_arg(cfg.part.m, phi);
    if (arg < 0.0) throw std::domain_error("residual_pspin: negative square-root argument");
    const double bracket = (1.0 + std::sqrt(arg)) / 2.0 + cfg.qn.n + 0.5;
    return -2.0 * std::sqrt(eps) * bracket + E * E - M * M + cfg.part.m * B / 2.0 -
           B * phi / (2.0 * pi) + bb;
  }
  const double mp = m_prime_of(cfg.part.m, phi);
  const double zeta = E * E - M * M + mp * B / 2.0;
  return zeta + bb - 2.0 * std::sqrt(eps) * (cfg.qn.n + mp + 1.0);
}

// The pseudo-spin condition exactly as printed in the published source: a
// plain sum that stays of order 10 at every reference energy. Exposed as a
// diagnostic to document that it cannot be the table-generating condition;
// never used for root finding.
inline double pspin_printed_sum(double E, const SolverConfig& cfg) {
  const double M = cfg.part.M;
  const double B = cfg.fields.B;
  const double phi = cfg.fields.phi_AB;
  const double fac = E - M;
  const double eps = 2.0 * cfg.pot.a * fac + B * B / 4.0;
  if (!(eps > 0.0)) throw std::domain_error("pspin_printed_sum: eps_B <= 0 at trial energy");
  const double zeta_part = E * E - M * M + cfg.part.m * B / 2.0 - B * phi / (2.0 * pi);
  return 2.0 * cfg.qn.n + 2.0 + 2.0 * cfg.part.m - phi / pi + zeta_part / std::sqrt(eps) -
         fac * fac * cfg.pot.b * cfg.pot.b / (std::sqrt(eps) * eps);
}

inline double residual(double E, const SolverConfig& cfg) {
  return cfg.mode == SymmetryMode::Spin ? residual_spin(E, cfg) : residual_pspin(E, cfg);
}

struct ScanDiagnostics {
  double residual_min = std::numeric_limits<double>::infinity();
  double residual_max = -std::numeric_limits<double>::infinity();
  int points_evaluated = 0;
  int points_skipped = 0;  // scan nodes rejected by a domain error
};

struct LevelScan {
  std::vector<EnergyLevel> levels;  // ascending in E; empty means no root found
  ScanDiagnostics diag;
};

// Scans [E_min, E_max] on a uniform grid, skipping nodes where the residual
// is out of domain, and bisects every sign change until the bracket is
// narrower than refine_tol or the residual magnitude drops below 1e-12.
// Roots that refine to the same energy within refine_tol are merged.
inline LevelScan find_levels(const SolverConfig& cfg) {
  if (!(cfg.E_min < cfg.E_max)) throw std::invalid_argument("find_levels: E_min must be < E_max");
  if (cfg.scan_step < 0.0 || !(cfg.refine_tol > 0.0))
    throw std::invalid_argument("find_levels: bad scan_step or refine_tol");
  const double width = cfg.E_max - cfg.E_min;
  const int cells = cfg.scan_step > 0.0
                        ? std::max(1, static_cast<int>(std::ceil(width / cfg.scan_step)))
                        : 2000;

  LevelScan out{};
  std::vector<double> val(static_cast<std::size_t>(cells) + 1);
  std::vector<char> ok(static_cast<std::size_t>(cells) + 1, 0);
  for (int i = 0; i <= cells; ++i) {
    const double E = cfg.E_min + width * i / cells;
    try {
      val[static_cast<std::size_t>(i)] = residual(E, cfg);
      ok[static_cast<std::size_t>(i)] = 1;
      out.diag.points_evaluated++;
      out.diag.residual_min = std::min(out.diag.residual_min, val[static_cast<std::size_t>(i)]);
      out.diag.residual_max = std::max(out.diag.residual_max, val[static_cast<std::size_t>(i)]);
    } catch (const std::domain_error&) {
      out.diag.points_skipped++;
    }
  }
  if (out.diag.points_evaluated == 0)
    throw domain_everywhere_invalid("find_levels: residual undefined on the entire window");

  for (int i = 0; i < cells; ++i) {
    if (!ok[static_cast<std::size_t>(i)] || !ok[static_cast<std::size_t>(i) + 1]) continue;
    double lo = cfg.E_min + width * i / cells;
    double hi = cfg.E_min + width * (i + 1) / cells;
    double flo = val[static_cast<std::size_t>(i)];
    const double fhi = val[static_cast<std::size_t>(i) + 1];
    if (flo == 0.0) {  // exact grid hit: nudge the bracket open
      lo = std::nextafter(lo, cfg.E_min);
      try {
        flo = residual(lo, cfg);
      } catch (const std::domain_error&) {
        continue;
      }
    }
    if (!(flo * fhi < 0.0)) continue;

    double E = 0.5 * (lo + hi), r = 0.0;
    while (hi - lo >= cfg.refine_tol) {
      E = 0.5 * (lo + hi);
      if (E <= lo || E >= hi) break;  // bracket at floating-point resolution
      r = residual(E, cfg);
      if (std::abs(r) < 1e-12) break;
      if (flo * r < 0.0) {
        hi = E;
      } else {
        lo = E;
        flo = r;
      }
    }
    E = 0.5 * (lo + hi);
    out.levels.push_back(
        {E, residual(E, cfg), lo, hi, cfg.qn, cfg.mode, cfg.variant});
  }

  // Near-tangent residuals can yield duplicate refinements in adjacent cells.
  std::vector<EnergyLevel> merged;
  for (const auto& lv : out.levels) {
    if (!merged.empty() && std::abs(lv.E - merged.back().E) <= cfg.refine_tol) continue;
    merged.push_back(lv);
  }
  out.levels = std::move(merged);
  return out;
}

// Closed-form limit spectrum at a = b = 0 (pure magnetic confinement):
//   E = sqrt(M^2 + omega_c (n + m'/2 + 1)).
// Only meaningful for the DerivationConsistent condition, whose residual it
// annihilates identically; the Coulomb strength does not enter.
inline std::vector<EnergyLevel> landau_limit_levels(const SolverConfig& cfg) {
  if (cfg.pot.a != 0.0 || cfg.pot.b != 0.0)
    throw std::invalid_argument("landau_limit_levels: requires a = b = 0");
  if (!(cfg.fields.B > 0.0)) throw std::invalid_argument("landau_limit_levels: requires B > 0");
  if (cfg.variant != ResidualVariant::DerivationConsistent)
    throw std::invalid_argument("landau_limit_levels: defined for the DerivationConsistent variant");
  const double mp = m_prime_of(cfg.part.m, cfg.fields.phi_AB);
  const double val =
      cfg.part.M * cfg.part.M + cfg.fields.B * (cfg.qn.n + mp / 2.0 + 1.0);
  if (!(val > 0.0)) throw std::domain_error("landau_limit_levels: no positive-energy root");
  const double E = std::sqrt(val);
  const double d = 1e-9 * std::max(1.0, E);
  EnergyLevel lv{E, residual(E, cfg), E - d, E + d, cfg.qn, cfg.mode, cfg.variant};
  return {lv};
}

// Residual magnitudes of every variant at the tabulated reference energies,
// and the variant selected to reproduce them.
struct VariantReport {
  struct Entry {
    TableRow row;
    SymmetryMode mode;
    double literal;      // |residual|, LiteralPaper
    double derivation;   // |residual|, DerivationConsistent
    double printed_sum;  // as-printed pseudo-spin diagnostic (NaN for spin rows)
  };
  std::vector<Entry> entries;
  double worst_literal = 0.0;
  double worst_derivation = 0.0;
  ResidualVariant selected = ResidualVariant::LiteralPaper;
};

inline VariantReport variant_prestudy(std::span<const TableRow> spin_rows,
                                      std::span<const TableRow> pspin_rows) {
  VariantReport rep{};
  auto eval = [&rep](const TableRow& row, SymmetryMode mode) {
    SolverConfig cfg{};
    cfg.pot = {row.a, row.b, 0.0};
    cfg.fields = {row.B, kTablePhi};
    cfg.part = {kTableM, kTableMagQuantum};
    cfg.qn = {row.n, kTableMagQuantum};
    cfg.mode = mode;
    VariantReport::Entry ent{row, mode, 0.0, 0.0, std::numeric_limits<double>::quiet_NaN()};
    cfg.variant = ResidualVariant::LiteralPaper;
    ent.literal = std::abs(residual(row.E, cfg));
    cfg.variant = ResidualVariant::DerivationConsistent;
    ent.derivation = std::abs(residual(row.E, cfg));
    if (mode == SymmetryMode::PseudoSpin) ent.printed_sum = pspin_printed_sum(row.E, cfg);
    rep.worst_literal = std::max(rep.worst_literal, ent.literal);
    rep.worst_derivation = std::max(rep.worst_derivation, ent.derivation);
    rep.entries.push_back(ent);
  };
  for (const auto& row : spin_rows) eval(row, SymmetryMode::Spin);
  for (const auto& row : pspin_rows) eval(row, SymmetryMode::PseudoSpin);
  rep.selected = rep.worst_literal <= rep.worst_derivation
                     ? ResidualVariant::LiteralPaper
                     : ResidualVariant::DerivationConsistent;
  const double best = std::min(rep.worst_literal, rep.worst_derivation);
  if (!(best < 1e-3))
    throw selection_failure("variant_prestudy: no variant reproduces the reference tables");
  return rep;
}

}  // namespace kb
