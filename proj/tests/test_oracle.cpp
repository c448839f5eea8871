#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "killingbeck/oracle.hpp"

using Catch::Approx;
using namespace kb;

namespace {

SolverConfig landau_config(int n) {
  SolverConfig cfg{};
  cfg.pot = {0.0, 0.0, 0.0};
  cfg.fields = {1.0, 0.0};
  cfg.part = {5.0, 1};
  cfg.qn = {n, 1};
  cfg.mode = SymmetryMode::Spin;
  cfg.variant = ResidualVariant::DerivationConsistent;
  cfg.E_min = 5.05;
  cfg.E_max = 5.45;
  return cfg;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(validate(RadialGrid{0.0, 12.0, 2000}), std::invalid_argument);
  CHECK_THROWS_AS(validate(RadialGrid{1.0, 0.5, 2000}), std::invalid_argument);
  CHECK_THROWS_AS(validate(RadialGrid{1e-6, 12.0, 500}), std::invalid_argument);
  CHECK_NOTHROW(validate(RadialGrid{}));
}

TEST_CASE("default grid scales with the confinement strength") {
  SolverConfig weak = landau_config(0);
  weak.fields.B = 0.1;  // k_quad = 0.0025, tail reaches far out
  CHECK(default_grid(weak).r_max == Approx(8.0 / std::pow(0.0025, 0.25)).epsilon(1e-12));
  CHECK(default_grid(landau_config(0)).r_max == 12.0);
}

TEST_CASE("shooting requires a confining tail") {
  SolverConfig cfg = landau_config(0);
  cfg.fields.B = 0.0;  // a = 0 as well: k_quad = 0
  CHECK_THROWS_AS(match_determinant(5.2, cfg, RadialGrid{1e-6, 12.0, 2000}),
                  invalid_asymptotics);
}

TEST_CASE("matching determinant keeps one sign between eigenvalues") {
  const SolverConfig cfg = landau_config(0);
  const RadialGrid g{1e-6, 12.0, 2000};
  // sqrt(26.5) = 5.1478, sqrt(28.5) = 5.3385: no eigenvalue in [5.20, 5.22]
  const double w1 = match_determinant(5.20, cfg, g);
  const double w2 = match_determinant(5.22, cfg, g);
  CHECK(w1 * w2 > 0.0);
}

TEST_CASE("pure magnetic eigenvalues from the shooting oracle") {
  const SolverConfig cfg = landau_config(0);
  const std::vector<OracleLevel> lv = ode_levels(cfg, {5.05, 5.45}, {1e-6, 14.0, 2500});
  REQUIRE(lv.size() == 2);

  // closed-form levels sqrt(26.5) and sqrt(28.5); the interior quantum
  // number advances by two per radial node
  CHECK(lv[0].E == Approx(5.1478150704935001579).margin(1e-7));
  CHECK(lv[1].E == Approx(5.3385391260156556054).margin(1e-7));
  CHECK(lv[0].nodes == 0);
  CHECK(lv[1].nodes == 1);
  for (const OracleLevel& l : lv) {
    CHECK(l.richardson_error < 1e-6);
    CHECK_FALSE(l.under_resolved);
    CHECK(std::abs(l.match_residual) < 1e-3);
  }
}

TEST_CASE("tail flag trips when the grid stops short") {
  // the first excited state reaches farther out; at r_max = 12 its tail
  // weight already exceeds the resolution threshold
  const SolverConfig cfg = landau_config(0);
  const std::vector<OracleLevel> lv = ode_levels(cfg, {5.30, 5.40}, {1e-6, 12.0, 2500});
  REQUIRE(lv.size() == 1);
  CHECK(lv[0].nodes == 1);
  CHECK(lv[0].under_resolved);
}

TEST_CASE("extrapolated eigenvalue is grid-stable") {
  const SolverConfig cfg = landau_config(0);
  const std::vector<OracleLevel> base = ode_levels(cfg, {5.14, 5.16}, {1e-6, 12.0, 2000});
  const std::vector<OracleLevel> fine = ode_levels(cfg, {5.14, 5.16}, {1e-6, 12.0, 4000});
  REQUIRE(base.size() == 1);
  REQUIRE(fine.size() == 1);
  CHECK(base[0].E == Approx(fine[0].E).margin(1e-8));
}

TEST_CASE("full potential eigenvalue as a regression anchor") {
  // a = 0.001, b = 0.005, B = 1.0, phi = 2, m = 1: lowest eigenvalue of the
  // raw radial equation, frozen from a 20000-step run: 5.155141605
  SolverConfig cfg{};
  cfg.pot = {0.001, 0.005, 0.0};
  cfg.fields = {1.0, 2.0};
  cfg.part = {5.0, 1};
  cfg.qn = {0, 1};
  cfg.mode = SymmetryMode::Spin;
  cfg.E_min = 5.10;
  cfg.E_max = 5.20;
  const std::vector<OracleLevel> lv = ode_levels(cfg, {5.10, 5.20}, {1e-6, 12.0, 2500});
  REQUIRE(lv.size() == 1);
  CHECK(lv[0].E == Approx(5.155141605).margin(1e-6));
  CHECK(lv[0].nodes == 0);
  CHECK_FALSE(lv[0].under_resolved);
}

TEST_CASE("window handling") {
  const SolverConfig cfg = landau_config(0);
  CHECK_THROWS_AS(ode_levels(cfg, {5.4, 5.2}, RadialGrid{}), std::invalid_argument);
  // a clean window with no eigenvalue returns empty, it does not throw
  CHECK(ode_levels(cfg, {5.00, 5.10}, {1e-6, 12.0, 2000}).empty());
}
