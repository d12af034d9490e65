#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "magpol/effective_1d.hpp"
#include "magpol/errors.hpp"
#include "support/oracles.hpp"

using namespace magpol;

namespace {
const Grid1D kGrid(4096, 40.0);
const double kC4 = std::pow(3.0, 0.125);
}  // namespace

TEST_CASE("closed form") {
  const auto f = closed_form_minimizer({1, 1}, kGrid);
  CHECK(f[2048] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(mass(closed_form_minimizer({2, 3}, kGrid)) - 2.0) < 1e-9);
  CHECK(closed_form_profile({1, 1e-12}, 0.0) == doctest::Approx(0.5e-6));
  CHECK(closed_form_energy({1, 1}) == doctest::Approx(-1.0 / 12));
  CHECK(closed_form_energy({2, 3}) == doctest::Approx(-6.0));
  CHECK(closed_form_energy({2, 0}) == 0.0);
  CHECK_THROWS_AS(closed_form_minimizer({1, 0.5}, kGrid), DomainTooSmall);
  CHECK_THROWS_AS(closed_form_energy({0, 1}), DomainError);
  CHECK_THROWS_AS(closed_form_energy({1, -1}), DomainError);
}

TEST_CASE("numeric minimizer reproduces the closed form") {
  const auto s = solve_numeric({1, 1}, kGrid, 1e-8);
  CHECK(std::abs(s.energy + 1.0 / 12) < 1e-6);
  CHECK(std::abs(mass(s.minimizer) - 1.0) < 1e-8);
  CHECK(distance_to_orbit(s.minimizer, {1, 1}) < 1e-4);
  CHECK_FALSE(s.zero_coupling);

  const auto big = solve_numeric({1, 10}, kGrid, 1e-10);
  CHECK(std::abs(big.energy + 100.0 / 12) <= 1e-4 * 100.0 / 12);
  CHECK(distance_to_orbit(big.minimizer, {1, 10}) < 1e-4);
}

TEST_CASE("zero coupling is flagged") {
  const auto s = solve_numeric({1, 0}, kGrid, 1e-8);
  CHECK(s.zero_coupling);
  CHECK(s.energy == 0.0);
  CHECK_THROWS_AS(solve_numeric({1, 1}, kGrid, 0.0), DomainError);
}

TEST_CASE("independent starting fields reach the same minimum") {
  SolveOptions a, b;
  a.initial = [](double t) { return std::exp(-0.1 * (t - 2) * (t - 2)) + 0.3 * std::exp(-(t + 3) * (t + 3)); };
  b.initial = [](double t) { return 1.0 / (1.0 + t * t * t * t); };
  const auto sa = solve_numeric({1, 1}, kGrid, 1e-12, a);
  const auto sb = solve_numeric({1, 1}, kGrid, 1e-12, b);
  CHECK(std::abs(sa.energy - sb.energy) < 1e-8);
}

TEST_CASE("scaling law of the numeric energy") {
  const double e11 = solve_numeric({1, 1}, kGrid, 1e-12).energy;
  for (auto [a, b] : {std::pair{2.0, 1.0}, {1.0, 3.0}, {0.5, 2.0}}) {
    const double e = solve_numeric({a, b}, kGrid, 1e-12).energy;
    CAPTURE(a);
    CAPTURE(b);
    CHECK(std::abs(e - a * a * a * b * b * e11) <= 1e-6 * std::abs(e));
  }
}

TEST_CASE("non-convergence is reported") {
  SolveOptions o;
  o.max_iterations = 2;
  try {
    solve_numeric({1, 1}, kGrid, 1e-12, o);
    FAIL("expected ConvergenceFailure");
  } catch (const ConvergenceFailure& e) {
    CHECK(e.iterations() == 2);
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("sharp GN constant") {
  CHECK(sharp_gn_constant(4.0) == doctest::Approx(kC4).epsilon(1e-14));
  CHECK(std::abs(gn_ratio(closed_form_minimizer({1, 1}, kGrid)) - kC4) < 1e-6);
  // Scale invariance.
  const auto f = closed_form_minimizer({1, 1}, kGrid);
  const auto g = Field1D::sample(kGrid, [](double t) { return 3.0 * closed_form_profile({1, 1}, 1.7 * t); });
  CHECK(std::abs(gn_ratio(g) - gn_ratio(f)) < 1e-10);
  // Gaussian: ratio from brute quadrature.
  auto gauss = [](double t) { return std::exp(-0.5 * t * t); };
  const double m = oracle::integrate([&](double t) { return gauss(t) * gauss(t); }, -40, 40);
  const double k = oracle::integrate([&](double t) { return t * t * gauss(t) * gauss(t); }, -40, 40);
  const double q = oracle::integrate([&](double t) { return std::pow(gauss(t), 4); }, -40, 40);
  const double ref = std::pow(k, 0.125) * std::pow(m, 0.375) / std::pow(q, 0.25);
  const double num = gn_ratio(Field1D::sample(kGrid, gauss));
  CHECK(std::abs(num - ref) < 1e-10);
  CHECK(num > kC4);
  CHECK_THROWS_AS(gn_ratio(Field1D::zero(kGrid)), InvalidField);
  CHECK_THROWS_AS(sharp_gn_constant(2.0), DomainError);
}

TEST_CASE("GN inequality and quartic gap on random fields") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> bdist(0.0, 50.0);
  for (int i = 0; i < 50; ++i) {
    const auto f = oracle::random_field(kGrid, rng);
    CHECK(gn_ratio(f) >= kC4 - 1e-9);
    CHECK(quartic_gap(f, bdist(rng)) >= -1e-6);
  }
  CHECK(std::abs(quartic_gap(closed_form_minimizer({1, 2.5}, kGrid), 2.5)) < 1e-6);
  const auto gauss = Field1D::sample(kGrid, [](double t) { return std::exp(-0.5 * t * t); });
  CHECK(quartic_gap(gauss, 1.0) > 0.0);
  CHECK(quartic_gap(gauss, 0.0) == doctest::Approx(kinetic(gauss)));
}

TEST_CASE("weighted problem with constant weight") {
  const double kappa1 = 0.8, lambda = 0.3, w0 = 1.5;
  WeightedProblem wp{kappa1, lambda, [w0](double) { return w0; }, 1e9};
  const auto s = solve_weighted(wp, kGrid, 1e-12);
  const double bt = 2.0 * std::numbers::pi * lambda * w0 / kappa1;
  const double expected = -std::pow(2.0 * std::numbers::pi * lambda * w0, 2) / (12.0 * kappa1);
  CHECK(std::abs(s.energy - expected) <= 1e-6 * std::abs(expected));
  const double via_quartic = kappa1 * solve_numeric({1, bt}, kGrid, 1e-12).energy;
  CHECK(std::abs(s.energy - via_quartic) <= 1e-6 * std::abs(expected));
}

TEST_CASE("weighted problem: degenerate weight and monotonicity in lambda") {
  WeightedProblem zero{1.0, 0.5, [](double) { return 0.0; }, 10.0};
  const auto z = solve_weighted(zero, kGrid, 1e-10);
  CHECK(z.zero_coupling);
  CHECK(z.energy == 0.0);

  auto w = [](double k) { return 2.0 / (1.0 + k * k); };
  double prev = 0.0;
  for (double lambda : {0.2, 0.5, 1.0}) {
    const auto s = solve_weighted({1.0, lambda, w, 5.0}, kGrid, 1e-10);
    CHECK(s.energy <= prev);
    CHECK(s.energy >= -std::pow(2.0 * std::numbers::pi * lambda * 2.0, 2) / 12.0);
    prev = s.energy;
  }
  CHECK_THROWS_AS(solve_weighted({0.0, 1.0, w, 5.0}, kGrid, 1e-10), DomainError);
  CHECK_THROWS_AS(solve_weighted({1.0, 1.0, [](double) { return -1.0; }, 5.0}, kGrid, 1e-10), DomainError);
}
