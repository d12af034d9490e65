#include <cmath>
#include <numbers>

#include "doctest.h"
#include "magpol/certificate.hpp"
#include "magpol/errors.hpp"
#include "magpol/pekar.hpp"
#include "magpol/special_functions.hpp"
#include "support/oracles.hpp"

using namespace magpol;
using std::numbers::pi;

namespace {

double default_K(double B) { return B * std::pow(std::log(B), -4.0 / 3.0); }

}  // namespace

TEST_CASE("kappa") {
  CHECK(kappa(16.0 / pi, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(kappa(32.0 / pi, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  const double B = std::exp(20.0);
  CHECK(1.0 - kappa(default_K(B), 1.0) == doctest::Approx(8.0 * std::pow(20.0, 4.0 / 3.0) / (pi * B)).epsilon(1e-9));
  CHECK(1.0 - kappa(default_K(B), 1.0) == doctest::Approx(1.37e-7).epsilon(0.01));
  CHECK(kappa(1e300, 1.0) == 1.0);
  CHECK_THROWS_AS(kappa(8.0 / pi, 1.0), DomainError);
}

TEST_CASE("kappa1") {
  // x = 1: the integral is e E1(1).
  const double K3 = std::sqrt(2.0 * 50.0);
  const double integral = oracle::integrate([](double t) { return std::exp(-t) / (1.0 + t); }, 0.0, 60.0);
  CHECK(integral == doctest::Approx(0.5963473623231940).epsilon(1e-12));
  CHECK(kappa1(1.0, K3, 50.0, 1.0) == doctest::Approx(1.0 - 8.0 / (pi * K3) * integral).epsilon(1e-13));

  // K3^2 >> B: integral ~ 2B/K3^2.
  const double big = 1e4;
  const double drop = 1.0 - kappa1(1.0, big, 1.0, 1.0);
  CHECK(drop == doctest::Approx(8.0 / (pi * big) * 2.0 / (big * big)).epsilon(1e-6));

  // Tiny x stays finite and follows the logarithm.
  const double tiny = kappa1(1.0, 1.0, 1e200, 1.0);
  CHECK(std::isfinite(tiny));
  CHECK(1.0 - tiny == doctest::Approx(8.0 / pi * (std::log(2e200) - special::euler_gamma)).epsilon(1e-12));

  // Coarse log bound: fitted constant stays of order 8 alpha / pi.
  for (double B : {1e4, 1e8, 1e12}) {
    const double k3 = std::pow(std::log(B), 1.5);
    REQUIRE(B / (k3 * k3) >= 2.0);
    const double C = (1.0 - kappa1(1.0, k3, B, 1.0)) * k3 / std::log(B / (k3 * k3));
    MESSAGE("B = " << B << " fitted C = " << C);
    CHECK(C > 8.0 / pi);
    CHECK(C < 2.0 * 8.0 / pi);
  }
  CHECK(kappa1(0.9, 5.0, 100.0, 0.0) == 0.9);
  CHECK_THROWS_AS(kappa1(1.0, 0.0, 10.0, 1.0), DomainError);
}

TEST_CASE("kappa2") {
  CHECK(kappa2(0.7, 0.0, 5.0, 1.0) == 0.7);
  CHECK(kappa2(0.9, 10.0, 100.0, 1.0) == doctest::Approx(0.9 - 20.0 / (pi * 1e4)).epsilon(1e-15));
  const double B = std::exp(20.0);
  const auto c = default_params(B, 1.0, default_K(B));
  const double k = kappa(c.K, 1.0);
  const double d = k - kappa2(k, c.K3, c.Kperp, 1.0);
  MESSAGE("kappa - kappa2 at e^20: " << d << ", times B / (ln B)^3: " << d * B / 8000.0);
  CHECK(d > 0.0);
  CHECK(d * B / 8000.0 < 1.0);
  CHECK_THROWS_AS(kappa2(1.0, 1.0, 0.5, 1.0), DomainError);
}

TEST_CASE("coupling v, R and block norms") {
  CHECK(coupling_v(0.0, std::numbers::e) == doctest::Approx(std::sqrt(2.0 * pi)).epsilon(1e-15));
  CHECK(coupling_v(0.0, 50.0) == doctest::Approx(std::sqrt(2 * pi * std::log(50.0))).epsilon(1e-15));
  for (int i = 0; i < 20; ++i) {
    const double k = 0.37 * i * i;
    CHECK(std::pow(coupling_v(k, 30.0), 2) <= 2 * pi * std::log(30.0) * (1 + 1e-15));
  }
  // Closed form of int ln(a^2 + k^2) dk.
  auto F = [](double k, double a) { return k * std::log(a * a + k * k) - 2 * k + 2 * a * std::atan(k / a); };
  for (auto [K3, Kp] : {std::pair{10.0, 100.0}, {89.4, std::exp(10.0)}, {0.5, 3.0}}) {
    const double exact = 2 * pi * (F(K3, Kp) - F(K3, 1.0));
    CHECK(total_R(K3, Kp) == doctest::Approx(exact).epsilon(1e-12));
    CHECK(total_R(K3, Kp) <= 4 * pi * K3 * std::log(Kp));
    MESSAGE("R / (2 pi K3 ln Kperp) = " << total_R(K3, Kp) / (2 * pi * K3 * std::log(Kp)));
  }
  CHECK(total_R(0.0, 10.0) == 0.0);
  // Blocks tile R.
  double s = 0.0;
  for (int b = 0; b < 8; ++b) s += std::pow(block_V(-10.0 + 2.5 * b, -7.5 + 2.5 * b, 100.0), 2);
  CHECK(s == doctest::Approx(total_R(10.0, 100.0)).epsilon(1e-12));
  CHECK(block_V(1.0, 1.0, 5.0) == 0.0);
}

TEST_CASE("localization and block errors") {
  CHECK(localization_error(pi) == doctest::Approx(1.0).epsilon(1e-15));
  // ||chi'||^2 of sqrt(2) cos(pi t) on [-1/2, 1/2].
  const double grad = oracle::integrate([](double t) { return 2 * pi * pi * std::pow(std::sin(pi * t), 2); }, -0.5, 0.5);
  const double norm = oracle::integrate([](double t) { return 2 * std::pow(std::cos(pi * t), 2); }, -0.5, 0.5);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(localization_error(0.7) == doctest::Approx(grad / 0.49).epsilon(1e-13));

  const double e1 = block_error(1.0, 10.0, 0.2, 0.5, 4, 300.0);
  CHECK(block_error(1.0, 10.0, 0.2, 0.5, 8, 300.0) == doctest::Approx(e1 / 4).epsilon(1e-15));
  CHECK(e1 == doctest::Approx(100.0 * 0.04 * 300.0 / (4 * pi * pi * 0.5 * 16)).epsilon(1e-15));
  double prev = 1e300;
  for (double g : {0.1, 0.3, 0.6, 0.9, 0.999}) {
    const double e = block_error(1.0, 10.0, 0.2, g, 4, 300.0);
    CHECK(e < prev);
    prev = e;
  }
  CHECK_THROWS_AS(block_error(1.0, 1.0, 1.0, 1.0, 1, 1.0), DomainError);
  CHECK_THROWS_AS(block_error(1.0, 1.0, 1.0, 0.5, 0, 1.0), DomainError);
}

TEST_CASE("default parameters") {
  const double B = std::exp(20.0);
  const auto c = default_params(B, 1.0, default_K(B));
  const double k = kappa(c.K, 1.0);
  CHECK(c.Kperp == doctest::Approx(std::exp(10.0)).epsilon(1e-15));
  CHECK(c.K3 == doctest::Approx(std::pow(20.0, 1.5) / std::sqrt(k)).epsilon(1e-15));
  CHECK(c.L * c.L == doctest::Approx(std::pow(k, 0.2) * std::pow(c.K3 * 10.0, -0.6)).epsilon(1e-13));
  CHECK(c.M == static_cast<long>(std::floor(1.0 / (c.L * c.L))));
  CHECK(c.block_width() == doctest::Approx(2 * c.K3 / c.M));
  MESSAGE("gamma at e^20: " << c.gamma << " (<= 1/2: " << (c.gamma <= 0.5) << ")");
  CHECK(c.gamma > 0.0);
  CHECK(c.gamma < 1.0);
  for (double X = 10; X <= 40; X += 2) CHECK(default_params(std::exp(X), 1.0, default_K(std::exp(X))).M >= 1);
  CHECK_THROWS_AS(default_params(500.0, 1.0, 1e3), DomainError);
  CHECK_THROWS_AS(default_params(1e6, 1.0, 100.0), DomainError);
}

TEST_CASE("effective I") {
  const double k1 = 0.7, g = 0.4, K3 = 60.0, Kp = std::exp(8.0);
  const double I = effective_I(k1, g, K3, Kp, 1.0);
  const double env = effective_I_envelope(k1, g, Kp, 1.0);
  CHECK(I <= 0.0);
  CHECK(I >= env);
  CHECK(effective_I(k1, g, K3, Kp, 0.0) == 0.0);

  // Constant weight 2 pi ln Kperp reaches the envelope once the cutoff is
  // beyond the spectrum of the minimizer.
  WeightedProblem wp;
  wp.kappa1 = k1;
  wp.prefactor_lambda = 1.0 / (4 * pi * pi * (1 - g));
  wp.weight = [Kp](double) { return 2 * pi * std::log(Kp); };
  wp.cutoff_K3 = K3;
  const double flat = solve_weighted(wp, Grid1D(4096, 40.0), 1e-10).energy;
  CHECK(flat == doctest::Approx(env).epsilon(1e-5));
  CHECK_THROWS_AS(effective_I(0.0, g, K3, Kp, 1.0), DomainError);
}

TEST_CASE("certificate assembly") {
  const double B = std::exp(20.0);
  const auto cert = certify_p0(B, 1.0, default_K(B));
  REQUIRE(cert.valid());
  const auto& l = cert.ledger;
  CHECK(cert.p0_bound == cert.recompute_p0());
  CHECK(l.kappa1 <= l.kappa);
  CHECK(l.kappa2 <= l.kappa);
  CHECK(l.kappa1 > 0.0);
  CHECK(l.mode_count_error == static_cast<double>(cert.cutoffs.M));
  CHECK(l.projection_constant == 1.5);
  CHECK(l.firstcut_constant == 0.25);
  CHECK(l.localization_error >= 0.0);
  CHECK(l.block_error >= 0.0);
  CHECK(cert.I_value >= effective_I_envelope(l.kappa1, cert.cutoffs.gamma, cert.cutoffs.Kperp, 1.0));
  CHECK(cert.p0_bound < B);
  CHECK_FALSE(cert.assumptions.empty());
  MESSAGE("B - p0 at e^20: " << B - cert.p0_bound << " (localization " << l.localization_error << ", M " << l.mode_count_error
                             << ", I " << cert.I_value << ")");

  // Decoupled: every alpha-dependent term vanishes.
  const auto zero = certify_p0(B, 0.0, default_K(B));
  REQUIRE(zero.valid());
  CHECK(zero.I_value == 0.0);
  CHECK(zero.ledger.block_error == 0.0);
  CHECK(zero.p0_bound == doctest::Approx(zero.ledger.kappa2 * B - zero.ledger.mode_count_error -
                                         zero.ledger.localization_error - 1.0));

  // Out-of-range explicit parameters give an invalid certificate with a ledger.
  auto bad = cert.cutoffs;
  bad.gamma = 1.5;
  const auto inv = certify_p0(B, 1.0, default_K(B), bad);
  CHECK_FALSE(inv.valid());
  CHECK_FALSE(inv.validity.gamma_in_range);
  CHECK(std::isnan(inv.p0_bound));
  CHECK(inv.ledger.projection_constant == 1.5);
}

TEST_CASE("certificate sweep: sandwich and trend") {
  std::vector<double> ratio;
  for (double X : {12.0, 16.0, 20.0, 24.0}) {
    CAPTURE(X);
    const double B = std::exp(X);
    const auto cert = certify_p0(B, 1.0, default_K(B));
    REQUIRE(cert.valid());
    ratio.push_back((B - cert.p0_bound) / (X * X));
    if (X <= 20.0) {
      const auto m = pekar_minimize({B, 1.0}, 1e-10);
      CHECK(cert.p0_bound - B < m.energy.binding());
    }
  }
  for (std::size_t i = 1; i < ratio.size(); ++i) CHECK(ratio[i] < ratio[i - 1]);
  CHECK(ratio.back() >= 0.5 / 48.0);
}

TEST_CASE("conditional and rough bounds") {
  const double B = std::exp(16.0);
  auto cert = certify_p0(B, 1.0, default_K(B));
  CHECK(conditional_full_bound(cert, 0.0) == cert.p0_bound - 0.25);
  const double penalty = cert.p0_bound - conditional_full_bound(cert, 2.0);
  // Difference of two numbers near B: about 1e-11 relative is left.
  CHECK(penalty == doctest::Approx(2.0 * std::pow(16.0, 4.0 / 3.0) + 0.25).epsilon(1e-9));
  double prev = 1e300;
  for (double cm : {0.0, 0.5, 1.0, 4.0}) {
    const double v = conditional_full_bound(cert, cm);
    CHECK(v < prev);
    prev = v;
  }
  attach_conditional_bound(cert, 1.0);
  CHECK(cert.conditional_full_bound.has_value());
  CHECK(*cert.assumed_C_M == 1.0);

  CHECK(rough_lower_formula(B, 1.0, 0.0) == B);
  CHECK(rough_lower_formula(std::exp(10.0), 1.0, 1.0) == doctest::Approx(std::exp(10.0) - 100.0));
}
