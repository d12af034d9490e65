#pragma once

namespace magpol::special {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// Scaled complementary error function e^{x^2} erfc(x), finite for all x
/// where the result is representable (overflows only for x < ~ -26.6).
double erfcx(double x);

/// Exponential integral E1(x) = int_x^inf e^{-t}/t dt, x > 0.
double expint_e1(double x);

/// e^x E1(x), x > 0; well defined for arbitrarily large x.
double scaled_expint_e1(double x);

}  // namespace magpol::special
