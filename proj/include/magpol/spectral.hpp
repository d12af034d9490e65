#pragma once

#include <complex>
#include <span>
#include <vector>

namespace magpol::spectral {

/// Unnormalized forward DFT, X_m = sum_j x_j e^{-2 pi i j m / n}.
std::vector<std::complex<double>> forward(std::span<const std::complex<double>> x);
std::vector<std::complex<double>> forward(std::span<const double> x);
/// Inverse DFT including the 1/n factor.
std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> x);

}  // namespace magpol::spectral
