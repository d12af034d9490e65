#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace magpol {

/// Uniform periodic grid on [-T, T) with n points, t_j = -T + j h, h = 2T/n.
class Grid1D {
 public:
  Grid1D(std::size_t n, double half_width);

  std::size_t size() const noexcept { return n_; }
  double half_width() const noexcept { return half_width_; }
  double spacing() const noexcept { return spacing_; }
  double point(std::size_t j) const noexcept {
    return -half_width_ + static_cast<double>(j) * spacing_;
  }
  std::vector<double> points() const;

  /// Spacing pi/T of the dual (wavenumber) grid.
  double dual_spacing() const noexcept;
  /// Wavenumber of FFT bin m, in standard FFT ordering. The Nyquist bin is
  /// reported as -n/2 times the dual spacing.
  double wavenumber(std::size_t m) const noexcept;
  std::vector<double> wavenumbers() const;
  double nyquist() const noexcept;

  /// Same n, half-width T / factor.
  Grid1D scaled(double factor) const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  std::size_t n_;
  double half_width_;
  double spacing_;
};

/// Real samples of a longitudinal wavefunction on a Grid1D.
class Field1D {
 public:
  Field1D(Grid1D grid, std::vector<double> values);

  static Field1D sample(const Grid1D& grid, const std::function<double(double)>& fn);
  static Field1D zero(const Grid1D& grid);

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  std::size_t size() const noexcept { return values_.size(); }

  double max_abs() const noexcept;
  /// Boundary samples are below 1e-8 of the peak (always true for zero field).
  bool decayed(double relative = 1e-8) const noexcept;
  /// Throws DomainTooSmall unless decayed().
  void require_decayed() const;

  /// Periodic translation by `shift` in t (spectral interpolation).
  Field1D translated(double shift) const;
  /// Field rescaled to the given mass.
  Field1D normalized(double target_mass) const;
  Field1D scaled(double factor) const;

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

/// Nonnegative density samples, typically f^2.
class DensityProfile {
 public:
  DensityProfile(Grid1D grid, std::vector<double> values);
  static DensityProfile from_field(const Field1D& f);

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double mass() const noexcept;

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

/// Continuum Fourier transform rho_hat(k) = int e^{-ikx} rho(x) dx on the dual
/// grid, bins in FFT order.
struct DensitySpectrum {
  std::vector<double> wavenumbers;
  std::vector<std::complex<double>> values;
  double dual_spacing = 0.0;
};

double mass(const Field1D& f);
double kinetic(const Field1D& f);
double quartic(const Field1D& f);

DensitySpectrum density_fourier(const DensityProfile& rho);
/// Direct evaluation of rho_hat at an arbitrary wavenumber.
std::complex<double> density_fourier_at(const DensityProfile& rho, double k);
/// |rho_hat(k)|^2 at many wavenumbers.
std::vector<double> density_power_at(const DensityProfile& rho, std::span<const double> ks);

/// Re IFFT( symbol(k) * FFT(values) ).
std::vector<double> apply_fourier_multiplier(const Grid1D& grid, std::span<const double> values,
                                             const std::function<double(double)>& symbol);
/// Density centroid int t rho / int rho (0 for the zero field).
double centroid(const Field1D& f);

/// L2 inner product and norm with trapezoid weights.
double inner(const Field1D& a, const Field1D& b);

}  // namespace magpol
