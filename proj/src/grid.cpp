#include "magpol/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "magpol/errors.hpp"
#include "magpol/spectral.hpp"

namespace magpol {
namespace spectral {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (n, sign) and kept for the process.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find({n, sign});
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> in(n), out(n);
    fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(std::pair{n, sign}, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

std::vector<std::complex<double>> execute(std::span<const std::complex<double>> x, int sign) {
  const int n = static_cast<int>(x.size());
  std::vector<std::complex<double>> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(x.size());
  fftw_execute_dft(plan_cache().get(n, sign), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> x) {
  return execute(x, FFTW_FORWARD);
}

std::vector<std::complex<double>> forward(std::span<const double> x) {
  std::vector<std::complex<double>> c(x.begin(), x.end());
  return execute(c, FFTW_FORWARD);
}

std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> x) {
  auto out = execute(x, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(x.size());
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace spectral

// ---------------------------------------------------------------------------

Grid1D::Grid1D(std::size_t n, double half_width)
    : n_(n), half_width_(half_width), spacing_(2.0 * half_width / static_cast<double>(n)) {
  if (n < 64 || (n & (n - 1)) != 0)
    throw DomainError("Grid1D: sample count must be a power of two >= 64, got " +
                      std::to_string(n));
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw DomainError("Grid1D: half width must be positive and finite");
}

std::vector<double> Grid1D::points() const {
  std::vector<double> t(n_);
  for (std::size_t j = 0; j < n_; ++j) t[j] = point(j);
  return t;
}

double Grid1D::dual_spacing() const noexcept { return std::numbers::pi / half_width_; }

double Grid1D::wavenumber(std::size_t m) const noexcept {
  const auto half = static_cast<std::ptrdiff_t>(n_ / 2);
  auto mm = static_cast<std::ptrdiff_t>(m);
  if (mm >= half) mm -= static_cast<std::ptrdiff_t>(n_);
  return static_cast<double>(mm) * dual_spacing();
}

std::vector<double> Grid1D::wavenumbers() const {
  std::vector<double> k(n_);
  for (std::size_t m = 0; m < n_; ++m) k[m] = wavenumber(m);
  return k;
}

double Grid1D::nyquist() const noexcept { return std::numbers::pi / spacing_; }

Grid1D Grid1D::scaled(double factor) const { return Grid1D(n_, half_width_ / factor); }

// ---------------------------------------------------------------------------

Field1D::Field1D(Grid1D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw InvalidField("Field1D: sample count does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw InvalidField("Field1D: non-finite sample");
}

Field1D Field1D::sample(const Grid1D& grid, const std::function<double(double)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) v[j] = fn(grid.point(j));
  return Field1D(grid, std::move(v));
}

Field1D Field1D::zero(const Grid1D& grid) { return Field1D(grid, std::vector<double>(grid.size())); }

double Field1D::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool Field1D::decayed(double relative) const noexcept {
  const double peak = max_abs();
  if (peak == 0.0) return true;
  return std::abs(values_.front()) < relative * peak && std::abs(values_.back()) < relative * peak;
}

void Field1D::require_decayed() const {
  if (!decayed())
    throw DomainTooSmall("field has not decayed to 1e-8 of its peak at the box boundary (T = " +
                         std::to_string(grid_.half_width()) + ")");
}

Field1D Field1D::translated(double shift) const {
  const auto n = grid_.size();
  std::vector<double> v(n);
  // The Nyquist bin keeps only the real part of its phase so the result stays real.
  auto spec = spectral::forward(std::span<const double>(values_));
  for (std::size_t m = 0; m < n; ++m) {
    if (m == n / 2) {
      spec[m] *= std::cos(grid_.wavenumber(m) * shift);
      continue;
    }
    spec[m] *= std::polar(1.0, -grid_.wavenumber(m) * shift);
  }
  auto back = spectral::inverse(spec);
  for (std::size_t j = 0; j < n; ++j) v[j] = back[j].real();
  return Field1D(grid_, std::move(v));
}

Field1D Field1D::normalized(double target_mass) const {
  const double m = mass(*this);
  if (!(m > 0.0)) throw InvalidField("cannot normalize the zero field");
  return scaled(std::sqrt(target_mass / m));
}

Field1D Field1D::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return Field1D(grid_, std::move(v));
}

// ---------------------------------------------------------------------------

DensityProfile::DensityProfile(Grid1D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw InvalidField("DensityProfile: sample count does not match grid");
  for (double v : values_)
    if (!std::isfinite(v) || v < 0.0)
      throw InvalidField("DensityProfile: samples must be finite and nonnegative");
}

DensityProfile DensityProfile::from_field(const Field1D& f) {
  std::vector<double> v(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) v[j] = f[j] * f[j];
  return DensityProfile(f.grid(), std::move(v));
}

double DensityProfile::mass() const noexcept {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * grid_.spacing();
}

// ---------------------------------------------------------------------------

double mass(const Field1D& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return s * f.grid().spacing();
}

double kinetic(const Field1D& f) {
  f.require_decayed();
  const auto& g = f.grid();
  const auto spec = spectral::forward(f.values());
  double s = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double k = g.wavenumber(m);
    s += k * k * std::norm(spec[m]);
  }
  return s * g.spacing() / static_cast<double>(g.size());
}

double quartic(const Field1D& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v * v * v;
  return s * f.grid().spacing();
}

DensitySpectrum density_fourier(const DensityProfile& rho) {
  const auto& g = rho.grid();
  auto spec = spectral::forward(rho.values());
  DensitySpectrum out;
  out.wavenumbers = g.wavenumbers();
  out.dual_spacing = g.dual_spacing();
  const double t0 = g.point(0);
  for (std::size_t m = 0; m < g.size(); ++m)
    spec[m] *= g.spacing() * std::polar(1.0, -out.wavenumbers[m] * t0);
  out.values = std::move(spec);
  return out;
}

std::complex<double> density_fourier_at(const DensityProfile& rho, double k) {
  const auto& g = rho.grid();
  const auto v = rho.values();
  std::complex<double> sum{0.0, 0.0};
  // Re-seed the rotating phase every block to keep round-off bounded.
  constexpr std::size_t block = 64;
  const std::complex<double> step = std::polar(1.0, -k * g.spacing());
  for (std::size_t j0 = 0; j0 < g.size(); j0 += block) {
    std::complex<double> phase = std::polar(1.0, -k * g.point(j0));
    const std::size_t j1 = std::min(g.size(), j0 + block);
    for (std::size_t j = j0; j < j1; ++j) {
      sum += v[j] * phase;
      phase *= step;
    }
  }
  return sum * g.spacing();
}

std::vector<double> density_power_at(const DensityProfile& rho, std::span<const double> ks) {
  std::vector<double> out(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) out[i] = std::norm(density_fourier_at(rho, ks[i]));
  return out;
}

std::vector<double> apply_fourier_multiplier(const Grid1D& grid, std::span<const double> values,
                                             const std::function<double(double)>& symbol) {
  auto spec = spectral::forward(values);
  for (std::size_t m = 0; m < grid.size(); ++m) spec[m] *= symbol(grid.wavenumber(m));
  const auto back = spectral::inverse(spec);
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) out[j] = back[j].real();
  return out;
}

double centroid(const Field1D& f) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double r = f[j] * f[j];
    num += f.grid().point(j) * r;
    den += r;
  }
  return den > 0.0 ? num / den : 0.0;
}

double inner(const Field1D& a, const Field1D& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s * a.grid().spacing();
}

}  // namespace magpol
