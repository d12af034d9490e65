#include "magpol/landau.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "magpol/errors.hpp"
#include "magpol/quadrature.hpp"
#include "magpol/special_functions.hpp"

namespace magpol {
namespace {

using std::numbers::pi;

void require_field(double B) {
  if (!(B > 0.0) || !std::isfinite(B)) throw DomainError("field strength B must be positive");
}

/// Composite Gauss-Legendre nodes/weights on [a, b].
void composite_nodes(double a, double b, int panels, std::size_t order, std::vector<double>& x,
                     std::vector<double>& w) {
  const auto& rule = quad::gauss_legendre(order);
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = a + width * (p + 0.5);
    for (std::size_t i = 0; i < order; ++i) {
      x.push_back(c + 0.5 * width * rule.nodes[i]);
      w.push_back(0.5 * width * rule.weights[i]);
    }
  }
}

/// Geometric panels toward 0 on [0, top], as in quad::graded.
void graded_nodes(double top, int levels, std::size_t order, std::vector<double>& x,
                  std::vector<double>& w) {
  double hi = top;
  for (int l = 0; l < levels; ++l) {
    composite_nodes(0.5 * hi, hi, 1, order, x, w);
    hi *= 0.5;
  }
  composite_nodes(0.0, hi, 1, order, x, w);
}

double i_kperp_ratio(double k1, double k2, double B, const TransverseState& psi, int py, int px) {
  const double s = 1.0 / std::sqrt(B);
  const double ry = 12.0 * s, rx = 12.0 * s + std::hypot(k1, k2) / B;
  std::vector<double> y, wy, x, wx;
  composite_nodes(-ry, ry, py, 20, y, wy);
  composite_nodes(-rx, rx, px, 20, x, wx);
  const Eigen::Index ny = static_cast<Eigen::Index>(y.size()), nx = static_cast<Eigen::Index>(x.size());
  const std::complex<double> I(0.0, 1.0);

  Eigen::MatrixXcd P(ny, ny);
  double psi_norm = 0.0;
  for (Eigen::Index a = 0; a < ny; ++a)
    for (Eigen::Index b = 0; b < ny; ++b) {
      const auto v = psi(y[a], y[b]);
      psi_norm += wy[a] * wy[b] * std::norm(v);
      P(a, b) = v * wy[a] * wy[b];
    }
  // I_k(x,y) = (B/2pi) A(x1,y1) C(x2,y2) e^{iB x1 y2/2} e^{-iB x2 y1/2}
  Eigen::MatrixXcd A(nx, ny), C(nx, ny), phase(nx, ny);
  for (Eigen::Index i = 0; i < nx; ++i)
    for (Eigen::Index a = 0; a < ny; ++a) {
      const double d = x[i] - y[a], m = x[i] + y[a];
      A(i, a) = std::exp(-0.25 * B * d * d - 0.5 * k2 * d + 0.5 * I * k1 * m);
      C(i, a) = std::exp(-0.25 * B * d * d + 0.5 * k1 * d + 0.5 * I * k2 * m);
      phase(i, a) = std::exp(-0.5 * I * B * x[i] * y[a]);
    }
  double out_norm = 0.0;
  Eigen::VectorXcd e(ny);
  for (Eigen::Index i = 0; i < nx; ++i) {
    for (Eigen::Index b = 0; b < ny; ++b) e(b) = std::exp(0.5 * I * B * x[i] * y[b]);
    Eigen::MatrixXcd T = C * (P * e.asDiagonal()).transpose();  // (x2, y1)
    T = T.cwiseProduct(phase);
    const Eigen::VectorXcd row = T * A.row(i).transpose();
    for (Eigen::Index j = 0; j < nx; ++j) out_norm += wx[i] * wx[j] * std::norm(row(j));
  }
  return B / (2.0 * pi) * std::sqrt(out_norm / psi_norm);
}

}  // namespace

TransverseGaussian::TransverseGaussian(double B) : B_(B) { require_field(B); }

double TransverseGaussian::operator()(double x1, double x2) const noexcept {
  return std::sqrt(B_ / (2.0 * pi)) * std::exp(-0.25 * B_ * (x1 * x1 + x2 * x2));
}

double TransverseGaussian::density(double r) const noexcept {
  return B_ / (2.0 * pi) * std::exp(-0.5 * B_ * r * r);
}

RadialTransverseDensity::RadialTransverseDensity(double B, const std::function<double(double)>& rho)
    : B_(B) {
  require_field(B);
  const double s = std::sqrt(B);
  composite_nodes(0.0, 14.0 / s, 16, 20, r_, w_);
  rho_.reserve(r_.size());
  for (double r : r_) {
    const double v = rho(r);
    if (!std::isfinite(v) || v < 0.0) throw InvalidField("transverse density must be finite and nonnegative");
    rho_.push_back(v);
  }
  if (std::abs(mass() - 1.0) > 1e-10) throw InvalidField("transverse density must have unit mass");

  std::vector<double> kw;
  graded_nodes(9.0 * s, 40, 20, k_, kw);
  c_.resize(k_.size());
  for (std::size_t i = 0; i < k_.size(); ++i) {
    const double f = fourier(k_[i]);
    c_[i] = kw[i] * f * f;
  }
}

RadialTransverseDensity RadialTransverseDensity::landau_ground(double B) {
  return RadialTransverseDensity(B, [g = TransverseGaussian(B)](double r) { return g.density(r); });
}

RadialTransverseDensity RadialTransverseDensity::landau_mixture(double B, double c0, double c1) {
  if (std::abs(c0 * c0 + c1 * c1 - 1.0) > 1e-12) throw DomainError("mixture needs c0^2 + c1^2 = 1");
  return RadialTransverseDensity(B, [B, c0, c1, g = TransverseGaussian(B)](double r) {
    const double a = c0 + c1 * (1.0 - 0.5 * B * r * r);
    return a * a * g.density(r);
  });
}

double RadialTransverseDensity::mass() const {
  double s = 0.0;
  for (std::size_t i = 0; i < r_.size(); ++i) s += w_[i] * rho_[i] * r_[i];
  return 2.0 * pi * s;
}

double RadialTransverseDensity::fourier(double k) const {
  double s = 0.0;
  for (std::size_t i = 0; i < r_.size(); ++i) s += w_[i] * rho_[i] * std::cyl_bessel_j(0.0, k * r_[i]) * r_[i];
  return 2.0 * pi * s;
}

std::complex<double> p0_kernel(double x1, double x2, double y1, double y2, double B) {
  const double d2 = (x1 - y1) * (x1 - y1) + (x2 - y2) * (x2 - y2);
  return B / (2.0 * pi) * std::exp(-0.25 * B * d2) * std::polar(1.0, 0.5 * B * (x1 * y2 - x2 * y1));
}

std::complex<double> i_kperp_kernel(double k1, double k2, double x1, double x2, double y1,
                                    double y2, double B) {
  const double wedge = k1 * (x2 - y2) - k2 * (x1 - y1);
  return p0_kernel(x1, x2, y1, y2, B) * std::exp(0.5 * wedge) *
         std::polar(1.0, 0.5 * (k1 * (x1 + y1) + k2 * (x2 + y2)));
}

double projected_phase_factor(double k1, double k2, double B) {
  require_field(B);
  return std::exp(-(k1 * k1 + k2 * k2) / (2.0 * B));
}

TransverseState lll_state(double B, std::vector<std::complex<double>> coefficients) {
  require_field(B);
  double norm2 = 0.0;
  for (const auto& c : coefficients) norm2 += std::norm(c);
  if (norm2 == 0.0) throw InvalidField("lowest Landau level state needs a nonzero coefficient");
  // ||zbar^m e^{-B r^2/4}||^2 = pi m! (2/B)^{m+1}
  std::vector<std::complex<double>> scaled(coefficients.size());
  for (std::size_t m = 0; m < coefficients.size(); ++m)
    scaled[m] = coefficients[m] /
                std::sqrt(norm2 * pi * std::tgamma(static_cast<double>(m) + 1.0) * std::pow(2.0 / B, m + 1.0));
  return [B, scaled](double x1, double x2) {
    const std::complex<double> zbar(x1, -x2);
    std::complex<double> s = 0.0, p = 1.0;
    for (const auto& c : scaled) {
      s += c * p;
      p *= zbar;
    }
    return s * std::exp(-0.25 * B * (x1 * x1 + x2 * x2));
  };
}

TransverseState first_excited_radial(double B) {
  return [g = TransverseGaussian(B), B](double x1, double x2) {
    return std::complex<double>((1.0 - 0.5 * B * (x1 * x1 + x2 * x2)) * g(x1, x2), 0.0);
  };
}

NormCheck i_kperp_norm_bound_check(double k1, double k2, double B, const TransverseState& psi) {
  require_field(B);
  const double coarse = i_kperp_ratio(k1, k2, B, psi, 4, 6);
  const double fine = i_kperp_ratio(k1, k2, B, psi, 5, 8);
  const double err = std::abs(fine - coarse);
  if (err > 1e-8 * fine) throw QuadratureError("I_k norm quadrature did not converge");
  NormCheck c;
  c.value = fine;
  c.bound = 2.0 * std::exp((k1 * k1 + k2 * k2) / (4.0 * B));
  c.margin = c.bound - c.value;
  c.quadrature_error = err;
  c.pass = c.value <= c.bound + err;
  return c;
}

double effective_potential(double z, double B) {
  require_field(B);
  const double s = std::sqrt(B);
  return 0.5 * std::sqrt(pi) * s * special::erfcx(0.5 * s * std::abs(z));
}

double effective_potential_fourier(double k, double B) {
  require_field(B);
  if (k == 0.0) throw DomainError("U(k;B) diverges at k = 0");
  const double x = k * k / B;
  if (x < 1e-30) return pi * (-special::euler_gamma - (2.0 * std::log(std::abs(k)) - std::log(B)));
  return pi * special::scaled_expint_e1(x);
}

double effective_potential_general(const RadialTransverseDensity& rho, double z) {
  const auto k = rho.potential_nodes();
  const auto c = rho.potential_weights();
  const double a = std::abs(z);
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double e = k[i] * a;
    if (e < 745.0) s += c[i] * std::exp(-e);
  }
  return s;
}

double transverse_kinetic(double B) {
  require_field(B);
  return B;
}

}  // namespace magpol
