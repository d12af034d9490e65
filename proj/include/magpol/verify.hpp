#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace magpol::verify {

struct InvariantResult {
  std::string name;
  bool pass = false;
  /// Measured quantity and the threshold it was held to.
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct Report {
  std::vector<InvariantResult> results;
  bool all_pass() const noexcept;
};

/// Complex integral over [-L, L]^2 by tensor Gauss-Legendre, doubling the
/// panel count until two successive values agree to `tol` (absolute).
/// `error` receives the last change.
std::complex<double> integrate_square(const std::function<std::complex<double>(double, double)>& f, double L,
                                      double tol, double* error = nullptr);

/// max |P0(x,y) - conj P0(y,x)| over random point pairs.
InvariantResult p0_hermiticity(double B, int samples, unsigned seed);
/// max |int P0(x,z) P0(z,y) dz - P0(x,y)| over `samples` random pairs.
InvariantResult p0_idempotency(double B, int samples, unsigned seed);
/// |int P0(z,x) e^{ik.x} P0(x,y) dx - e^{-|k|^2/2B} I_k(z,y)| at one (z, y).
InvariantResult phase_identity(double k1, double k2, double B);

/// Fast invariant suite over every module; each entry is independent.
Report run_suite();

}  // namespace magpol::verify
