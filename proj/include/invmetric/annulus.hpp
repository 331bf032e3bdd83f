#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "invmetric/core.hpp"
#include "invmetric/domains.hpp"

namespace invmetric {

/// Green function of A_r = {1/r < |z| < r}, positive with a -log|z - a| pole.
///
/// Evaluated on u = z/r in {q < |u| < 1}, q = 1/r^2, through the product
///   P(u, a) = (1 - u/a) prod_{k>=1} (1 - q^{2k} u/a)(1 - q^{2k} a/u),
///   g(u, a) = -log|P(u, a) / P(u, 1/conj(a))| + log|a| log(|u|/q) / log q.
class AnnulusGreen {
 public:
  explicit AnnulusGreen(double r, double eps = 1e-17) : r_(Annulus(r).r), q_(1.0 / (r * r)) {
    // q^{2k} / q below eps bounds every factor's deviation from 1.
    const double k = 0.5 * (std::log(eps) / std::log(q_) + 1.0);
    terms_ = static_cast<int>(std::ceil(std::max(1.0, k)));
    if (terms_ > 200000) fail(ErrorCode::NonConvergence, "annulus too thin for the Green product");
  }

  double r() const { return r_; }
  int terms() const { return terms_; }

  double operator()(cplx z, cplx a) const {
    const cplx u = z / r_, b = a / r_;
    const cplx b_reflected = 1.0 / std::conj(b);
    double g = -(log_abs_product(u, b) - log_abs_product(u, b_reflected));
    g += std::log(std::abs(b)) / std::log(q_) * std::log(std::abs(u) / q_);
    return g;
  }

  /// Largest |g| over `samples` points on each boundary circle, for a few poles.
  double boundary_residual(int samples = 64) const {
    double worst = 0.0;
    const double radii[] = {1.0 / r_ * std::pow(r_, 0.3), 1.0, std::pow(r_, 0.7)};
    for (double rho : radii) {
      for (int j = 0; j < 4; ++j) {
        const cplx a = std::polar(rho, 0.4 + 1.3 * j);
        for (int i = 0; i < samples; ++i) {
          const double t = 2.0 * pi * (i + 0.5) / samples;
          worst = std::max(worst, std::abs((*this)(std::polar(r_, t), a)));
          worst = std::max(worst, std::abs((*this)(std::polar(1.0 / r_, t), a)));
        }
      }
    }
    return worst;
  }

 private:
  double log_abs_product(cplx u, cplx a) const {
    double s = std::log(std::abs(1.0 - u / a));
    double qk = 1.0;
    const double q2 = q_ * q_;
    for (int k = 1; k <= terms_; ++k) {
      qk *= q2;
      s += std::log(std::abs((1.0 - qk * u / a) * (1.0 - qk * a / u)));
    }
    return s;
  }

  double r_;
  double q_;
  int terms_ = 1;
};

}  // namespace invmetric
