#pragma once

#include <cmath>
#include <complex>
#include <random>

// Reference formulas written independently of the library code paths.
namespace oracle {

using cplx = std::complex<double>;

// Half the arccosh form of the hyperbolic distance (curvature -4 normalization).
inline double disc(cplx z, cplx w) {
  const double num = 2.0 * std::norm(z - w);
  const double den = (1.0 - std::norm(z)) * (1.0 - std::norm(w));
  return 0.5 * std::acosh(1.0 + num / den);
}

inline double upper_half_plane(cplx a, cplx b) {
  return 0.5 * std::acosh(1.0 + std::norm(a - b) / (2.0 * a.imag() * b.imag()));
}

inline cplx random_in_disc(std::mt19937_64& g, double radius = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(g));
  return std::polar(r, 2.0 * M_PI * u(g));
}

}  // namespace oracle
