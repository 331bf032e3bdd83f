#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace invmetric {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorCode {
  DegenerateInput,
  DomainViolation,
  NonConvergence,
  Unsupported,
  InvalidDomain,
  BranchViolation,
  SelfTestFailure,
  InsufficientSamples,
  NoFiniteConstant,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::BranchViolation: return "BranchViolation";
    case ErrorCode::SelfTestFailure: return "SelfTestFailure";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NoFiniteConstant: return "NoFiniteConstant";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

/// Hermitian product <a, b> = sum a_i conj(b_i).
inline cplx hermitian(const CVec& a, const CVec& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

inline double norm2(const CVec& a) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return std::sqrt(s);
}

inline CVec operator-(const CVec& a, const CVec& b) {
  CVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline CVec operator+(const CVec& a, const CVec& b) {
  CVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline CVec operator*(cplx s, const CVec& a) {
  CVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

// Hyperbolic distances in tanh^-1 scale. All three use
// atanh(m) = log1p(m) - log(1 - m^2) / 2 with 1 - m^2 formed as a product,
// which keeps full relative precision for points close to the boundary.

/// Poincare distance on the unit disc.
inline double disc_distance(cplx z, cplx w) {
  if (z == w) return 0.0;
  const double az = std::abs(z), aw = std::abs(w);
  const double dz = (1.0 - az) * (1.0 + az);
  const double dw = (1.0 - aw) * (1.0 + aw);
  const double den = std::norm(1.0 - std::conj(z) * w);
  const double m = std::min(1.0, std::abs(z - w) / std::sqrt(den));
  return std::log1p(m) - 0.5 * std::log(dz * dw / den);
}

/// Hyperbolic distance on the upper half-plane Im > 0.
inline double upper_half_plane_distance(cplx a, cplx b) {
  if (a == b) return 0.0;
  const double den = std::norm(a - std::conj(b));
  const double m = std::min(1.0, std::abs(a - b) / std::sqrt(den));
  return std::log1p(m) - 0.5 * std::log(4.0 * a.imag() * b.imag() / den);
}

/// Hyperbolic distance on the right half-plane Re > 0.
inline double right_half_plane_distance(cplx a, cplx b) {
  return upper_half_plane_distance(I * a, I * b);
}

/// Mobius scale m = tanh(distance).
inline double mobius_scale(double distance) { return std::tanh(distance); }

}  // namespace invmetric
