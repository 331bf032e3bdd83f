#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "invmetric/core.hpp"
#include "invmetric/domains.hpp"

namespace invmetric {

/// Evaluatable conformal bijection with derivative and inverse.
class ConformalMap {
 public:
  using Fn = std::function<cplx(cplx)>;

  ConformalMap(std::string kind, PlanarDomain source, PlanarDomain target, Fn evaluate, Fn derivative,
               Fn inverse, double accuracy = 0.0, std::optional<cplx> base_point = std::nullopt)
      : kind_(std::move(kind)),
        source_(std::move(source)),
        target_(std::move(target)),
        evaluate_(std::move(evaluate)),
        derivative_(std::move(derivative)),
        inverse_(std::move(inverse)),
        accuracy_(accuracy),
        base_point_(base_point) {}

  cplx operator()(cplx z) const { return evaluate_(z); }
  cplx evaluate(cplx z) const { return evaluate_(z); }
  cplx derivative(cplx z) const { return derivative_(z); }
  cplx inverse(cplx w) const { return inverse_(w); }

  const std::string& kind() const { return kind_; }
  const PlanarDomain& source() const { return source_; }
  const PlanarDomain& target() const { return target_; }
  double accuracy() const { return accuracy_; }
  /// z0 with evaluate(z0) = 0 and derivative(z0) > 0, when the map is normalized.
  std::optional<cplx> base_point() const { return base_point_; }

 private:
  std::string kind_;
  PlanarDomain source_;
  PlanarDomain target_;
  Fn evaluate_;
  Fn derivative_;
  Fn inverse_;
  double accuracy_;
  std::optional<cplx> base_point_;
};

inline const HalfPlane upper_half_plane{I};
inline const HalfPlane right_half_plane{cplx(1.0, 0.0)};

/// z -> (z - a) / (1 - conj(a) z).
inline ConformalMap mobius_disc_automorphism(cplx a) {
  if (!(std::abs(a) < 1.0)) fail(ErrorCode::DegenerateInput, "mobius parameter must satisfy |a| < 1");
  const cplx ab = std::conj(a);
  const double s = 1.0 - std::norm(a);
  return ConformalMap(
      "mobius", UnitDisc{}, UnitDisc{}, [=](cplx z) { return (z - a) / (1.0 - ab * z); },
      [=](cplx z) { return s / ((1.0 - ab * z) * (1.0 - ab * z)); },
      [=](cplx w) { return (w + a) / (1.0 + ab * w); }, 0.0, a);
}

namespace closed {

/// Upper half-plane -> unit disc, z -> (z - i) / (z + i).
inline ConformalMap cayley() {
  auto check = [](cplx z) {
    if (z == -I) fail(ErrorCode::BranchViolation, "cayley pole at -i");
  };
  return ConformalMap(
      "cayley", upper_half_plane, UnitDisc{},
      [=](cplx z) {
        check(z);
        return (z - I) / (z + I);
      },
      [=](cplx z) {
        check(z);
        return 2.0 * I / ((z + I) * (z + I));
      },
      [](cplx w) {
        if (w == cplx(1.0)) fail(ErrorCode::BranchViolation, "cayley inverse pole at 1");
        return I * (1.0 + w) / (1.0 - w);
      },
      0.0, I);
}

/// Sector {|arg z| < theta} -> right half-plane, z -> z^(pi / (2 theta)), principal branch.
inline ConformalMap sector(double theta) {
  const Sector dom(theta);
  const double k = pi / (2.0 * theta);
  auto check = [=](cplx z) {
    if (z == cplx(0.0) || (z.imag() == 0.0 && z.real() < 0.0))
      fail(ErrorCode::BranchViolation, "sector map input on the branch cut");
  };
  return ConformalMap(
      "sector", dom, right_half_plane,
      [=](cplx z) {
        check(z);
        return std::exp(k * std::log(z));
      },
      [=](cplx z) {
        check(z);
        return k * std::exp((k - 1.0) * std::log(z));
      },
      [=](cplx w) {
        if (w == cplx(0.0) || (w.imag() == 0.0 && w.real() < 0.0))
          fail(ErrorCode::BranchViolation, "sector inverse input on the branch cut");
        return std::exp(std::log(w) / k);
      });
}

/// Slit plane C \ [0, inf) -> upper half-plane, z -> i sqrt(-z) (principal root of -z).
inline ConformalMap slit_sqrt() {
  auto check = [](cplx z) {
    if (z.imag() == 0.0 && z.real() >= 0.0) fail(ErrorCode::BranchViolation, "slit map input on the cut [0, inf)");
  };
  return ConformalMap(
      "slit_sqrt", SlitPlane{}, upper_half_plane,
      [=](cplx z) {
        check(z);
        return I * std::sqrt(-z);
      },
      [=](cplx z) {
        check(z);
        return -I / (2.0 * std::sqrt(-z));
      },
      [](cplx s) {
        if (!(s.imag() > 0.0)) fail(ErrorCode::BranchViolation, "slit inverse input not in the upper half-plane");
        return s * s;
      });
}

/// Disc(c, r) -> unit disc, z -> (z - c) / r.
inline ConformalMap disc_scale(cplx c, double r) {
  return ConformalMap(
      "disc_scale", make_disc(c, r), UnitDisc{}, [=](cplx z) { return (z - c) / r; },
      [=](cplx) { return cplx(1.0 / r); }, [=](cplx w) { return c + r * w; }, 0.0, c);
}

/// Lens UnitDisc ∩ Disc(1, rho) -> unit disc, normalized at z0 (closed form: Mobius to a sector,
/// power map to the right half-plane, Cayley-type map to the disc).
inline ConformalMap lens(double rho, cplx z0) {
  if (!(rho > 0 && rho < std::sqrt(2.0))) fail(ErrorCode::DegenerateInput, "lens requires 0 < rho < sqrt 2");
  if (!(std::abs(z0) < 1.0 && std::abs(z0 - 1.0) < rho)) fail(ErrorCode::DomainViolation, "lens base point outside");
  const double x = 1.0 - 0.5 * rho * rho;
  const double y = rho * std::sqrt(1.0 - 0.25 * rho * rho);
  const cplx cp(x, y), cm(x, -y);
  auto mob = [=](cplx z) { return (z - cp) / (z - cm); };
  auto dmob = [=](cplx z) { return (cp - cm) / ((z - cm) * (z - cm)); };
  const cplx u1 = mob(1.0) / std::abs(mob(1.0));
  const cplx u2 = mob(1.0 - rho) / std::abs(mob(1.0 - rho));
  cplx bis = (u1 + u2) / std::abs(u1 + u2);
  double half = std::acos(std::clamp((u1 * std::conj(bis)).real(), -1.0, 1.0));
  if (std::abs(std::arg(mob(z0) / bis)) >= half) {
    bis = -bis;
    half = pi - half;
  }
  const double k = pi / (2.0 * half);
  const cplx rot = std::conj(bis);
  auto to_half = [=](cplx z) { return std::exp(k * std::log(rot * mob(z))); };
  auto dto_half = [=](cplx z) {
    const cplx m = rot * mob(z);
    return k * std::exp((k - 1.0) * std::log(m)) * rot * dmob(z);
  };
  const cplx h0 = to_half(z0);
  // Right half-plane -> disc with h0 -> 0: (h - h0) / (h + conj(h0)), rotated so phi'(z0) > 0.
  const cplx d0 = dto_half(z0) / (h0 + std::conj(h0));
  const cplx phase = std::conj(d0) / std::abs(d0);
  auto eval = [=](cplx z) {
    const cplx h = to_half(z);
    return phase * (h - h0) / (h + std::conj(h0));
  };
  auto deriv = [=](cplx z) {
    const cplx h = to_half(z);
    const cplx s = h + std::conj(h0);
    return phase * (h0 + std::conj(h0)) / (s * s) * dto_half(z);
  };
  auto inv = [=](cplx w) {
    const cplx v = w / phase;
    const cplx h = (h0 + v * std::conj(h0)) / (1.0 - v);
    const cplx m = std::exp(std::log(h) / k);
    const cplx mz = m / rot;  // = (z - cp) / (z - cm)
    return (cp - mz * cm) / (1.0 - mz);
  };
  return ConformalMap("lens", JordanDomain(curves::lens(rho)), UnitDisc{}, eval, deriv, inv, 0.0, z0);
}

}  // namespace closed

/// Universal cover of the annulus {1/r < |z| < r} by the strip {|Re zeta| < log r}, z = exp(zeta).
struct AnnulusCover {
  double r;
  double h;  // log r, half-width of the strip

  explicit AnnulusCover(double modulus) : r(Annulus(modulus).r), h(std::log(modulus)) {}

  cplx lift(cplx z) const {
    if (!(std::abs(z) > 1.0 / r && std::abs(z) < r)) fail(ErrorCode::DomainViolation, "point not in annulus");
    return std::log(z);
  }
  cplx project(cplx zeta) const { return std::exp(zeta); }
  static constexpr cplx deck_shift() { return cplx(0.0, 2.0 * pi); }

  /// Hyperbolic density of the strip (disc normalization 1 / (1 - |z|^2)).
  double density(cplx zeta) const { return (pi / (4.0 * h)) / std::cos(pi * zeta.real() / (2.0 * h)); }

  /// Strip -> right half-plane, zeta -> exp(i pi zeta / (2h)).
  cplx to_half_plane(cplx zeta) const { return std::exp(I * pi * zeta / (2.0 * h)); }

  double strip_distance(cplx a, cplx b) const {
    return right_half_plane_distance(to_half_plane(a), to_half_plane(b));
  }
};

inline AnnulusCover annulus_cover(double r) { return AnnulusCover(r); }

}  // namespace invmetric
