#pragma once

#include <complex>
#include <cstdint>

#include "numeric.hpp"

namespace freeinterp {

/// A point of the open unit disk.
///
/// Stored in polar form as (1 - |z|, arg z) so that points very close to the
/// circle keep full relative precision in their distance to the boundary.
/// The origin has angle 0.
class DiskPoint {
 public:
  DiskPoint() = default;

  /// Throws Error(InvalidArgument) unless |z| < 1 - guard.
  static DiskPoint from_cartesian(double re, double im, double guard = 0.0);
  static DiskPoint from_polar(double modulus, double angle, double guard = 0.0);
  static DiskPoint from_co_radius(double co_radius, double angle,
                                  double guard = 0.0);

  double co_radius() const noexcept { return co_radius_; }
  double modulus() const noexcept { return 1.0 - co_radius_; }
  double angle() const noexcept { return angle_; }
  /// 1 - |z|^2, evaluated without cancellation.
  double one_minus_modulus_sq() const noexcept {
    return co_radius_ * (2.0 - co_radius_);
  }
  double re() const noexcept { return modulus() * std::cos(angle_); }
  double im() const noexcept { return modulus() * std::sin(angle_); }
  std::complex<double> value() const noexcept { return std::polar(modulus(), angle_); }

  friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

 private:
  DiskPoint(double co_radius, double angle) : co_radius_(co_radius), angle_(angle) {}

  double co_radius_ = 1.0;
  double angle_ = 0.0;
};

/// Closed arc {e^{it} : |t - center| <= half_width} with half_width in (0, pi].
class CircleArc {
 public:
  CircleArc() = default;
  /// half_width is capped at pi; non-positive widths are rejected.
  CircleArc(double center, double half_width);

  double center() const noexcept { return center_; }
  double half_width() const noexcept { return half_width_; }
  bool is_full() const noexcept { return half_width_ >= kPi; }
  /// Normalized measure sigma(arc) = min(1, half_width / pi).
  double measure() const noexcept { return half_width_ / kPi; }
  bool contains(double angle) const noexcept;

 private:
  double center_ = 0.0;
  double half_width_ = kPi;
};

/// sigma-measure of the intersection of two arcs.
double overlap_measure(const CircleArc& a, const CircleArc& b) noexcept;
bool arcs_disjoint(const CircleArc& a, const CircleArc& b) noexcept;

struct StolzAngle {
  double vertex_angle = 0.0;
  double aperture = 2.0;  ///< alpha > 1
};

struct DyadicSquare {
  int n = 0;
  std::int64_t k = 0;
  friend bool operator==(const DyadicSquare&, const DyadicSquare&) = default;
};

/// Möbius factor b_lam(z) = (|lam|/lam)(lam - z)/(1 - conj(lam) z); b_0(z) = z.
std::complex<double> mobius(const DiskPoint& lam, const DiskPoint& z);

/// |z - w|^2 and |1 - conj(z) w|^2, both without cancellation.
struct PairGeometry {
  double diff_sq;
  double denom_sq;
};
PairGeometry pair_geometry(const DiskPoint& z, const DiskPoint& w) noexcept;

/// |b_z(w)| in [0, 1).
double pseudo_hyperbolic(const DiskPoint& z, const DiskPoint& w) noexcept;
/// 1 - |b_z(w)|^2 = (1-|z|^2)(1-|w|^2)/|1 - conj(z) w|^2.
double pseudo_hyperbolic_complement_sq(const DiskPoint& z, const DiskPoint& w) noexcept;
/// log |b_z(w)|; -inf when z == w.
double log_pseudo_hyperbolic(const DiskPoint& z, const DiskPoint& w) noexcept;

/// Shadow arc: half-width pi(1 - |lam|).
CircleArc shadow_arc(const DiskPoint& lam);
/// Tangent arc: half-width pi sqrt(1 - |lam|).
CircleArc tangent_arc(const DiskPoint& lam);

/// |z - zeta| <= alpha (1 - |z|^2).
bool stolz_contains(const StolzAngle& gamma, const DiskPoint& z) noexcept;
/// Half-width of the set of boundary angles whose Stolz angle contains z.
/// The set is an arc centred at arg z; the result is pi when it is the circle.
double stolz_visibility_half_width(const DiskPoint& z, double aperture) noexcept;

/// Q_{n,k} with 1 - 2^-n <= |z| < 1 - 2^-(n+1), arg z in (2pi/2^n)[k, k+1).
/// Throws Error(InvalidArgument) when n would exceed 62.
DyadicSquare square_of_point(const DiskPoint& z);
/// Families 1..4 for (n even, k even), (even, odd), (odd, even), (odd, odd).
int family_index(const DyadicSquare& q) noexcept;

}  // namespace freeinterp
