#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace freeinterp {

DiskPoint DiskPoint::from_co_radius(double co_radius, double angle, double guard) {
  if (!std::isfinite(co_radius) || !std::isfinite(angle) || !(guard >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "disk point: non-finite coordinate");
  if (co_radius > 1.0) {
    // Negative moduli are rotated onto the positive ray.
    co_radius = 2.0 - co_radius;
    angle += kPi;
  }
  if (!(co_radius > guard))
    throw Error(ErrorCode::InvalidArgument,
                "disk point: 1-|z| = " + std::to_string(co_radius) +
                    " violates the boundary guard " + std::to_string(guard));
  if (co_radius < 0.0)
    throw Error(ErrorCode::InvalidArgument, "disk point outside the unit disk");
  return co_radius == 1.0 ? DiskPoint(1.0, 0.0) : DiskPoint(co_radius, wrap_angle(angle));
}

DiskPoint DiskPoint::from_polar(double modulus, double angle, double guard) {
  if (!std::isfinite(modulus))
    throw Error(ErrorCode::InvalidArgument, "disk point: non-finite modulus");
  if (modulus < 0.0) {
    modulus = -modulus;
    angle += kPi;
  }
  return from_co_radius(1.0 - modulus, angle, guard);
}

DiskPoint DiskPoint::from_cartesian(double re, double im, double guard) {
  if (!std::isfinite(re) || !std::isfinite(im))
    throw Error(ErrorCode::InvalidArgument, "disk point: non-finite coordinate");
  const double r = std::hypot(re, im);
  const double theta = r == 0.0 ? 0.0 : std::atan2(im, re);
  return from_co_radius(1.0 - r, theta, guard);
}

CircleArc::CircleArc(double center, double half_width) {
  if (!std::isfinite(center) || !(half_width > 0.0))
    throw Error(ErrorCode::InvalidArgument, "arc: half-width must be positive");
  center_ = wrap_angle(center);
  half_width_ = std::min(half_width, kPi);
}

bool CircleArc::contains(double angle) const noexcept {
  if (is_full()) return true;
  return std::abs(wrap_difference(angle - center_)) <= half_width_;
}

namespace {

double interval_overlap(double a0, double a1, double b0, double b1) noexcept {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace

double overlap_measure(const CircleArc& a, const CircleArc& b) noexcept {
  if (a.is_full()) return b.measure();
  if (b.is_full()) return a.measure();
  const double offset = wrap_difference(b.center() - a.center());
  double length = 0.0;
  for (int k = -1; k <= 1; ++k) {
    const double c = offset + k * kTwoPi;
    length += interval_overlap(-a.half_width(), a.half_width(), c - b.half_width(),
                               c + b.half_width());
  }
  return std::min(1.0, length / kTwoPi);
}

bool arcs_disjoint(const CircleArc& a, const CircleArc& b) noexcept {
  return std::abs(wrap_difference(a.center() - b.center())) >
         a.half_width() + b.half_width();
}

PairGeometry pair_geometry(const DiskPoint& z, const DiskPoint& w) noexcept {
  const double s1 = z.co_radius();
  const double s2 = w.co_radius();
  const double half = std::sin(0.5 * (z.angle() - w.angle()));
  const double cross = 4.0 * (1.0 - s1) * (1.0 - s2) * half * half;
  const double radial = s2 - s1;
  const double one_minus_prod = s1 + s2 - s1 * s2;
  return {radial * radial + cross, one_minus_prod * one_minus_prod + cross};
}

double pseudo_hyperbolic(const DiskPoint& z, const DiskPoint& w) noexcept {
  const auto g = pair_geometry(z, w);
  return std::min(std::sqrt(g.diff_sq / g.denom_sq), std::nextafter(1.0, 0.0));
}

double pseudo_hyperbolic_complement_sq(const DiskPoint& z, const DiskPoint& w) noexcept {
  const auto g = pair_geometry(z, w);
  return z.one_minus_modulus_sq() * w.one_minus_modulus_sq() / g.denom_sq;
}

double log_pseudo_hyperbolic(const DiskPoint& z, const DiskPoint& w) noexcept {
  const auto g = pair_geometry(z, w);
  const double ratio = g.diff_sq / g.denom_sq;
  if (ratio <= 0.25) return 0.5 * std::log(ratio);
  const double complement = z.one_minus_modulus_sq() * w.one_minus_modulus_sq() / g.denom_sq;
  return 0.5 * std::log1p(-complement);
}

std::complex<double> mobius(const DiskPoint& lam, const DiskPoint& z) {
  if (lam.co_radius() == 1.0) return z.value();
  const std::complex<double> l = lam.value();
  const std::complex<double> w = z.value();
  const std::complex<double> direct = (std::abs(l) / l) * (l - w) / (1.0 - std::conj(l) * w);
  // Phase from direct arithmetic, modulus from the cancellation-free form.
  const double modulus = pseudo_hyperbolic(lam, z);
  if (modulus == 0.0) return {0.0, 0.0};
  return std::polar(modulus, std::arg(direct));
}

CircleArc shadow_arc(const DiskPoint& lam) {
  return CircleArc(lam.angle(), kPi * lam.co_radius());
}

CircleArc tangent_arc(const DiskPoint& lam) {
  return CircleArc(lam.angle(), kPi * std::sqrt(lam.co_radius()));
}

bool stolz_contains(const StolzAngle& gamma, const DiskPoint& z) noexcept {
  const double s = z.co_radius();
  const double half = std::sin(0.5 * (z.angle() - gamma.vertex_angle));
  const double dist_sq = s * s + 4.0 * (1.0 - s) * half * half;
  const double bound = gamma.aperture * z.one_minus_modulus_sq();
  return dist_sq <= bound * bound;
}

double stolz_visibility_half_width(const DiskPoint& z, double aperture) noexcept {
  const double s = z.co_radius();
  if (s >= 1.0) return kPi;
  const double growth = aperture * (2.0 - s);
  const double x = s * s * (growth * growth - 1.0) / (4.0 * (1.0 - s));
  if (x >= 1.0) return kPi;
  if (x <= 0.0) return 0.0;
  return 2.0 * std::asin(std::sqrt(x));
}

DyadicSquare square_of_point(const DiskPoint& z) {
  int e = 0;
  const double m = std::frexp(z.co_radius(), &e);
  const int n = (m == 0.5) ? 1 - e : -e;
  if (n > 62)
    throw Error(ErrorCode::InvalidArgument, "dyadic square generation exceeds 62");
  const std::int64_t count = std::int64_t{1} << n;
  auto k = static_cast<std::int64_t>(std::floor(std::ldexp(z.angle() / kTwoPi, n)));
  k = std::clamp<std::int64_t>(k, 0, count - 1);
  return {n, k};
}

int family_index(const DyadicSquare& q) noexcept {
  const bool n_even = q.n % 2 == 0;
  const bool k_even = q.k % 2 == 0;
  if (n_even) return k_even ? 1 : 2;
  return k_even ? 3 : 4;
}

}  // namespace freeinterp
