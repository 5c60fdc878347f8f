#include "potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace freeinterp {

StepWeight::StepWeight(std::vector<StepPiece> pieces) {
  for (const auto& p : pieces) add(p.arc, p.value);
}

void StepWeight::add(const CircleArc& arc, double value) {
  if (!std::isfinite(value) || value < 0.0)
    throw Error(ErrorCode::InvalidArgument, "step weight values must be finite and >= 0");
  pieces_.push_back({arc, value});
}

double StepWeight::l1_norm() const {
  CompensatedSum sum;
  for (const auto& p : pieces_) sum.add(p.value * p.arc.measure());
  return sum.value();
}

double StepWeight::value_at(double angle) const {
  CompensatedSum sum;
  for (const auto& p : pieces_)
    if (p.arc.contains(angle)) sum.add(p.value);
  return sum.value();
}

StepWeight StepWeight::scaled(double factor) const {
  if (!(factor >= 0.0) || !std::isfinite(factor))
    throw Error(ErrorCode::InvalidArgument, "scale factor must be finite and >= 0");
  StepWeight out;
  out.pieces_.reserve(pieces_.size());
  for (const auto& p : pieces_) out.pieces_.push_back({p.arc, p.value * factor});
  return out;
}

std::vector<StepWeight::Segment> StepWeight::flatten() const {
  std::vector<double> cuts{0.0};
  for (const auto& p : pieces_) {
    if (p.arc.is_full()) continue;
    cuts.push_back(wrap_angle(p.arc.center() - p.arc.half_width()));
    cuts.push_back(wrap_angle(p.arc.center() + p.arc.half_width()));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Segment> out;
  out.reserve(cuts.size());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double start = cuts[i];
    const double end = i + 1 < cuts.size() ? cuts[i + 1] : kTwoPi;
    if (!(end > start)) continue;
    out.push_back({start, end, value_at(0.5 * (start + end))});
  }
  return out;
}

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) {
  for (const auto& a : atoms) add(a.angle, a.mass);
}

void AtomicMeasure::add(double angle, double mass) {
  if (!std::isfinite(mass) || mass < 0.0 || !std::isfinite(angle))
    throw Error(ErrorCode::InvalidArgument, "atom masses must be finite and >= 0");
  if (mass == 0.0) return;
  atoms_.push_back({wrap_angle(angle), mass});
}

double AtomicMeasure::total_mass() const {
  CompensatedSum sum;
  for (const auto& a : atoms_) sum.add(a.mass);
  return sum.value();
}

AtomicMeasure AtomicMeasure::scaled(double factor) const {
  if (!(factor >= 0.0) || !std::isfinite(factor))
    throw Error(ErrorCode::InvalidArgument, "scale factor must be finite and >= 0");
  AtomicMeasure out;
  for (const auto& a : atoms_) out.add(a.angle, a.mass * factor);
  return out;
}

namespace {

double boundary_distance_sq(const DiskPoint& z, double zeta_angle) noexcept {
  const double s = z.co_radius();
  const double half = std::sin(0.5 * (zeta_angle - z.angle()));
  return s * s + 4.0 * (1.0 - s) * half * half;
}

// Integral of P over [a, b] (angles relative to arg z, -pi <= a <= b <= pi)
// divided by 2 pi: (atan(k tan(b/2)) - atan(k tan(a/2)))/pi with
// k = (1+r)/(1-r), rewritten so that no tangent or large k appears.
double relative_piece(double a, double b, double s) noexcept {
  const double num = (2.0 - s) * s * std::sin(0.5 * (b - a));
  const double den = s * s * std::cos(0.5 * a) * std::cos(0.5 * b) +
                     (2.0 - s) * (2.0 - s) * std::sin(0.5 * a) * std::sin(0.5 * b);
  return std::atan2(num, den) / kPi;
}

}  // namespace

double poisson_kernel(const DiskPoint& z, double zeta_angle) noexcept {
  return z.one_minus_modulus_sq() / boundary_distance_sq(z, zeta_angle);
}

double conjugate_kernel(const DiskPoint& z, double zeta_angle) noexcept {
  return 2.0 * z.modulus() * std::sin(z.angle() - zeta_angle) /
         boundary_distance_sq(z, zeta_angle);
}

double harmonic_measure(const CircleArc& arc, const DiskPoint& z) noexcept {
  if (arc.is_full()) return 1.0;
  const double s = z.co_radius();
  const double c = wrap_difference(arc.center() - z.angle());
  const double t1 = c - arc.half_width();
  const double t2 = c + arc.half_width();
  double total = 0.0;
  const double lo = std::max(t1, -kPi);
  const double hi = std::min(t2, kPi);
  if (lo < hi) total += relative_piece(lo, hi, s);
  if (t2 > kPi) total += relative_piece(-kPi, t2 - kTwoPi, s);
  if (t1 < -kPi) total += relative_piece(t1 + kTwoPi, kPi, s);
  return std::clamp(total, 0.0, 1.0);
}

double conjugate_arc_integral(const CircleArc& arc, const DiskPoint& z) noexcept {
  if (arc.is_full()) return 0.0;
  const double s = z.co_radius();
  const double c = wrap_difference(arc.center() - z.angle());
  auto log_dist = [s](double u) {
    const double half = std::sin(0.5 * u);
    return std::log(s * s + 4.0 * (1.0 - s) * half * half);
  };
  return (log_dist(c - arc.half_width()) - log_dist(c + arc.half_width())) / kTwoPi;
}

double harmonic_measure_quadrature(const CircleArc& arc, const DiskPoint& z, double rel_tol) {
  auto integrand = [&z](double t) { return poisson_kernel(z, t) / kTwoPi; };
  double lo = 0.0;
  double hi = 0.0;
  double peak = 0.0;
  if (arc.is_full()) {
    peak = z.angle();
    lo = peak - kPi;
    hi = peak + kPi;
  } else {
    lo = arc.center() - arc.half_width();
    hi = arc.center() + arc.half_width();
    peak = arc.center() + wrap_difference(z.angle() - arc.center());
  }
  if (peak > lo && peak < hi)
    return integrate_adaptive(integrand, lo, peak, rel_tol) +
           integrate_adaptive(integrand, peak, hi, rel_tol);
  return integrate_adaptive(integrand, lo, hi, rel_tol);
}

double poisson_normalization_quadrature(const DiskPoint& z) {
  return harmonic_measure_quadrature(CircleArc(0.0, kPi), z);
}

namespace {

double atoms_poisson(const AtomicMeasure& sing, const DiskPoint& z) {
  CompensatedSum sum;
  for (const auto& a : sing.atoms()) sum.add(a.mass * poisson_kernel(z, a.angle));
  return sum.value();
}

}  // namespace

double poisson_extend(const Measure& mu, const DiskPoint& z) {
  CompensatedSum sum;
  for (const auto& p : mu.ac.pieces())
    if (p.value > 0.0) sum.add(p.value * harmonic_measure(p.arc, z));
  sum.add(atoms_poisson(mu.sing, z));
  return sum.value();
}

double poisson_extend_quadrature(const Measure& mu, const DiskPoint& z) {
  CompensatedSum sum;
  for (const auto& p : mu.ac.pieces())
    if (p.value > 0.0) sum.add(p.value * harmonic_measure_quadrature(p.arc, z));
  sum.add(atoms_poisson(mu.sing, z));
  return sum.value();
}

PoissonEvaluation poisson_extend_verified(const Measure& mu, const DiskPoint& z) {
  PoissonEvaluation e;
  e.value = poisson_extend(mu, z);
  e.quadrature = poisson_extend_quadrature(mu, z);
  e.accuracy_warning =
      std::abs(e.value - e.quadrature) > 1e-8 * std::max(1.0, std::abs(e.value));
  return e;
}

std::complex<double> herglotz(const Measure& mu, const DiskPoint& z) {
  CompensatedSum im;
  for (const auto& p : mu.ac.pieces())
    if (p.value > 0.0) im.add(p.value * conjugate_arc_integral(p.arc, z));
  for (const auto& a : mu.sing.atoms()) im.add(a.mass * conjugate_kernel(z, a.angle));
  return {poisson_extend(mu, z), im.value()};
}

std::complex<double> big_H(const Measure& mu, const DiskPoint& z) {
  const auto t = 2.0 + herglotz(mu, z);
  return t * t;
}

GarnettQuantities gamma_lambda(const Sequence& seq, const Measure& mu, double tolerance) {
  GarnettQuantities out;
  const auto logs = log_blaschke_all(seq);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto h = herglotz(mu, seq[i]);
    const double needed = -logs[i];
    if (h.real() < needed - tolerance)
      throw Error(ErrorCode::HypothesisViolated,
                  "P[mu](lambda) < log(1/delta) at index " + std::to_string(i));
    const auto H = (2.0 + h) * (2.0 + h);
    const double bound = (2.0 + needed) * (2.0 + needed);  // (1 + log(e/delta))^2
    const auto gamma = 1.0 / (H * garnett_phi(1.0 + needed));
    out.gamma.push_back(gamma);
    out.abs_H.push_back(std::abs(H));
    out.lower_bound.push_back(bound);
    out.max_abs_gamma = std::max(out.max_abs_gamma, std::abs(gamma));
  }
  return out;
}

MaximalProfile maximal_function(const Sequence& seq, std::size_t grid_size, double aperture) {
  if (grid_size == 0 || !(aperture > 1.0))
    throw Error(ErrorCode::InvalidArgument, "maximal function: need grid >= 1, aperture > 1");
  std::vector<double> heights(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) heights[i] = -log_blaschke_at(seq, i);
  MaximalProfile prof;
  prof.aperture = aperture;
  prof.grid.resize(grid_size);
  prof.values.assign(grid_size, 0.0);
  for (std::size_t j = 0; j < grid_size; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(grid_size);
    prof.grid[j] = theta;
    const StolzAngle gamma{theta, aperture};
    double m = 0.0;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (heights[i] > m && stolz_contains(gamma, seq[i])) m = heights[i];
    prof.values[j] = m;
  }
  return prof;
}

StepWeight maximal_plateaus(const Sequence& seq, double aperture) {
  if (!(aperture > 1.0)) throw Error(ErrorCode::InvalidArgument, "aperture must exceed 1");
  std::vector<double> heights(seq.size());
  std::vector<CircleArc> visible(seq.size());
  std::vector<double> cuts{0.0};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    heights[i] = -log_blaschke_at(seq, i);
    const double v = stolz_visibility_half_width(seq[i], aperture);
    visible[i] = CircleArc(seq[i].angle(), v);
    if (!visible[i].is_full()) {
      cuts.push_back(wrap_angle(seq[i].angle() - v));
      cuts.push_back(wrap_angle(seq[i].angle() + v));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  StepWeight out;
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const double start = cuts[k];
    const double end = k + 1 < cuts.size() ? cuts[k + 1] : kTwoPi;
    if (!(end > start)) continue;
    const double mid = 0.5 * (start + end);
    double m = 0.0;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (heights[i] > m && visible[i].contains(mid)) m = heights[i];
    if (m > 0.0) out.add(CircleArc(mid, 0.5 * (end - start)), m);
  }
  return out;
}

std::vector<double> default_t_samples(const MaximalProfile& profile, std::size_t count) {
  double lo = 0.0;
  double hi = 0.0;
  for (double v : profile.values) {
    if (v <= 0.0) continue;
    lo = lo == 0.0 ? v : std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> out;
  if (hi == 0.0 || count == 0) return out;
  hi *= 2.0;
  if (count == 1) return {lo};
  const double ratio = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(i + 1 == count ? hi : lo * std::exp(ratio * static_cast<double>(i)));
  return out;
}

WeakL1Stats weak_l1_stats(const MaximalProfile& profile, std::span<const double> t_samples) {
  WeakL1Stats st;
  if (profile.values.empty()) return st;
  const double g = static_cast<double>(profile.values.size());
  double largest_t = -1.0;
  for (double t : t_samples) {
    const auto above = std::count_if(profile.values.begin(), profile.values.end(),
                                     [t](double v) { return v > t; });
    const double stat = t * static_cast<double>(above) / g;
    st.tail.emplace_back(t, stat);
    st.sup_t_sigma = std::max(st.sup_t_sigma, stat);
    if (t > largest_t) {
      largest_t = t;
      st.largest_t_value = stat;
    }
  }
  return st;
}

HarnackResult harnack_check(const Measure& mu, const DiskPoint& z) {
  HarnackResult r;
  const double s = z.co_radius();
  const double center = poisson_extend(mu, DiskPoint{});
  r.value = poisson_extend(mu, z);
  r.lower = center * s / (2.0 - s);
  r.upper = center * (2.0 - s) / s;
  constexpr double slack = 1e-11;
  r.lower_violated = r.value < r.lower * (1.0 - slack);
  r.upper_violated = r.value > r.upper * (1.0 + slack);
  r.ok = !r.lower_violated && !r.upper_violated;
  return r;
}

}  // namespace freeinterp
