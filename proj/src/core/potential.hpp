#pragma once

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "sequence.hpp"

namespace freeinterp {

struct StepPiece {
  CircleArc arc;
  double value = 0.0;  ///< >= 0
};

/// Piecewise-constant nonnegative weight on the circle. Overlapping pieces add.
class StepWeight {
 public:
  StepWeight() = default;
  explicit StepWeight(std::vector<StepPiece> pieces);

  void add(const CircleArc& arc, double value);
  std::span<const StepPiece> pieces() const noexcept { return pieces_; }
  bool empty() const noexcept { return pieces_.empty(); }

  /// L1 norm w.r.t. normalized arc length.
  double l1_norm() const;
  /// Pointwise value (sum over pieces containing the angle).
  double value_at(double angle) const;
  /// Copy with every value multiplied by factor >= 0.
  StepWeight scaled(double factor) const;

  struct Segment {
    double start;  ///< in [0, 2pi)
    double end;    ///< start < end <= 2pi
    double value;
  };
  /// Disjoint segments covering [0, 2pi) with the summed value on each.
  std::vector<Segment> flatten() const;

 private:
  std::vector<StepPiece> pieces_;
};

struct Atom {
  double angle = 0.0;
  double mass = 0.0;  ///< > 0
};

class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(std::vector<Atom> atoms);

  void add(double angle, double mass);
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  bool empty() const noexcept { return atoms_.empty(); }
  double total_mass() const;
  AtomicMeasure scaled(double factor) const;

 private:
  std::vector<Atom> atoms_;
};

/// Positive finite measure ac * dsigma + sing.
struct Measure {
  StepWeight ac;
  AtomicMeasure sing;

  double total_mass() const { return ac.l1_norm() + sing.total_mass(); }
  Measure scaled(double factor) const { return {ac.scaled(factor), sing.scaled(factor)}; }
};

/// P(z, zeta) = (1 - |z|^2)/|zeta - z|^2 at zeta = e^{i angle}.
double poisson_kernel(const DiskPoint& z, double zeta_angle) noexcept;
/// Conjugate kernel Im((zeta + z)/(zeta - z)).
double conjugate_kernel(const DiskPoint& z, double zeta_angle) noexcept;

/// Harmonic measure of the arc seen from z: integral of P(z, .) over the arc
/// against normalized arc length, in closed form.
double harmonic_measure(const CircleArc& arc, const DiskPoint& z) noexcept;
/// Integral of the conjugate kernel over the arc, closed form.
double conjugate_arc_integral(const CircleArc& arc, const DiskPoint& z) noexcept;
/// Same as harmonic_measure, by adaptive Gauss-Kronrod quadrature split at arg z.
double harmonic_measure_quadrature(const CircleArc& arc, const DiskPoint& z,
                                   double rel_tol = 1e-10);

/// P[mu](z) via closed-form arc integrals plus atoms.
double poisson_extend(const Measure& mu, const DiskPoint& z);
/// P[mu](z) with the absolutely continuous part integrated by quadrature.
double poisson_extend_quadrature(const Measure& mu, const DiskPoint& z);

struct PoissonEvaluation {
  double value = 0.0;       ///< closed form
  double quadrature = 0.0;  ///< adaptive quadrature
  bool accuracy_warning = false;  ///< relative disagreement above 1e-8
};
PoissonEvaluation poisson_extend_verified(const Measure& mu, const DiskPoint& z);

/// Integral of P(z, .) over the whole circle by adaptive quadrature.
double poisson_normalization_quadrature(const DiskPoint& z);

/// h(z) = integral of (zeta + z)/(zeta - z) dmu(zeta).
std::complex<double> herglotz(const Measure& mu, const DiskPoint& z);
/// H = (2 + h)^2.
std::complex<double> big_H(const Measure& mu, const DiskPoint& z);

/// Garnett decreasing weight phi(t) = (1 + t)^-2.
inline double garnett_phi(double t) noexcept { return 1.0 / ((1.0 + t) * (1.0 + t)); }

struct GarnettQuantities {
  std::vector<std::complex<double>> gamma;  ///< 1/(H(lam) phi(log(e/delta_lam)))
  std::vector<double> abs_H;
  std::vector<double> lower_bound;  ///< (1 + log(e/delta_lam))^2
  double max_abs_gamma = 0.0;
};

/// gamma_lam for every point. Throws HypothesisViolated when some point has
/// P[mu](lam) < log(1/delta_lam) - tolerance.
GarnettQuantities gamma_lambda(const Sequence& seq, const Measure& mu, double tolerance = 1e-9);

struct MaximalProfile {
  std::vector<double> grid;    ///< angles 2 pi j / G
  std::vector<double> values;  ///< M_Lambda on the grid
  double aperture = 2.0;
};

/// M_Lambda(zeta) = sup over lam in Gamma_alpha(zeta) of log(1/delta_lam), 0 on
/// an empty Stolz intersection, sampled on a uniform grid.
MaximalProfile maximal_function(const Sequence& seq, std::size_t grid_size, double aperture);

/// M_Lambda as an exact step function: each point is visible from an arc of
/// boundary angles, so M_Lambda is constant between arc endpoints.
StepWeight maximal_plateaus(const Sequence& seq, double aperture);

struct WeakL1Stats {
  double sup_t_sigma = 0.0;
  std::vector<std::pair<double, double>> tail;  ///< (t, t * sigma{M > t})
  double largest_t_value = 0.0;
};

/// Geometric ladder from the smallest positive value to twice the largest.
std::vector<double> default_t_samples(const MaximalProfile& profile, std::size_t count = 64);
WeakL1Stats weak_l1_stats(const MaximalProfile& profile, std::span<const double> t_samples);

struct HarnackResult {
  bool ok = true;
  bool lower_violated = false;
  bool upper_violated = false;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// ((1-|z|)/(1+|z|)) P[mu](0) <= P[mu](z) <= ((1+|z|)/(1-|z|)) P[mu](0).
HarnackResult harnack_check(const Measure& mu, const DiskPoint& z);

}  // namespace freeinterp
