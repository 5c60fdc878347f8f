#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "geometry.hpp"

namespace freeinterp {

using ParamValue = std::variant<double, std::string>;
using GeneratorParams = std::map<std::string, ParamValue>;

/// Exact log pseudo-hyperbolic distance between two members of a sequence.
/// Used for partner points whose distance is below double resolution.
struct PairLink {
  std::size_t i = 0;
  std::size_t j = 0;
  double log_distance = 0.0;  ///< log |b_{lam_i}(lam_j)| < 0
};

/// Finite truncation of a Blaschke sequence. Points are pairwise distinct;
/// two points may share coordinates only when an exact link separates them.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<DiskPoint> points, std::string label = {},
                    GeneratorParams params = {}, std::vector<PairLink> links = {});

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const DiskPoint& operator[](std::size_t i) const { return points_[i]; }
  std::span<const DiskPoint> points() const noexcept { return points_; }
  const std::string& label() const noexcept { return label_; }
  const GeneratorParams& generator_params() const noexcept { return params_; }
  const std::vector<PairLink>& links() const noexcept { return links_; }

  /// log |b_{lam_i}(lam_j)|, honoring exact links.
  double log_distance(std::size_t i, std::size_t j) const;
  /// Sum of (1 - |lam|).
  double blaschke_sum() const;

  /// Sub-sequence of the given indices; links between kept points survive.
  Sequence subset(std::span<const std::size_t> indices, std::string label = {}) const;

 private:
  std::vector<DiskPoint> points_;
  std::string label_;
  GeneratorParams params_;
  std::vector<PairLink> links_;
  std::map<std::pair<std::size_t, std::size_t>, double> link_index_;
};

/// log delta_lam = sum over mu != lam of log|b_lam(mu)|, accumulated in the
/// log domain. Zero for a singleton. Throws NonFinite on a vanishing factor.
double log_blaschke_at(const Sequence& seq, std::size_t idx);
/// log delta_lam for every point.
std::vector<double> log_blaschke_all(const Sequence& seq);
/// delta(Lambda) = min pairwise |b|; 1 for a singleton (empty infimum).
double separation_constant(const Sequence& seq);

/// lam_n = (1 - q^n) e^{i theta}, n = 1..count.
Sequence gen_radial(double ratio, std::size_t count, double theta = 0.0, double guard = 0.0);

/// Points with 1-|lam_n| = q^n inside a Stolz angle at e^{i theta}; the angular
/// offset alternates in sign with size spread * q^n. Every point is checked
/// against the Stolz angle of the given aperture.
Sequence gen_stolz(double ratio, std::size_t count, double theta = 0.0,
                   double spread = 1.0, double aperture = 2.0);

/// Pairwise-disjoint tangent arcs. Default co-radii 1-|lam_n| = 1/(16 (n+1)^3),
/// centres packed greedily from angle 0 with relative slack.
Sequence gen_disjoint_tangent(std::size_t count);
Sequence gen_disjoint_tangent(std::span<const double> co_radii, double slack = 0.25);

/// Pairwise-disjoint shadow arcs for the given co-radii.
Sequence gen_disjoint_shadow(std::span<const double> co_radii, double slack = 0.25);

/// Random sequence with delta(Lambda) >= min_separation; 1-|lam| is
/// log-uniform in [min_co_radius, 1). Deterministic for a given seed.
Sequence gen_random_separated(std::size_t count, double min_separation, std::uint64_t seed,
                              double min_co_radius = 1e-4);

/// Centres for arcs of the given half-widths packed around the circle so
/// that consecutive arcs leave a gap of slack * (h_n + h_{n+1}).
/// Throws CapacityExceeded when they do not fit.
std::vector<double> pack_arc_centers(std::span<const double> half_widths, double slack);

/// Lambda_1 followed by radial partners lam'_n with
/// |b_{lam'_n}(lam_n)| = exp(-eps_n / (1 - |lam_n|)) exactly (recorded as links).
Sequence attach_partner_points(const Sequence& seq, std::span<const double> eps);

/// Two-point clusters over a base with tangent-arc disjointness, requiring
/// every partner distance to be at most delta.
Sequence intns_family(const Sequence& base, std::span<const double> eps, double delta = 0.5);

struct CnTrend {
  double first_quartile_max = 0.0;
  double last_quartile_max = 0.0;
  bool decreasing = true;  ///< last quartile max <= first quartile max
};

struct ClassificationReport {
  double blaschke_sum = 0.0;
  double separation_constant = 1.0;
  std::vector<double> terms_cn;  ///< (1-|lam|) log(1/delta_lam), input order
  CnTrend cn_trend;
  double cnn_max = 0.0;
  double cs_sum = 0.0;
  bool truncation_limited = true;
};

ClassificationReport classify(const Sequence& seq);

/// Partition by dyadic-square family (index 0 holds family 1).
std::array<Sequence, 4> split_four_families(const Sequence& seq);

/// Smallest |b_z(w)| over pairs from distinct squares of the same family;
/// nullopt when no such pair exists.
std::optional<double> family_square_separation(const Sequence& seq);

/// True when every pair of tangent arcs is disjoint.
bool tangent_arcs_disjoint(const Sequence& seq);
/// True when every pair of shadow arcs is disjoint.
bool shadow_arcs_disjoint(const Sequence& seq);

}  // namespace freeinterp
