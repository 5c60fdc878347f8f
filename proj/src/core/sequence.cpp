#include "sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "error.hpp"

namespace freeinterp {

namespace {

std::pair<std::size_t, std::size_t> link_key(std::size_t i, std::size_t j) {
  return i < j ? std::pair{i, j} : std::pair{j, i};
}

}  // namespace

Sequence::Sequence(std::vector<DiskPoint> points, std::string label, GeneratorParams params,
                   std::vector<PairLink> links)
    : points_(std::move(points)),
      label_(std::move(label)),
      params_(std::move(params)),
      links_(std::move(links)) {
  for (const auto& link : links_) {
    if (link.i == link.j || link.i >= points_.size() || link.j >= points_.size())
      throw Error(ErrorCode::InvalidArgument, "sequence link refers to invalid indices");
    if (!std::isfinite(link.log_distance) || !(link.log_distance < 0.0))
      throw Error(ErrorCode::InvalidArgument, "sequence link distance must be in (0, 1)");
    link_index_[link_key(link.i, link.j)] = link.log_distance;
  }

  std::vector<std::size_t> order(points_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto coords = [this](std::size_t i) {
    return std::pair{points_[i].co_radius(), points_[i].angle()};
  };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return coords(a) < coords(b); });
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start + 1;
    while (end < order.size() && coords(order[end]) == coords(order[start])) ++end;
    for (std::size_t a = start; a < end; ++a)
      for (std::size_t b = a + 1; b < end; ++b)
        if (!link_index_.contains(link_key(order[a], order[b])))
          throw Error(ErrorCode::DuplicatePoint,
                      "duplicate points at indices " + std::to_string(order[a]) + " and " +
                          std::to_string(order[b]));
    start = end;
  }
}

double Sequence::log_distance(std::size_t i, std::size_t j) const {
  if (i == j) throw Error(ErrorCode::InvalidArgument, "log_distance of a point to itself");
  if (!link_index_.empty()) {
    if (auto it = link_index_.find(link_key(i, j)); it != link_index_.end()) return it->second;
  }
  return log_pseudo_hyperbolic(points_[i], points_[j]);
}

double Sequence::blaschke_sum() const {
  CompensatedSum sum;
  for (const auto& p : points_) sum.add(p.co_radius());
  return sum.value();
}

Sequence Sequence::subset(std::span<const std::size_t> indices, std::string label) const {
  std::vector<DiskPoint> pts;
  std::map<std::size_t, std::size_t> remap;
  for (std::size_t idx : indices) {
    remap[idx] = pts.size();
    pts.push_back(points_.at(idx));
  }
  std::vector<PairLink> kept;
  for (const auto& link : links_) {
    auto a = remap.find(link.i);
    auto b = remap.find(link.j);
    if (a != remap.end() && b != remap.end())
      kept.push_back({a->second, b->second, link.log_distance});
  }
  return Sequence(std::move(pts), label.empty() ? label_ : std::move(label), params_,
                  std::move(kept));
}

double log_blaschke_at(const Sequence& seq, std::size_t idx) {
  if (idx >= seq.size()) throw Error(ErrorCode::InvalidArgument, "index out of range");
  CompensatedSum sum;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    if (j == idx) continue;
    const double term = seq.log_distance(idx, j);
    if (!std::isfinite(term))
      throw Error(ErrorCode::NonFinite,
                  "vanishing Blaschke factor between points " + std::to_string(idx) + " and " +
                      std::to_string(j));
    sum.add(term);
  }
  return std::min(0.0, sum.value());
}

std::vector<double> log_blaschke_all(const Sequence& seq) {
  std::vector<double> out(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) out[i] = log_blaschke_at(seq, i);
  return out;
}

double separation_constant(const Sequence& seq) {
  double best = 0.0;  // log of the infimum
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) best = std::min(best, seq.log_distance(i, j));
  return std::exp(best);
}

Sequence gen_radial(double ratio, std::size_t count, double theta, double guard) {
  if (!(ratio > 0.0 && ratio < 1.0) || count == 0)
    throw Error(ErrorCode::InvalidArgument, "radial: need 0 < q < 1 and N >= 1");
  std::vector<DiskPoint> pts;
  pts.reserve(count);
  for (std::size_t n = 1; n <= count; ++n)
    pts.push_back(DiskPoint::from_co_radius(std::pow(ratio, static_cast<double>(n)), theta, guard));
  return Sequence(std::move(pts), "radial",
                  {{"kind", std::string("radial")},
                   {"q", ratio},
                   {"n", static_cast<double>(count)},
                   {"theta", theta}});
}

Sequence gen_stolz(double ratio, std::size_t count, double theta, double spread,
                   double aperture) {
  if (!(ratio > 0.0 && ratio < 1.0) || count == 0 || !(spread >= 0.0) || !(aperture > 1.0))
    throw Error(ErrorCode::InvalidArgument, "stolz: invalid parameters");
  std::vector<DiskPoint> pts;
  pts.reserve(count);
  const StolzAngle gamma{theta, aperture};
  for (std::size_t n = 1; n <= count; ++n) {
    const double s = std::pow(ratio, static_cast<double>(n));
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    auto p = DiskPoint::from_co_radius(s, theta + sign * spread * s);
    if (!stolz_contains(gamma, p))
      throw Error(ErrorCode::InvalidArgument,
                  "stolz: point " + std::to_string(n) + " leaves the Stolz angle; reduce spread");
    pts.push_back(p);
  }
  return Sequence(std::move(pts), "stolz",
                  {{"kind", std::string("stolz")},
                   {"q", ratio},
                   {"n", static_cast<double>(count)},
                   {"theta", theta},
                   {"spread", spread},
                   {"aperture", aperture}});
}

std::vector<double> pack_arc_centers(std::span<const double> half_widths, double slack) {
  if (!(slack >= 0.0)) throw Error(ErrorCode::InvalidArgument, "packing slack must be >= 0");
  std::vector<double> centers;
  if (half_widths.empty()) return centers;
  centers.reserve(half_widths.size());
  const double grow = 1.0 + slack;
  double c = grow * half_widths[0];
  centers.push_back(c);
  for (std::size_t n = 1; n < half_widths.size(); ++n) {
    c += grow * (half_widths[n - 1] + half_widths[n]);
    centers.push_back(c);
  }
  const bool single_full = half_widths.size() == 1 && half_widths[0] >= kPi;
  if (!single_full && c + grow * half_widths.back() > kTwoPi)
    throw Error(ErrorCode::CapacityExceeded,
                "arcs of total normalized measure " +
                    std::to_string(std::accumulate(half_widths.begin(), half_widths.end(), 0.0) /
                                   kPi) +
                    " do not fit on the circle");
  return centers;
}

namespace {

Sequence packed_sequence(std::span<const double> co_radii, double slack, bool tangent,
                         std::string label) {
  std::vector<double> widths;
  widths.reserve(co_radii.size());
  for (double s : co_radii) {
    if (!(s > 0.0 && s <= 1.0))
      throw Error(ErrorCode::InvalidArgument, "co-radius must lie in (0, 1]");
    widths.push_back(std::min(kPi, kPi * (tangent ? std::sqrt(s) : s)));
  }
  const auto centers = pack_arc_centers(widths, slack);
  std::vector<DiskPoint> pts;
  pts.reserve(co_radii.size());
  for (std::size_t n = 0; n < co_radii.size(); ++n)
    pts.push_back(DiskPoint::from_co_radius(co_radii[n], centers[n]));
  Sequence seq(std::move(pts), label,
               {{"kind", label}, {"n", static_cast<double>(co_radii.size())}, {"slack", slack}});
  const bool ok = tangent ? tangent_arcs_disjoint(seq) : shadow_arcs_disjoint(seq);
  if (!ok) throw Error(ErrorCode::CapacityExceeded, label + ": post-check found overlapping arcs");
  return seq;
}

}  // namespace

Sequence gen_disjoint_tangent(std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "disjoint-tangent: need N >= 1");
  std::vector<double> co_radii(count);
  for (std::size_t n = 1; n <= count; ++n) {
    const double m = static_cast<double>(n + 1);
    co_radii[n - 1] = 1.0 / (16.0 * m * m * m);
  }
  return gen_disjoint_tangent(co_radii);
}

Sequence gen_disjoint_tangent(std::span<const double> co_radii, double slack) {
  return packed_sequence(co_radii, slack, true, "disjoint-tangent");
}

Sequence gen_disjoint_shadow(std::span<const double> co_radii, double slack) {
  return packed_sequence(co_radii, slack, false, "disjoint-shadow");
}

Sequence gen_random_separated(std::size_t count, double min_separation, std::uint64_t seed,
                              double min_co_radius) {
  if (count == 0 || !(min_separation > 0.0 && min_separation < 1.0) ||
      !(min_co_radius > 0.0 && min_co_radius < 1.0))
    throw Error(ErrorCode::InvalidArgument, "random-separated: invalid parameters");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_s(std::log(min_co_radius), 0.0);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::vector<DiskPoint> pts;
  const std::size_t max_attempts = 10000 * count;
  for (std::size_t attempt = 0; pts.size() < count; ++attempt) {
    if (attempt == max_attempts)
      throw Error(ErrorCode::CapacityExceeded, "random-separated: rejection sampling exhausted");
    const double s = std::min(1.0, std::exp(log_s(rng)));
    auto p = DiskPoint::from_co_radius(s, angle(rng));
    bool ok = true;
    for (const auto& q : pts)
      if (pseudo_hyperbolic(p, q) < min_separation) {
        ok = false;
        break;
      }
    if (ok) pts.push_back(p);
  }
  return Sequence(std::move(pts), "random-separated",
                  {{"kind", std::string("random-separated")},
                   {"n", static_cast<double>(count)},
                   {"min_separation", min_separation},
                   {"seed", static_cast<double>(seed)}});
}

Sequence attach_partner_points(const Sequence& seq, std::span<const double> eps) {
  if (eps.size() != seq.size())
    throw Error(ErrorCode::InvalidArgument, "partner eps must align with the sequence");
  const std::size_t n = seq.size();
  std::vector<DiskPoint> pts(seq.points().begin(), seq.points().end());
  std::vector<PairLink> links = seq.links();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(eps[k] > 0.0) || !std::isfinite(eps[k]))
      throw Error(ErrorCode::InvalidArgument, "partner eps must be positive and finite");
    const double s = seq[k].co_radius();
    const double exponent = eps[k] / s;
    if (!std::isfinite(exponent))
      throw Error(ErrorCode::Underflow,
                  "partner distance exp(-eps/(1-|lam|)) not representable at n = " +
                      std::to_string(k + 1));
    const double d = std::exp(-exponent);
    // (r' - r)/(1 - r r') = d with r' >= r, written for s' = 1 - r'.
    const double s_partner = s * -std::expm1(-exponent) / (1.0 + (1.0 - s) * d);
    if (!(s_partner > 0.0))
      throw Error(ErrorCode::Underflow,
                  "partner point falls on the circle at n = " + std::to_string(k + 1));
    pts.push_back(DiskPoint::from_co_radius(s_partner, seq[k].angle()));
    links.push_back({k, n + k, -exponent});
  }
  GeneratorParams params = seq.generator_params();
  params["partnered"] = std::string("true");
  return Sequence(std::move(pts), seq.label() + "+partners", std::move(params), std::move(links));
}

Sequence intns_family(const Sequence& base, std::span<const double> eps, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw Error(ErrorCode::InvalidArgument, "intns: delta must lie in (0, 1)");
  if (!tangent_arcs_disjoint(base))
    throw Error(ErrorCode::ArcsOverlap, "intns: base tangent arcs are not pairwise disjoint");
  if (eps.size() != base.size())
    throw Error(ErrorCode::InvalidArgument, "intns: eps must align with the base");
  for (std::size_t k = 0; k < base.size(); ++k)
    if (-eps[k] / base[k].co_radius() > std::log(delta))
      throw Error(ErrorCode::InvalidArgument,
                  "intns: partner distance exceeds delta at n = " + std::to_string(k + 1));
  return attach_partner_points(base, eps);
}

ClassificationReport classify(const Sequence& seq) {
  ClassificationReport rep;
  rep.blaschke_sum = seq.blaschke_sum();
  rep.separation_constant = separation_constant(seq);
  const auto logs = log_blaschke_all(seq);
  rep.terms_cn.resize(seq.size());
  CompensatedSum cs;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    rep.terms_cn[i] = seq[i].co_radius() * -logs[i];
    cs.add(rep.terms_cn[i]);
    rep.cnn_max = std::max(rep.cnn_max, rep.terms_cn[i]);
  }
  rep.cs_sum = cs.value();

  if (!seq.empty()) {
    std::vector<std::size_t> order(seq.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return seq[a].co_radius() > seq[b].co_radius();
    });
    const std::size_t q = std::max<std::size_t>(1, seq.size() / 4);
    for (std::size_t k = 0; k < q; ++k) {
      rep.cn_trend.first_quartile_max =
          std::max(rep.cn_trend.first_quartile_max, rep.terms_cn[order[k]]);
      rep.cn_trend.last_quartile_max =
          std::max(rep.cn_trend.last_quartile_max, rep.terms_cn[order[seq.size() - 1 - k]]);
    }
    rep.cn_trend.decreasing = rep.cn_trend.last_quartile_max <= rep.cn_trend.first_quartile_max;
  }
  return rep;
}

std::array<Sequence, 4> split_four_families(const Sequence& seq) {
  std::array<std::vector<std::size_t>, 4> groups;
  for (std::size_t i = 0; i < seq.size(); ++i)
    groups[family_index(square_of_point(seq[i])) - 1].push_back(i);
  std::array<Sequence, 4> out;
  for (int f = 0; f < 4; ++f)
    out[f] = seq.subset(groups[f], seq.label() + "/family" + std::to_string(f + 1));
  return out;
}

std::optional<double> family_square_separation(const Sequence& seq) {
  std::vector<DyadicSquare> squares(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) squares[i] = square_of_point(seq[i]);
  std::optional<double> best;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (squares[i] == squares[j] || family_index(squares[i]) != family_index(squares[j]))
        continue;
      const double d = std::exp(seq.log_distance(i, j));
      if (!best || d < *best) best = d;
    }
  return best;
}

namespace {

template <class ArcOf>
bool pairwise_disjoint(const Sequence& seq, ArcOf arc_of) {
  std::vector<CircleArc> arcs;
  arcs.reserve(seq.size());
  for (const auto& p : seq.points()) arcs.push_back(arc_of(p));
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (std::size_t j = i + 1; j < arcs.size(); ++j)
      if (!arcs_disjoint(arcs[i], arcs[j])) return false;
  return true;
}

}  // namespace

bool tangent_arcs_disjoint(const Sequence& seq) {
  return pairwise_disjoint(seq, [](const DiskPoint& p) { return tangent_arc(p); });
}

bool shadow_arcs_disjoint(const Sequence& seq) {
  return pairwise_disjoint(seq, [](const DiskPoint& p) { return shadow_arc(p); });
}

}  // namespace freeinterp
