#include "orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"
#include "numeric.hpp"

namespace freeinterp {

namespace {

constexpr double kRelSlack = 1e-12;

bool leq(double lhs, double rhs) { return lhs <= rhs + kRelSlack * std::abs(rhs); }

// Samples with t >= t0.
std::vector<double> tail_from(std::span<const double> samples, double t0) {
  std::vector<double> out;
  for (double t : samples)
    if (t >= t0) out.push_back(t);
  return out;
}

template <class Pred>
std::optional<double> first_stable(std::span<const double> samples, Pred ok) {
  std::optional<double> t0;
  for (std::size_t i = samples.size(); i-- > 0;) {
    if (!ok(samples[i])) break;
    t0 = samples[i];
  }
  return t0;
}

// Minimal alpha with 2 phi(t) <= phi(t + alpha), by bisection.
std::optional<double> minimal_alpha(const OrliczFunction& phi, double t) {
  const double target = 2.0 * phi(t);
  double hi = 1.0;
  int guard = 0;
  while (phi(t + hi) < target) {
    hi *= 2.0;
    if (++guard > 60) return std::nullopt;
  }
  double lo = 0.0;
  for (int it = 0; it < 100 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi(t + mid) >= target ? hi : lo) = mid;
  }
  return hi;
}

struct Quarters {
  std::vector<double> second;
  std::vector<double> upper;
};
Quarters split(const std::vector<double>& s) {
  const std::size_t n = s.size();
  Quarters q;
  q.second.assign(s.begin() + n / 4, s.begin() + n / 2);
  q.upper.assign(s.begin() + n / 2, s.end());
  return q;
}

}  // namespace

OrliczFunction orlicz_power(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw Error(ErrorCode::InvalidArgument, "power Orlicz function needs p > 1");
  return {"power", {{"p", p}}, [p](double t) { return t > 0.0 ? std::pow(t, p) : 0.0; }};
}

OrliczFunction orlicz_exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw Error(ErrorCode::InvalidArgument, "exponential rate must be positive");
  return {"exponential", {{"rate", rate}}, [rate](double t) { return std::exp(rate * t); }};
}

std::vector<double> SampleRange::samples() const {
  if (!(t_max > t_min) || count < 8)
    throw Error(ErrorCode::InvalidArgument, "sample range needs t_max > t_min and >= 8 samples");
  std::vector<double> out(count);
  const double h = (t_max - t_min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = t_min + h * static_cast<double>(i);
  out.back() = t_max;
  return out;
}

ShapeCheck spot_check(const OrliczFunction& phi, const SampleRange& range) {
  const auto t = range.samples();
  ShapeCheck out;
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (phi(t[i + 1]) < phi(t[i])) out.nondecreasing = false;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const double mid = phi(t[i]);
    const double chord = phi(t[i - 1]) + (phi(t[i + 1]) - phi(t[i - 1])) *
                                             (t[i] - t[i - 1]) / (t[i + 1] - t[i - 1]);
    if (!leq(mid, chord)) out.convex = false;
  }
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = t.size() / 2; i < t.size(); ++i) {
    if (t[i] <= 0.0) continue;
    const double r = phi(t[i]) / t[i];
    if (r <= prev) out.superlinear_trend = false;
    prev = r;
  }
  return out;
}

bool delta2_holds(const OrliczFunction& phi, double m, double k, std::span<const double> samples,
                  double t0) {
  for (double t : tail_from(samples, t0))
    if (!leq(phi(t + 2.0), m * phi(t) + k)) return false;
  return true;
}

bool v2_holds(const OrliczFunction& phi, double alpha, std::span<const double> samples,
              double t0) {
  for (double t : tail_from(samples, t0))
    if (!leq(2.0 * phi(t), phi(t + alpha))) return false;
  return true;
}

bool subadditive_holds(const OrliczFunction& phi, double c, std::span<const double> samples,
                       double t0) {
  const auto tail = tail_from(samples, t0);
  for (double a : tail)
    for (double b : tail)
      if (!leq(phi(a + b), c * (phi(a) + phi(b)))) return false;
  return true;
}

std::optional<double> delta2_threshold(const OrliczFunction& phi, double m, double k,
                                       std::span<const double> samples) {
  return first_stable(samples, [&](double t) { return leq(phi(t + 2.0), m * phi(t) + k); });
}

std::optional<double> v2_threshold(const OrliczFunction& phi, double alpha,
                                   std::span<const double> samples) {
  return first_stable(samples, [&](double t) { return leq(2.0 * phi(t), phi(t + alpha)); });
}

GrowthReport check_growth(const OrliczFunction& phi, const SampleRange& range) {
  GrowthReport rep;
  rep.range = range;
  const auto t = range.samples();
  const auto q = split(t);

  // Delta_2 with K = 0: M is the largest ratio phi(t+2)/phi(t).
  auto delta2_ratio = [&](const std::vector<double>& ts) -> std::optional<double> {
    double m = 0.0;
    for (double x : ts) {
      const double base = phi(x);
      const double next = phi(x + 2.0);
      if (!(base > 0.0) || !std::isfinite(next)) return std::nullopt;
      m = std::max(m, next / base);
    }
    return m;
  };
  const auto m_up = delta2_ratio(q.upper);
  const auto m_mid = delta2_ratio(q.second);
  if (m_up && m_mid && leq(*m_up, *m_mid)) {
    const auto th = delta2_threshold(phi, *m_up, 0.0, t);
    rep.delta2 = Delta2Witness{*m_up, 0.0, th.value_or(q.upper.front())};
  }

  auto alpha_max = [&](const std::vector<double>& ts) -> std::optional<double> {
    double a = 0.0;
    for (double x : ts) {
      if (!(phi(x) > 0.0)) return std::nullopt;
      const auto ax = minimal_alpha(phi, x);
      if (!ax) return std::nullopt;
      a = std::max(a, *ax);
    }
    return a;
  };
  const auto a_up = alpha_max(q.upper);
  const auto a_mid = alpha_max(q.second);
  if (a_up && a_mid && leq(*a_up, *a_mid * (1.0 + 1e-9))) {
    const auto th = v2_threshold(phi, *a_up, t);
    rep.v2 = V2Witness{*a_up, th.value_or(q.upper.front())};
  }

  auto c_max = [&](const std::vector<double>& ts) -> std::optional<double> {
    double c = 0.0;
    for (double a : ts)
      for (double b : ts) {
        const double den = phi(a) + phi(b);
        const double num = phi(a + b);
        if (!(den > 0.0) || !std::isfinite(num)) return std::nullopt;
        c = std::max(c, num / den);
      }
    return c;
  };
  const auto c_up = c_max(q.upper);
  const auto c_mid = c_max(q.second);
  if (c_up && c_mid && leq(*c_up, *c_mid)) rep.subadditive = SubadditiveWitness{*c_up, q.upper.front()};
  return rep;
}

double orlicz_integral(const OrliczFunction& phi, const StepWeight& w) {
  CompensatedSum sum;
  for (const auto& seg : w.flatten()) {
    const double v = phi(seg.value);
    if (v != 0.0) sum.add(v * (seg.end - seg.start) / kTwoPi);
  }
  return sum.value();
}

double orlicz_integral_quadrature(const OrliczFunction& phi, const StepWeight& w) {
  CompensatedSum sum;
  for (const auto& seg : w.flatten()) {
    auto f = [&](double theta) { return phi(w.value_at(theta)); };
    sum.add(integrate_adaptive(f, seg.start, seg.end, 1e-12) / kTwoPi);
  }
  return sum.value();
}

OrliczSufficiency orlicz_sufficiency_check(const Sequence& seq, const StepWeight& w,
                                           const OrliczFunction& phi, double tolerance) {
  OrliczSufficiency out;
  out.majorant_cert = verify_majorant(seq, Measure{w, {}}, tolerance);
  out.majorant_cert.construction = "orlicz-sufficiency";
  out.phi_integral = orlicz_integral(phi, w);
  out.verdict = out.majorant_cert.verdict && std::isfinite(out.phi_integral);
  return out;
}

Sequence orlicz_default_base(std::size_t count) {
  std::vector<double> s(count);
  for (std::size_t n = 0; n < count; ++n) s[n] = std::ldexp(1.0, -2 * static_cast<int>(n + 1));
  return gen_disjoint_shadow(s);
}

std::vector<double> orlicz_default_gamma(std::size_t count) {
  std::vector<double> g(count);
  for (std::size_t n = 0; n < count; ++n) g[n] = static_cast<double>((n + 1) * (n + 1));
  return g;
}

OrliczExample build_orlicz_example(double p, const Sequence& base, std::span<const double> gamma,
                                   double tolerance) {
  const auto phi = orlicz_power(p);
  const std::size_t n = base.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty base sequence");
  if (gamma.size() != n) throw Error(ErrorCode::InvalidArgument, "gamma must align with the base");
  for (std::size_t k = 0; k < n; ++k) {
    if (!(gamma[k] > 0.0) || !std::isfinite(gamma[k]))
      throw Error(ErrorCode::InvalidArgument, "gamma must be positive and finite");
    if (k > 0 && !(gamma[k] > gamma[k - 1]))
      throw Error(ErrorCode::InvalidArgument, "gamma must be strictly increasing");
  }
  if (!shadow_arcs_disjoint(base))
    throw Error(ErrorCode::ArcsOverlap, "base shadow arcs are not pairwise disjoint");

  OrliczExample ex;
  ex.p = p;
  ex.eps.resize(n);
  CompensatedSum closed;
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::pow(gamma[k], 1.0 / p);
    ex.eps[k] = base[k].co_radius() * root;
    ex.u.add(shadow_arc(base[k]), root);
    ex.pair_log_distances.push_back(-root);
    closed.add(base[k].co_radius() * gamma[k]);
  }
  ex.closed_form_sum = closed.value();
  ex.phi_integral = orlicz_integral(phi, ex.u);
  ex.seq = attach_partner_points(base, ex.eps);

  const auto logs = log_blaschke_all(ex.seq);
  const Measure unit{ex.u, {}};
  std::vector<double> ratio(ex.seq.size());
  for (std::size_t i = 0; i < ex.seq.size(); ++i) {
    const double pu = poisson_extend(unit, ex.seq[i]);
    if (!(pu > 0.0)) throw Error(ErrorCode::DegenerateWeight, "weight u vanishes at a point");
    ratio[i] = -logs[i] / pu;
    ex.scale = std::max(ex.scale, ratio[i]);
  }
  ex.scale_ratios.resize(n);
  for (std::size_t k = 0; k < n; ++k) ex.scale_ratios[k] = std::max(ratio[k], ratio[n + k]);

  double first = 0.0, second = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double& half = 2 * k < n ? first : second;
    half = std::max(half, ex.scale_ratios[k]);
  }
  ex.scale_bounded = n < 2 || second <= 2.0 * first;

  ex.certificate = verify_majorant(ex.seq, Measure{ex.u.scaled(ex.scale), {}}, tolerance);
  ex.certificate.construction = "orlicz-example";
  ex.certificate.constants["scale"] = ex.scale;
  ex.certificate.constants["p"] = p;
  ex.certificate.constants["phi_integral"] = ex.phi_integral;
  ex.certificate.constants["closed_form_sum"] = ex.closed_form_sum;
  ex.certificate.series["scale_ratio"] = ex.scale_ratios;
  ex.min_pair_distance = separation_constant(ex.seq);
  return ex;
}

}  // namespace freeinterp
