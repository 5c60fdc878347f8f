#include "certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "error.hpp"

namespace freeinterp {

namespace {

constexpr double kChainFactor = 1.0 + kPi * kPi;

// Fills margins and verdict for cert.measure against log(1/delta).
void finish(Certificate& cert, const Sequence& seq, std::span<const double> heights) {
  cert.margins.resize(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i)
    cert.margins[i] = poisson_extend(cert.measure, seq[i]) - heights[i];
  cert.verdict = cert.min_margin() >= -cert.tolerance;
}

std::vector<double> heights_of(const Sequence& seq) {
  auto logs = log_blaschke_all(seq);
  for (double& x : logs) x = -x;
  return logs;
}

// Smallest s with s * poisson[i] >= required[i] for all i.
double minimal_scale(std::span<const double> required, std::span<const double> poisson) {
  double s = 0.0;
  for (std::size_t i = 0; i < required.size(); ++i) {
    if (required[i] <= 0.0) continue;
    if (!(poisson[i] > 0.0))
      throw Error(ErrorCode::DegenerateWeight,
                  "weight has no Poisson mass at point " + std::to_string(i));
    s = std::max(s, required[i] / poisson[i]);
  }
  return s;
}

void check_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
}

double shadow_integral(const StepWeight& w, const DiskPoint& lam) {
  const CircleArc shadow = shadow_arc(lam);
  CompensatedSum sum;
  for (const auto& p : w.pieces())
    if (p.value > 0.0) sum.add(p.value * overlap_measure(p.arc, shadow));
  return sum.value();
}

// Stage margins of P[(1+pi^2) f](lam) >= (1/(1-|lam|)) int_{I_lam} f >= height.
void chain_stages(Certificate& cert, const Sequence& seq, const StepWeight& f,
                  std::span<const double> heights) {
  std::vector<double> outer(seq.size()), middle(seq.size()), ab(seq.size()), bc(seq.size());
  double ab_min = std::numeric_limits<double>::infinity();
  double bc_min = ab_min;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    outer[i] = poisson_extend(cert.measure, seq[i]);
    middle[i] = shadow_integral(f, seq[i]) / seq[i].co_radius();
    ab[i] = outer[i] - middle[i];
    bc[i] = middle[i] - heights[i];
    ab_min = std::min(ab_min, ab[i]);
    bc_min = std::min(bc_min, bc[i]);
  }
  cert.series["poisson"] = std::move(outer);
  cert.series["shadow_average"] = std::move(middle);
  cert.series["stage_poisson_minus_average"] = std::move(ab);
  cert.series["stage_average_minus_height"] = std::move(bc);
  cert.constants["stage_poisson_minus_average_min"] = seq.empty() ? 0.0 : ab_min;
  cert.constants["stage_average_minus_height_min"] = seq.empty() ? 0.0 : bc_min;
}

}  // namespace

double Certificate::min_margin() const {
  double m = 0.0;
  bool first = true;
  for (double x : margins) {
    m = first ? x : std::min(m, x);
    first = false;
  }
  return m;
}

Certificate verify_majorant(const Sequence& seq, const Measure& mu, double tolerance) {
  check_tolerance(tolerance);
  Certificate cert;
  cert.construction = "custom-measure";
  cert.measure = mu;
  cert.tolerance = tolerance;
  const auto heights = heights_of(seq);
  finish(cert, seq, heights);
  cert.constants["total_mass"] = mu.total_mass();
  return cert;
}

Certificate certify_propsep(const Sequence& seq, const CertifyOptions& opts) {
  check_tolerance(opts.tolerance);
  double log_threshold = std::log(0.5);
  if (opts.threshold) {
    if (!(*opts.threshold > 0.0 && *opts.threshold < 1.0))
      throw Error(ErrorCode::InvalidArgument, "propsep threshold must lie in (0, 1)");
    log_threshold = std::log(*opts.threshold);
  } else {
    for (std::size_t i = 0; i < seq.size(); ++i)
      for (std::size_t j = 0; j < seq.size(); ++j)
        if (j != i) log_threshold = std::min(log_threshold, seq.log_distance(i, j));
  }
  StepWeight w;
  for (const auto& p : seq.points()) w.add(shadow_arc(p), 1.0);

  std::vector<double> near(seq.size()), poisson(seq.size());
  const Measure unit{w, {}};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CompensatedSum sum;
    for (std::size_t j = 0; j < seq.size(); ++j) {
      if (j == i) continue;
      const double ld = seq.log_distance(i, j);
      if (ld >= log_threshold) sum.add(-ld);
    }
    near[i] = sum.value();
    poisson[i] = poisson_extend(unit, seq[i]);
    if (!(poisson[i] > 0.0))
      throw Error(ErrorCode::DegenerateWeight, "shadow-arc weight vanishes at a point");
  }
  const double c_star = minimal_scale(near, poisson);

  Certificate cert;
  cert.construction = "propsep";
  cert.tolerance = opts.tolerance;
  cert.measure = Measure{w.scaled(c_star), {}};
  finish(cert, seq, heights_of(seq));
  std::vector<double> local(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) local[i] = c_star * poisson[i] - near[i];
  cert.constants["c_star"] = c_star;
  cert.constants["threshold"] = std::exp(log_threshold);
  cert.constants["separation_constant"] = separation_constant(seq);
  cert.series["near_factor_sum"] = std::move(near);
  cert.series["near_factor_margin"] = std::move(local);
  return cert;
}

PropsepPairBound propsep_pair_bound(const DiskPoint& lam, const DiskPoint& mu) {
  PropsepPairBound out;
  const double lhs = pseudo_hyperbolic_complement_sq(lam, mu);
  out.ratio = lhs / harmonic_measure(shadow_arc(mu), lam);
  const double s = lam.co_radius();
  const double half = std::sin(0.5 * (lam.angle() - mu.angle()));
  const double dist_sq = s * s + 4.0 * (1.0 - s) * half * half;
  const double radius = 2.0 * mu.co_radius();
  out.near_case = dist_sq <= radius * radius;
  return out;
}

Certificate certify_maximal(const Sequence& seq, const CertifyOptions& opts) {
  check_tolerance(opts.tolerance);
  StepWeight m;
  if (opts.exact_plateaus) {
    m = maximal_plateaus(seq, opts.aperture);
  } else {
    const std::size_t g = opts.grid_size;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (seq[i].co_radius() * static_cast<double>(g) < static_cast<double>(opts.min_cells))
        throw Error(ErrorCode::GridTooCoarse,
                    "shadow arc of point " + std::to_string(i) + " covers fewer than " +
                        std::to_string(opts.min_cells) + " grid cells");
    const auto prof = maximal_function(seq, g, opts.aperture);
    const double half = kPi / static_cast<double>(g);
    for (std::size_t j = 0; j < g; ++j)
      if (prof.values[j] > 0.0) m.add(CircleArc(prof.grid[j], half), prof.values[j]);
  }
  const auto heights = heights_of(seq);
  Certificate cert;
  cert.construction = "maximal";
  cert.tolerance = opts.tolerance;
  cert.measure = Measure{m.scaled(kChainFactor), {}};
  finish(cert, seq, heights);
  chain_stages(cert, seq, m, heights);
  cert.constants["factor"] = kChainFactor;
  cert.constants["aperture"] = opts.aperture;
  cert.constants["maximal_l1_norm"] = m.l1_norm();
  cert.constants["exact_plateaus"] = opts.exact_plateaus ? 1.0 : 0.0;
  if (!opts.exact_plateaus) cert.constants["grid_size"] = static_cast<double>(opts.grid_size);
  return cert;
}

Certificate certify_cs(const Sequence& seq, const CertifyOptions& opts) {
  check_tolerance(opts.tolerance);
  const auto heights = heights_of(seq);
  StepWeight u;
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (heights[i] > 0.0) u.add(shadow_arc(seq[i]), heights[i]);

  Certificate cert;
  cert.construction = "cs";
  cert.tolerance = opts.tolerance;
  cert.measure = Measure{u.scaled(kChainFactor), {}};
  finish(cert, seq, heights);
  chain_stages(cert, seq, u, heights);
  cert.constants["cs_sum"] = u.l1_norm();
  cert.constants["factor"] = kChainFactor;
  cert.constants["aperture"] = opts.aperture;

  const auto prof = maximal_function(seq, opts.grid_size, opts.aperture);
  double violation = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < prof.grid.size(); ++j)
    violation = std::max(violation, prof.values[j] - u.value_at(prof.grid[j]));
  cert.constants["max_domination_violation"] = violation;
  cert.constants["grid_size"] = static_cast<double>(opts.grid_size);
  return cert;
}

double radial_angle(const Sequence& seq) {
  std::optional<double> angle;
  for (const auto& p : seq.points()) {
    if (p.co_radius() >= 1.0) continue;
    if (!angle) {
      angle = p.angle();
    } else if (std::abs(wrap_difference(p.angle() - *angle)) > 1e-12) {
      throw Error(ErrorCode::NotRadial, "sequence points do not share a common argument");
    }
  }
  return angle.value_or(0.0);
}

Certificate certify_staircase_radial(const Sequence& seq, const CertifyOptions& opts) {
  check_tolerance(opts.tolerance);
  const double theta = radial_angle(seq);
  const auto heights = heights_of(seq);
  const std::size_t n = seq.size();

  std::vector<std::size_t> order(n);  // increasing modulus
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return seq[a].co_radius() > seq[b].co_radius();
  });

  std::vector<double> eps_tilde(n), eps(n), beta(n), residual(n);
  for (std::size_t k = 0; k < n; ++k)
    eps_tilde[k] = seq[order[k]].co_radius() * heights[order[k]];
  double running = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    running = std::max(running, eps_tilde[k]);
    eps[k] = running;
  }
  for (std::size_t k = 0; k < n; ++k) beta[k] = eps[k] - (k + 1 < n ? eps[k + 1] : 0.0);

  StepWeight w;
  for (std::size_t k = 0; k < n; ++k) {
    if (beta[k] <= 0.0) continue;
    const double outer = std::min(kPi, kPi * seq[order[k]].co_radius());
    if (k + 1 == n) {
      w.add(CircleArc(theta, outer), beta[k] / (outer / kPi));
      continue;
    }
    const double inner = std::min(kPi, kPi * seq[order[k + 1]].co_radius());
    const double half = 0.5 * (outer - inner);
    const double measure = (outer - inner) / kPi;
    if (!(half > 0.0))
      throw Error(ErrorCode::DegenerateWeight, "staircase: empty ring J_n with positive beta");
    const double offset = 0.5 * (outer + inner);
    w.add(CircleArc(theta - offset, half), beta[k] / measure);
    w.add(CircleArc(theta + offset, half), beta[k] / measure);
  }

  // Telescoping: sum_{j >= k} beta_j == eps_k.
  double tele_err = 0.0;
  CompensatedSum suffix;
  for (std::size_t k = n; k-- > 0;) {
    suffix.add(beta[k]);
    residual[k] = suffix.value() - eps[k];
    tele_err = std::max(tele_err, std::abs(residual[k]));
  }

  const Measure unit{w, {}};
  std::vector<double> required(n), poisson(n);
  for (std::size_t k = 0; k < n; ++k) {
    required[k] = eps[k] / seq[order[k]].co_radius();
    poisson[k] = poisson_extend(unit, seq[order[k]]);
  }
  const double scale = minimal_scale(required, poisson);

  Certificate cert;
  cert.construction = "staircase";
  cert.tolerance = opts.tolerance;
  cert.measure = Measure{w.scaled(scale), {}};
  finish(cert, seq, heights);
  auto in_input_order = [&](const std::vector<double>& sorted) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[order[k]] = sorted[k];
    return out;
  };
  cert.series["eps_tilde"] = in_input_order(eps_tilde);
  cert.series["eps"] = in_input_order(eps);
  cert.series["beta"] = in_input_order(beta);
  cert.series["telescoping_residual"] = in_input_order(residual);
  cert.constants["scale"] = scale;
  cert.constants["telescoping_max_error"] = tele_err;
  cert.constants["angle"] = theta;
  return cert;
}

Certificate certify_dirac(const Sequence& seq, const CertifyOptions& opts) {
  check_tolerance(opts.tolerance);
  const double theta = radial_angle(seq);
  const auto heights = heights_of(seq);
  double mass = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    mass = std::max(mass, seq[i].co_radius() * heights[i]);
  constexpr double kappa = 1.0;
  Certificate cert;
  cert.construction = "dirac";
  cert.tolerance = opts.tolerance;
  cert.measure.sing.add(theta, kappa * mass);
  finish(cert, seq, heights);
  cert.constants["mass"] = kappa * mass;
  cert.constants["kappa"] = kappa;
  cert.constants["angle"] = theta;
  return cert;
}

TraceCheck trace_membership(const Sequence& seq, std::span<const std::complex<double>> values,
                            const Measure& mu, TraceMode mode, double tolerance) {
  check_tolerance(tolerance);
  if (values.size() != seq.size())
    throw Error(ErrorCode::InvalidArgument, "trace values must align with the sequence");
  if (mode == TraceMode::Smirnov && !mu.sing.empty())
    throw Error(ErrorCode::ModeMismatch, "Smirnov-class trace test admits no singular part");
  TraceCheck out;
  out.values.assign(values.begin(), values.end());
  out.margins.resize(seq.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    out.margins[i] = poisson_extend(mu, seq[i]) - log_plus(std::abs(values[i]));
    worst = std::min(worst, out.margins[i]);
  }
  out.verdict = worst >= -tolerance;
  return out;
}

std::vector<bool> garnett_precondition(const Sequence& seq,
                                       std::span<const std::complex<double>> values) {
  if (values.size() != seq.size())
    throw Error(ErrorCode::InvalidArgument, "values must align with the sequence");
  std::vector<bool> out(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double log_delta = log_blaschke_at(seq, i);
    const double log_bound = log_delta + std::log(garnett_phi(1.0 - log_delta));
    const double modulus = std::abs(values[i]);
    out[i] = modulus == 0.0 || std::log(modulus) <= log_bound + 1e-12 * (1.0 + std::abs(log_bound));
  }
  return out;
}

GarnettTransport garnett_transport(const Sequence& seq, const Measure& mu,
                                   std::span<const std::complex<double>> omega, double tolerance) {
  if (omega.size() != seq.size())
    throw Error(ErrorCode::InvalidArgument, "omega must align with the sequence");
  const auto g = gamma_lambda(seq, mu, tolerance);
  const auto heights = heights_of(seq);
  GarnettTransport out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto h = herglotz(mu, seq[i]);
    const double phi = garnett_phi(1.0 + heights[i]);
    out.values.push_back(omega[i] * g.gamma[i] * std::exp(-h) * phi);
    const double w = std::abs(omega[i]);
    const double log_ratio = (w == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(w)) +
                             std::log(std::abs(g.gamma[i])) - h.real() + heights[i];
    out.log_ratio.push_back(log_ratio);
    out.passes.push_back(log_ratio <= tolerance);
  }
  return out;
}

NoOuterBound noouter_bound(const Sequence& seq, std::span<const double> eps, double c_mu) {
  if (eps.size() != seq.size())
    throw Error(ErrorCode::InvalidArgument, "eps must align with the sequence");
  if (!(c_mu > 0.0) || !std::isfinite(c_mu))
    throw Error(ErrorCode::InvalidArgument, "c_mu must be positive");
  if (!tangent_arcs_disjoint(seq))
    throw Error(ErrorCode::ArcsOverlap, "tangent arcs K_lambda are not pairwise disjoint");
  NoOuterBound out;
  out.rhs_bound = c_mu * (seq.blaschke_sum() + 2.0);
  CompensatedSum sum;
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (!(eps[k] > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    sum.add(eps[k]);
    out.partial_sums.push_back(sum.value());
    if (!out.crossing_index && out.partial_sums.back() > out.rhs_bound) out.crossing_index = k + 1;
  }
  return out;
}

}  // namespace freeinterp
