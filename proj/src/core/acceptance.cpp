#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <random>

#include "certificates.hpp"
#include "error.hpp"
#include "orlicz.hpp"
#include "potential.hpp"
#include "sequence.hpp"

namespace freeinterp {

namespace {

using cplx = std::complex<double>;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

cplx as_complex(const DiskPoint& p) { return std::polar(p.modulus(), p.angle()); }

DiskPoint random_point(std::mt19937_64& rng, double max_modulus) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return DiskPoint::from_polar(max_modulus * std::sqrt(u(rng)), kTwoPi * u(rng));
}

// Plain complex-arithmetic product over mu != lam of |lam - mu| / |1 - conj(lam) mu|.
double direct_delta(const Sequence& seq, std::size_t i) {
  const cplx lam = as_complex(seq[i]);
  double prod = 1.0;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    if (j == i) continue;
    const cplx mu = as_complex(seq[j]);
    prod *= std::abs(lam - mu) / std::abs(1.0 - std::conj(lam) * mu);
  }
  return prod;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

CertifyOptions certify_options(const AcceptanceOptions& o) {
  CertifyOptions c;
  c.grid_size = o.quick ? o.grid_size / 2 : o.grid_size;
  c.aperture = o.aperture;
  c.tolerance = o.tolerance;
  return c;
}

std::size_t scaled(std::size_t n, bool quick) { return quick ? std::max<std::size_t>(2, n / 2) : n; }

// Garnett chain on a passing certificate: |gamma| <= 1 + 1e-9 and
// |H| >= (1 + log(e/delta))^2; omega = 1 transports to admissible values.
bool garnett_ok(const Sequence& seq, const Certificate& cert, double tol, std::string& note) {
  const auto g = gamma_lambda(seq, cert.measure, tol);
  bool ok = g.max_abs_gamma <= 1.0 + 1e-9;
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (g.abs_H[i] < g.lower_bound[i] * (1.0 - 1e-12)) ok = false;
  const std::vector<cplx> omega(seq.size(), cplx(1.0, 0.0));
  const auto t = garnett_transport(seq, cert.measure, omega, tol);
  bool transported = std::all_of(t.passes.begin(), t.passes.end(), [](bool b) { return b; });
  note += fmt(" %s:max|gamma|=%.6f%s", cert.construction.c_str(), g.max_abs_gamma,
              transported ? "" : "(transport fails)");
  return ok && transported;
}

CriterionResult crit_metric(const AcceptanceOptions& o) {
  CriterionResult r{1, "metric identity", false, "", 0.0, 1.0};
  std::mt19937_64 rng(o.seed);
  const std::size_t pairs = 10000;
  double worst = 0.0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto a = random_point(rng, 0.999);
    const auto b = random_point(rng, 0.999);
    if (a == b) continue;
    const double rho = pseudo_hyperbolic(a, b);
    const cplx za = as_complex(a), zb = as_complex(b);
    const double rhs = (1.0 - std::norm(za)) * (1.0 - std::norm(zb)) / std::norm(1.0 - std::conj(za) * zb);
    worst = std::max(worst, std::abs((1.0 - rho * rho) - rhs));
  }
  r.passed = worst <= 1e-12;
  r.detail = fmt("%zu pairs, max |lhs-rhs| = %.3e (tol 1e-12)", pairs, worst);
  return r;
}

CriterionResult crit_oracle(const AcceptanceOptions& o) {
  CriterionResult r{2, "log-domain delta vs direct product", false, "", 0.0, 5.0};
  std::mt19937_64 rng(o.seed + 1);
  std::uniform_int_distribution<std::size_t> size(2, 100);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const std::size_t n = size(rng);
    std::vector<DiskPoint> pts;
    while (pts.size() < n) {
      const auto p = random_point(rng, 0.99);
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    const Sequence seq(std::move(pts));
    for (std::size_t i = 0; i < seq.size(); ++i)
      worst = std::max(worst, std::abs(std::exp(log_blaschke_at(seq, i)) - direct_delta(seq, i)));
  }
  r.passed = worst <= 1e-10;
  r.detail = fmt("100 sequences, max |exp(log delta) - product| = %.3e (tol 1e-10)", worst);
  return r;
}

CriterionResult crit_poisson(const AcceptanceOptions& o) {
  CriterionResult r{3, "Poisson normalization and Harnack", false, "", 0.0, 10.0};
  std::mt19937_64 rng(o.seed + 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> count(0, 3);
  double worst = 0.0;
  int harnack_failures = 0;
  for (int k = 0; k < 1000; ++k) {
    Measure mu;
    const int steps = 1 + count(rng);
    for (int i = 0; i < steps; ++i)
      mu.ac.add(CircleArc(kTwoPi * u(rng), kPi * (0.001 + 0.999 * u(rng))), 3.0 * u(rng));
    const int atoms = count(rng);
    for (int i = 0; i < atoms; ++i) mu.sing.add(kTwoPi * u(rng), 2.0 * u(rng));
    const auto z = random_point(rng, 0.999);
    worst = std::max(worst, std::abs(poisson_normalization_quadrature(z) - 1.0));
    if (!harnack_check(mu, z).ok) ++harnack_failures;
  }
  r.passed = worst <= 1e-8 && harnack_failures == 0;
  r.detail = fmt("1000 samples, max |int P - 1| = %.3e (tol 1e-8), Harnack failures %d", worst,
                 harnack_failures);
  return r;
}

struct SeparatedCase {
  std::string name;
  Sequence seq;
};

std::vector<SeparatedCase> separated_cases(const AcceptanceOptions& o) {
  return {{"radial q=1/2", gen_radial(0.5, scaled(20, o.quick))},
          {"random", gen_random_separated(scaled(30, o.quick), 0.5, o.seed + 3)}};
}

CriterionResult crit_propsep(const AcceptanceOptions& o, std::vector<std::pair<Sequence, Certificate>>& passing) {
  CriterionResult r{4, "separated sequences via propsep weight", true, "", 0.0, 10.0};
  for (auto& c : separated_cases(o)) {
    const auto cert = certify_propsep(c.seq, certify_options(o));
    const double cstar = cert.constants.at("c_star");
    const auto check = verify_majorant(c.seq, cert.measure, o.tolerance);
    const bool ok = cert.verdict && std::isfinite(cstar) && check.verdict;
    r.passed = r.passed && ok;
    r.detail += fmt("%s%s: delta=%.4f c*=%.6g min margin=%.3e %s", r.detail.empty() ? "" : "; ",
                    c.name.c_str(), separation_constant(c.seq), cstar, check.min_margin(),
                    ok ? "ok" : "FAIL");
    if (ok) passing.emplace_back(c.seq, cert);
  }
  return r;
}

CriterionResult crit_maximal(const AcceptanceOptions& o) {
  CriterionResult r{5, "maximal-function chain", true, "", 0.0, 30.0};
  const std::size_t n = scaled(30, o.quick);
  const std::vector<SeparatedCase> cases = {{"radial", gen_radial(0.5, n)},
                                            {"stolz", gen_stolz(0.5, n, 0.0, 1.0, o.aperture)},
                                            {"disjoint-tangent", gen_disjoint_tangent(n)}};
  for (const auto& c : cases) {
    const auto cert = certify_maximal(c.seq, certify_options(o));
    const double ab = cert.constants.at("stage_poisson_minus_average_min");
    const double bc = cert.constants.at("stage_average_minus_height_min");
    const double ac = cert.min_margin();
    const bool ok = ab >= -1e-9 && bc >= -1e-9 && ac >= -1e-9;
    r.passed = r.passed && ok;
    r.detail += fmt("%s%s: stages %.3e / %.3e / %.3e %s", r.detail.empty() ? "" : "; ",
                    c.name.c_str(), ab, bc, ac, ok ? "ok" : "FAIL");
  }
  return r;
}

CriterionResult crit_staircase(const AcceptanceOptions& o,
                               std::vector<std::pair<Sequence, Certificate>>& passing) {
  CriterionResult r{6, "staircase construction on radial sequences", true, "", 0.0, 0.0};
  for (double q : {0.3, 0.5, 0.7}) {
    const auto seq = gen_radial(q, scaled(15, o.quick));
    const auto cert = certify_staircase_radial(seq, certify_options(o));
    const double tele = cert.constants.at("telescoping_max_error");
    const auto trend = classify(seq).cn_trend;
    const bool ok = cert.verdict && tele <= 1e-12;
    r.passed = r.passed && ok;
    r.detail += fmt("%sq=%.1f: scale=%.6g telescoping=%.1e t-trend %s %s", r.detail.empty() ? "" : "; ", q,
                    cert.constants.at("scale"), tele, trend.decreasing ? "decreasing" : "not decreasing",
                    ok ? "ok" : "FAIL");
    if (ok) passing.emplace_back(seq, cert);
  }
  return r;
}

CriterionResult crit_noouter(const AcceptanceOptions& o) {
  CriterionResult r{7, "noouter refutation bound", true, "", 0.0, 0.0};
  const std::size_t n = scaled(200, o.quick);
  const auto seq = gen_disjoint_tangent(n);
  std::vector<double> harmonic(n), square(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double m = static_cast<double>(k + 1);
    harmonic[k] = 1.0 / m;
    square[k] = 1.0 / (m * m);
  }
  for (double c : {1.0, 10.0, 100.0}) {
    const auto b = noouter_bound(seq, harmonic, c);
    r.passed = r.passed && b.crossing_index.has_value();
    r.detail += fmt("%s1/n c=%g: ", r.detail.empty() ? "" : "; ", c);
    r.detail += b.crossing_index ? fmt("crossing at %zu", *b.crossing_index)
                                 : fmt("no crossing (sum %.4f <= bound %.4f) FAIL",
                                       b.partial_sums.back(), b.rhs_bound);
  }
  const auto sq = noouter_bound(seq, square, 10.0);
  r.passed = r.passed && !sq.crossing_index;
  r.detail += fmt("; 1/n^2 c=10: %s", sq.crossing_index ? "crossing FAIL" : "no crossing ok");
  return r;
}

CriterionResult crit_orlicz(const AcceptanceOptions& o) {
  CriterionResult r{8, "Hardy-Orlicz example", false, "", 0.0, 0.0};
  const std::size_t n = scaled(15, o.quick);
  const auto ex = build_orlicz_example(2.0, orlicz_default_base(n), orlicz_default_gamma(n), o.tolerance);
  const double integral_err = std::abs(ex.phi_integral - ex.closed_form_sum);
  const double expected_min = std::exp(-static_cast<double>(n));
  const double min_err = std::abs(ex.min_pair_distance - expected_min) / expected_min;
  bool monotone = true;
  for (std::size_t k = 1; k < ex.pair_log_distances.size(); ++k)
    if (!(ex.pair_log_distances[k] < ex.pair_log_distances[k - 1])) monotone = false;
  r.passed = integral_err <= 1e-10 && min_err <= 1e-9 && monotone && ex.certificate.verdict &&
             std::isfinite(ex.scale) && ex.scale_bounded;
  r.detail = fmt("N=%zu |int phi(u) - closed form| = %.2e, min pair distance %.6e vs e^-N %.6e%s, "
                 "scale=%.6g %s, certificate %s",
                 n, integral_err, ex.min_pair_distance, expected_min, monotone ? "" : " (not monotone)",
                 ex.scale, ex.scale_bounded ? "bounded" : "UNBOUNDED", ex.certificate.verdict ? "passes" : "FAILS");
  return r;
}

CriterionResult crit_garnett(const AcceptanceOptions& o,
                             const std::vector<std::pair<Sequence, Certificate>>& passing) {
  CriterionResult r{9, "Garnett gamma and H bounds", !passing.empty(), "", 0.0, 0.0};
  std::string note;
  for (const auto& [seq, cert] : passing) r.passed = garnett_ok(seq, cert, o.tolerance, note) && r.passed;
  r.detail = fmt("%zu certificates;", passing.size()) + note;
  return r;
}

CriterionResult crit_weak(const AcceptanceOptions& o) {
  CriterionResult r{10, "weak-L1 tail trend and grid convergence", false, "", 0.0, 0.0};
  const auto seq = gen_radial(0.5, scaled(20, o.quick));
  const std::size_t g = o.quick ? o.grid_size / 2 : o.grid_size;
  const auto prof = maximal_function(seq, g, o.aperture);
  const auto ts = default_t_samples(prof);
  const auto stats = weak_l1_stats(prof, ts);
  const double median = stats.tail[stats.tail.size() / 2].second;
  const double largest = stats.tail.back().second;
  const auto fine = maximal_function(seq, 2 * g, o.aperture);
  const auto fine_stats = weak_l1_stats(fine, default_t_samples(fine));
  const double change = std::abs(fine_stats.sup_t_sigma - stats.sup_t_sigma) / stats.sup_t_sigma;
  r.passed = largest < median && change < 0.05;
  r.detail = fmt("tail at largest t %.4e < at median t %.4e: %s; sup t*sigma %.6f -> %.6f (change %.2f%%)",
                 largest, median, largest < median ? "yes" : "no", stats.sup_t_sigma, fine_stats.sup_t_sigma,
                 100.0 * change);
  return r;
}

template <class F>
CriterionResult timed(int id, const char* name, F&& body) {
  Timer t;
  CriterionResult r;
  try {
    r = body();
  } catch (const Error& e) {
    r = {id, name, false, std::string("error ") + to_string(e.code()) + ": " + e.what(), 0.0, 0.0};
  } catch (const std::exception& e) {
    r = {id, name, false, std::string("exception: ") + e.what(), 0.0, 0.0};
  }
  r.seconds = t.seconds();
  if (r.budget_seconds > 0.0 && r.seconds > r.budget_seconds) {
    r.passed = false;
    r.detail += fmt(" (runtime %.2fs over budget %.0fs)", r.seconds, r.budget_seconds);
  }
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, const CriterionCallback& on_result) {
  std::vector<CriterionResult> out;
  std::vector<std::pair<Sequence, Certificate>> passing;
  auto push = [&](CriterionResult r) {
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  };
  push(timed(1, "metric identity", [&] { return crit_metric(opts); }));
  push(timed(2, "log-domain delta vs direct product", [&] { return crit_oracle(opts); }));
  push(timed(3, "Poisson normalization and Harnack", [&] { return crit_poisson(opts); }));
  push(timed(4, "separated sequences via propsep weight", [&] { return crit_propsep(opts, passing); }));
  push(timed(5, "maximal-function chain", [&] { return crit_maximal(opts); }));
  // Criterion 5 certificates join the Garnett check too.
  for (auto seq : {gen_radial(0.5, scaled(30, opts.quick)), gen_disjoint_tangent(scaled(30, opts.quick))}) {
    try {
      auto cert = certify_maximal(seq, certify_options(opts));
      if (cert.verdict) passing.emplace_back(std::move(seq), std::move(cert));
    } catch (const Error&) {
    }
  }
  push(timed(6, "staircase construction on radial sequences", [&] { return crit_staircase(opts, passing); }));
  push(timed(7, "noouter refutation bound", [&] { return crit_noouter(opts); }));
  push(timed(8, "Hardy-Orlicz example", [&] { return crit_orlicz(opts); }));
  push(timed(9, "Garnett gamma and H bounds", [&] { return crit_garnett(opts, passing); }));
  push(timed(10, "weak-L1 tail trend and grid convergence", [&] { return crit_weak(opts); }));
  return out;
}

}  // namespace freeinterp
