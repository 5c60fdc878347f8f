#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "certificates.hpp"
#include "potential.hpp"
#include "sequence.hpp"

namespace freeinterp {

struct OrliczFunction {
  std::string name;
  std::map<std::string, double> params;
  std::function<double(double)> eval;

  double operator()(double t) const { return eval(t); }
};

/// t^p for t >= 0, 0 for t < 0. Requires p > 1.
OrliczFunction orlicz_power(double p);
/// exp(rate * t).
OrliczFunction orlicz_exponential(double rate = 1.0);

struct SampleRange {
  double t_min = 0.0;
  double t_max = 50.0;
  std::size_t count = 201;

  std::vector<double> samples() const;
};

struct ShapeCheck {
  bool convex = true;
  bool nondecreasing = true;
  bool superlinear_trend = true;  ///< phi(t)/t increasing over the upper half
};
ShapeCheck spot_check(const OrliczFunction& phi, const SampleRange& range = {});

// Sampled predicates: true when the inequality holds at every sample t >= t0.
bool delta2_holds(const OrliczFunction& phi, double m, double k, std::span<const double> samples,
                  double t0 = 0.0);
bool v2_holds(const OrliczFunction& phi, double alpha, std::span<const double> samples,
              double t0 = 0.0);
bool subadditive_holds(const OrliczFunction& phi, double c, std::span<const double> samples,
                       double t0 = 0.0);

/// Smallest sample t0 from which the predicate holds on all later samples.
std::optional<double> delta2_threshold(const OrliczFunction& phi, double m, double k,
                                       std::span<const double> samples);
std::optional<double> v2_threshold(const OrliczFunction& phi, double alpha,
                                   std::span<const double> samples);

struct Delta2Witness {
  double m = 0.0;
  double k = 0.0;
  double threshold = 0.0;
};
struct V2Witness {
  double alpha = 0.0;
  double threshold = 0.0;
};
struct SubadditiveWitness {
  double c = 0.0;
  double threshold = 0.0;
};

/// Witnesses found on samples; never a proof.
struct GrowthReport {
  std::optional<Delta2Witness> delta2;
  std::optional<V2Witness> v2;
  std::optional<SubadditiveWitness> subadditive;
  SampleRange range;
};
GrowthReport check_growth(const OrliczFunction& phi, const SampleRange& range = {});

/// Integral of phi(w) against normalized arc length, exact for step weights.
double orlicz_integral(const OrliczFunction& phi, const StepWeight& w);
/// Same integral by adaptive quadrature of phi(w(theta)) on each segment.
double orlicz_integral_quadrature(const OrliczFunction& phi, const StepWeight& w);

struct OrliczSufficiency {
  Certificate majorant_cert;
  double phi_integral = 0.0;
  bool verdict = false;
};
OrliczSufficiency orlicz_sufficiency_check(const Sequence& seq, const StepWeight& w,
                                           const OrliczFunction& phi, double tolerance = 1e-9);

struct OrliczExample {
  Sequence seq;  ///< base points followed by their partners
  StepWeight u;
  std::vector<double> eps;
  double p = 2.0;
  double phi_integral = 0.0;
  double closed_form_sum = 0.0;  ///< sum (1-|lam_n|) gamma_n
  double scale = 0.0;
  Certificate certificate;
  std::vector<double> scale_ratios;  ///< per base index, worst of lam_n and lam'_n
  std::vector<double> pair_log_distances;  ///< log|b_{lam'_n}(lam_n)| = -gamma_n^{1/p}
  double min_pair_distance = 0.0;
  bool scale_bounded = false;  ///< max ratio on the second half <= 2x the first half
};

/// Base with 1-|lam_n| = 4^-n (n = 1..count) and disjoint shadow arcs.
Sequence orlicz_default_base(std::size_t count);
/// gamma_n = n^2.
std::vector<double> orlicz_default_gamma(std::size_t count);

OrliczExample build_orlicz_example(double p, const Sequence& base, std::span<const double> gamma,
                                   double tolerance = 1e-9);

}  // namespace freeinterp
