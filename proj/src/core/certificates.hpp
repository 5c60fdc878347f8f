#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "potential.hpp"
#include "sequence.hpp"

namespace freeinterp {

/// A positive measure together with its margins
/// P[mu](lam) - log(1/delta_lam). verdict == (min margin >= -tolerance).
struct Certificate {
  std::string construction;
  Measure measure;
  std::vector<double> margins;
  bool verdict = false;
  double tolerance = 1e-9;
  std::map<std::string, double> constants;
  std::map<std::string, std::vector<double>> series;

  double min_margin() const;
};

struct CertifyOptions {
  std::size_t grid_size = 4096;
  double aperture = 2.0;
  double tolerance = 1e-9;
  /// Near-factor threshold for certify_propsep; unset means min(1/2, delta(Lambda)).
  std::optional<double> threshold;
  bool exact_plateaus = true; ///< certify_maximal: exact M_Lambda instead of the grid
  std::size_t min_cells = 4;  ///< certify_maximal grid mode: cells per shadow arc
};

Certificate verify_majorant(const Sequence& seq, const Measure& mu, double tolerance = 1e-9);

/// Weight sum of chi_{I_lam} scaled by the smallest c* with
/// c* P[w](lam) >= sum over |b_lam(mu)| >= threshold of log(1/|b_lam(mu)|).
/// With the default threshold every factor counts, so the result is a full
/// majorant for any finite sequence.
Certificate certify_propsep(const Sequence& seq, const CertifyOptions& opts = {});

struct PropsepPairBound {
  double ratio = 0.0;  ///< (1-|b_lam(mu)|^2) / P[chi_{I_mu}](lam)
  bool near_case = false;  ///< lam in D(mu*) = {|z - mu/|mu|| <= 2(1-|mu|)}
};
PropsepPairBound propsep_pair_bound(const DiskPoint& lam, const DiskPoint& mu);

/// Weight (1+pi^2) M_Lambda with the chain
/// P[w](lam) >= (1/(1-|lam|)) int_{I_lam} M >= log(1/delta_lam) checked per point.
Certificate certify_maximal(const Sequence& seq, const CertifyOptions& opts = {});

/// u = sum a_lam chi_{I_lam}, a_lam = log(1/delta_lam); measure (1+pi^2) u.
Certificate certify_cs(const Sequence& seq, const CertifyOptions& opts = {});

/// Staircase weight sum beta_n/|J_n| chi_{J_n} on J_n = I_n \ I_{n+1} for a
/// radial sequence, scaled minimally. Throws NotRadial.
Certificate certify_staircase_radial(const Sequence& seq, const CertifyOptions& opts = {});

/// Dirac mass at the common angle of a radial sequence with
/// mass max (1-|lam_n|) log(1/delta_n). Throws NotRadial.
Certificate certify_dirac(const Sequence& seq, const CertifyOptions& opts = {});

/// Common angle of a radial sequence (points at the origin are ignored).
/// Throws NotRadial when angles differ by more than 1e-12.
double radial_angle(const Sequence& seq);

enum class TraceMode { Nevanlinna, Smirnov };

struct TraceCheck {
  std::vector<std::complex<double>> values;
  std::vector<double> margins;  ///< P[mu](lam) - log+|a_lam|
  bool verdict = false;
};

/// Throws ModeMismatch for Smirnov mode with a singular part.
TraceCheck trace_membership(const Sequence& seq, std::span<const std::complex<double>> values,
                            const Measure& mu, TraceMode mode, double tolerance = 1e-9);

inline double log_plus(double modulus) noexcept {
  return modulus > 1.0 ? std::log(modulus) : 0.0;
}

/// |a_lam| <= delta_lam (1 + log(e/delta_lam))^-2, per point.
std::vector<bool> garnett_precondition(const Sequence& seq,
                                       std::span<const std::complex<double>> values);

struct GarnettTransport {
  std::vector<std::complex<double>> values;  ///< omega gamma e^{-h} phi(log(e/delta))
  std::vector<double> log_ratio;  ///< log|omega gamma e^{-h}| - log delta, <= 0 when passing
  std::vector<bool> passes;       ///< garnett_precondition on the transported values
};

/// Transports bounded data omega through a harmonic-majorant measure into
/// Garnett-admissible values.
GarnettTransport garnett_transport(const Sequence& seq, const Measure& mu,
                                   std::span<const std::complex<double>> omega,
                                   double tolerance = 1e-9);

struct NoOuterBound {
  std::vector<double> partial_sums;
  double rhs_bound = 0.0;  ///< c_mu (sum (1-|lam|) + 2)
  std::optional<std::size_t> crossing_index;  ///< 1-based
};

/// Throws ArcsOverlap unless the tangent arcs are pairwise disjoint.
NoOuterBound noouter_bound(const Sequence& seq, std::span<const double> eps, double c_mu);

}  // namespace freeinterp
