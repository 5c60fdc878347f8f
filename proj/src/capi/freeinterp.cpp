#include "freeinterp/freeinterp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "acceptance.hpp"
#include "certificates.hpp"
#include "error.hpp"
#include "io.hpp"
#include "orlicz.hpp"
#include "potential.hpp"
#include "sequence.hpp"

struct fi_sequence {
  freeinterp::Sequence value;
};
struct fi_measure {
  freeinterp::Measure value;
};
struct fi_certificate {
  freeinterp::Certificate value;
};
struct fi_profile {
  freeinterp::MaximalProfile value;
};

namespace {

using namespace freeinterp;

thread_local std::string g_last_error;

fi_status map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return FI_INVALID_ARGUMENT;
    case ErrorCode::DuplicatePoint: return FI_DUPLICATE_POINT;
    case ErrorCode::NonFinite: return FI_NON_FINITE;
    case ErrorCode::CapacityExceeded: return FI_CAPACITY_EXCEEDED;
    case ErrorCode::Underflow: return FI_UNDERFLOW;
    case ErrorCode::HypothesisViolated: return FI_HYPOTHESIS_VIOLATED;
    case ErrorCode::GridTooCoarse: return FI_GRID_TOO_COARSE;
    case ErrorCode::NotRadial: return FI_NOT_RADIAL;
    case ErrorCode::ModeMismatch: return FI_MODE_MISMATCH;
    case ErrorCode::ArcsOverlap: return FI_ARCS_OVERLAP;
    case ErrorCode::DegenerateWeight: return FI_DEGENERATE_WEIGHT;
    case ErrorCode::Parse: return FI_PARSE;
  }
  return FI_INTERNAL;
}

fi_status fail(fi_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
fi_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return FI_OK;
  } catch (const Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(FI_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FI_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FI_INTERNAL, e.what());
  } catch (...) {
    return fail(FI_INTERNAL, "unknown exception");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

template <class T, class V>
void emit(T** out, V&& value) {
  require(out, "output handle");
  *out = new T{std::forward<V>(value)};
}

void emit_string(char** out, const std::string& s) {
  require(out, "output string");
  *out = copy_string(s);
}

CertifyOptions to_options(const fi_options* o) {
  CertifyOptions c;
  if (!o) return c;
  if (o->grid_size < 16) throw Error(ErrorCode::InvalidArgument, "grid_size must be at least 16");
  if (!(o->aperture > 1.0)) throw Error(ErrorCode::InvalidArgument, "aperture must exceed 1");
  c.grid_size = o->grid_size;
  c.aperture = o->aperture;
  c.tolerance = o->tolerance;
  if (o->threshold > 0.0) c.threshold = o->threshold;
  c.exact_plateaus = o->exact_plateaus != 0;
  c.min_cells = o->min_cells;
  return c;
}

}  // namespace

extern "C" {

const char* fi_status_name(fi_status status) {
  switch (status) {
    case FI_OK: return "Ok";
    case FI_INVALID_ARGUMENT: return "InvalidArgument";
    case FI_DUPLICATE_POINT: return "DuplicatePoint";
    case FI_NON_FINITE: return "NonFinite";
    case FI_CAPACITY_EXCEEDED: return "CapacityExceeded";
    case FI_UNDERFLOW: return "Underflow";
    case FI_HYPOTHESIS_VIOLATED: return "HypothesisViolated";
    case FI_GRID_TOO_COARSE: return "GridTooCoarse";
    case FI_NOT_RADIAL: return "NotRadial";
    case FI_MODE_MISMATCH: return "ModeMismatch";
    case FI_ARCS_OVERLAP: return "ArcsOverlap";
    case FI_DEGENERATE_WEIGHT: return "DegenerateWeight";
    case FI_PARSE: return "Parse";
    case FI_NOT_FOUND: return "NotFound";
    case FI_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* fi_last_error(void) { return g_last_error.c_str(); }
const char* fi_version(void) { return "0.1.0"; }
void fi_string_free(char* s) { std::free(s); }

fi_status fi_sequence_create(const double* one_minus_r, const double* theta, size_t n,
                             const char* label, fi_sequence** out) {
  return guard([&] {
    if (n > 0) {
      require(one_minus_r, "one_minus_r");
      require(theta, "theta");
    }
    std::vector<DiskPoint> pts;
    pts.reserve(n);
    for (size_t i = 0; i < n; ++i) pts.push_back(DiskPoint::from_co_radius(one_minus_r[i], theta[i]));
    emit(out, Sequence(std::move(pts), label ? label : ""));
  });
}

fi_status fi_sequence_from_json(const char* text, fi_sequence** out) {
  return guard([&] {
    require(text, "text");
    emit(out, parse_sequence(text));
  });
}

fi_status fi_sequence_to_json(const fi_sequence* seq, char** out) {
  return guard([&] {
    require(seq, "sequence");
    emit_string(out, dump(to_json(seq->value)));
  });
}

void fi_sequence_free(fi_sequence* seq) { delete seq; }
size_t fi_sequence_size(const fi_sequence* seq) { return seq ? seq->value.size() : 0; }

fi_status fi_sequence_point(const fi_sequence* seq, size_t i, double* r, double* theta,
                            double* one_minus_r) {
  return guard([&] {
    require(seq, "sequence");
    if (i >= seq->value.size()) throw Error(ErrorCode::InvalidArgument, "index out of range");
    const auto& p = seq->value[i];
    if (r) *r = p.modulus();
    if (theta) *theta = p.angle();
    if (one_minus_r) *one_minus_r = p.co_radius();
  });
}

fi_status fi_gen_radial(double q, size_t n, double theta, fi_sequence** out) {
  return guard([&] { emit(out, gen_radial(q, n, theta)); });
}

fi_status fi_gen_stolz(double q, size_t n, double theta, double spread, double aperture,
                       fi_sequence** out) {
  return guard([&] { emit(out, gen_stolz(q, n, theta, spread, aperture)); });
}

fi_status fi_gen_disjoint_tangent(size_t n, fi_sequence** out) {
  return guard([&] { emit(out, gen_disjoint_tangent(n)); });
}

fi_status fi_gen_random_separated(size_t n, double min_separation, uint64_t seed, fi_sequence** out) {
  return guard([&] { emit(out, gen_random_separated(n, min_separation, seed)); });
}

fi_status fi_gen_orlicz_base(size_t n, fi_sequence** out) {
  return guard([&] { emit(out, orlicz_default_base(n)); });
}

fi_status fi_attach_partners(const fi_sequence* base, const double* eps, size_t n, fi_sequence** out) {
  return guard([&] {
    require(base, "base");
    if (n > 0) require(eps, "eps");
    if (n != base->value.size())
      throw Error(ErrorCode::InvalidArgument, "eps length must equal the base size");
    emit(out, attach_partner_points(base->value, std::span<const double>(eps, n)));
  });
}

fi_status fi_log_blaschke_at(const fi_sequence* seq, size_t i, double* out) {
  return guard([&] {
    require(seq, "sequence");
    require(out, "out");
    if (i >= seq->value.size()) throw Error(ErrorCode::InvalidArgument, "index out of range");
    *out = log_blaschke_at(seq->value, i);
  });
}

fi_status fi_separation_constant(const fi_sequence* seq, double* out) {
  return guard([&] {
    require(seq, "sequence");
    require(out, "out");
    *out = separation_constant(seq->value);
  });
}

fi_status fi_classify_json(const fi_sequence* seq, char** out) {
  return guard([&] {
    require(seq, "sequence");
    emit_string(out, dump(to_json(classify(seq->value))));
  });
}

fi_status fi_measure_create(fi_measure** out) {
  return guard([&] { emit(out, Measure{}); });
}

fi_status fi_measure_from_json(const char* text, fi_measure** out) {
  return guard([&] {
    require(text, "text");
    emit(out, parse_measure(text));
  });
}

void fi_measure_free(fi_measure* mu) { delete mu; }

fi_status fi_measure_add_step(fi_measure* mu, double center, double half_width, double value) {
  return guard([&] {
    require(mu, "measure");
    mu->value.ac.add(CircleArc(center, half_width), value);
  });
}

fi_status fi_measure_add_atom(fi_measure* mu, double angle, double mass) {
  return guard([&] {
    require(mu, "measure");
    mu->value.sing.add(angle, mass);
  });
}

fi_status fi_measure_total_mass(const fi_measure* mu, double* out) {
  return guard([&] {
    require(mu, "measure");
    require(out, "out");
    *out = mu->value.total_mass();
  });
}

fi_status fi_poisson_extend(const fi_measure* mu, double one_minus_r, double theta, double* out) {
  return guard([&] {
    require(mu, "measure");
    require(out, "out");
    *out = poisson_extend(mu->value, DiskPoint::from_co_radius(one_minus_r, theta));
  });
}

fi_status fi_herglotz(const fi_measure* mu, double one_minus_r, double theta, double* re, double* im) {
  return guard([&] {
    require(mu, "measure");
    const auto h = herglotz(mu->value, DiskPoint::from_co_radius(one_minus_r, theta));
    if (re) *re = h.real();
    if (im) *im = h.imag();
  });
}

void fi_options_default(fi_options* opts) {
  if (!opts) return;
  const CertifyOptions c;
  opts->grid_size = c.grid_size;
  opts->aperture = c.aperture;
  opts->tolerance = c.tolerance;
  opts->threshold = 0.0;
  opts->exact_plateaus = c.exact_plateaus ? 1 : 0;
  opts->min_cells = c.min_cells;
}

fi_status fi_construction_from_name(const char* name, fi_construction* out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    static const std::pair<const char*, fi_construction> table[] = {
        {"propsep", FI_CERT_PROPSEP}, {"maximal", FI_CERT_MAXIMAL},     {"cs", FI_CERT_CS},
        {"staircase", FI_CERT_STAIRCASE}, {"dirac", FI_CERT_DIRAC}, {"custom-measure", FI_CERT_CUSTOM}};
    for (const auto& [n, c] : table)
      if (std::strcmp(n, name) == 0) {
        *out = c;
        return;
      }
    throw Error(ErrorCode::InvalidArgument, std::string("unknown construction: ") + name);
  });
}

fi_status fi_certify(const fi_sequence* seq, fi_construction construction, const fi_measure* custom,
                     const fi_options* opts, fi_certificate** out) {
  return guard([&] {
    require(seq, "sequence");
    const auto o = to_options(opts);
    const auto& s = seq->value;
    switch (construction) {
      case FI_CERT_PROPSEP: emit(out, certify_propsep(s, o)); return;
      case FI_CERT_MAXIMAL: emit(out, certify_maximal(s, o)); return;
      case FI_CERT_CS: emit(out, certify_cs(s, o)); return;
      case FI_CERT_STAIRCASE: emit(out, certify_staircase_radial(s, o)); return;
      case FI_CERT_DIRAC: emit(out, certify_dirac(s, o)); return;
      case FI_CERT_CUSTOM:
        require(custom, "custom measure");
        emit(out, verify_majorant(s, custom->value, o.tolerance));
        return;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown construction");
  });
}

void fi_certificate_free(fi_certificate* cert) { delete cert; }
int fi_certificate_verdict(const fi_certificate* cert) { return cert && cert->value.verdict ? 1 : 0; }
double fi_certificate_min_margin(const fi_certificate* cert) {
  return cert ? cert->value.min_margin() : 0.0;
}

fi_status fi_certificate_constant(const fi_certificate* cert, const char* name, double* out) {
  if (!cert || !name || !out) return fail(FI_INVALID_ARGUMENT, "null argument");
  const auto it = cert->value.constants.find(name);
  if (it == cert->value.constants.end())
    return fail(FI_NOT_FOUND, std::string("no constant named ") + name);
  *out = it->second;
  return FI_OK;
}

fi_status fi_certificate_to_json(const fi_certificate* cert, char** out) {
  return guard([&] {
    require(cert, "certificate");
    emit_string(out, dump(to_json(cert->value)));
  });
}

fi_status fi_maximal_profile(const fi_sequence* seq, size_t grid_size, double aperture, fi_profile** out) {
  return guard([&] {
    require(seq, "sequence");
    if (grid_size < 16) throw Error(ErrorCode::InvalidArgument, "grid_size must be at least 16");
    if (!(aperture > 1.0)) throw Error(ErrorCode::InvalidArgument, "aperture must exceed 1");
    emit(out, maximal_function(seq->value, grid_size, aperture));
  });
}

void fi_profile_free(fi_profile* profile) { delete profile; }
size_t fi_profile_size(const fi_profile* profile) { return profile ? profile->value.grid.size() : 0; }

fi_status fi_profile_value(const fi_profile* profile, size_t i, double* theta, double* m) {
  return guard([&] {
    require(profile, "profile");
    if (i >= profile->value.grid.size()) throw Error(ErrorCode::InvalidArgument, "index out of range");
    if (theta) *theta = profile->value.grid[i];
    if (m) *m = profile->value.values[i];
  });
}

fi_status fi_profile_csv(const fi_profile* profile, char** out) {
  return guard([&] {
    require(profile, "profile");
    emit_string(out, profile_csv(profile->value));
  });
}

fi_status fi_profile_stats_json(const fi_profile* profile, char** out) {
  return guard([&] {
    require(profile, "profile");
    const auto ts = default_t_samples(profile->value);
    emit_string(out, dump(to_json(weak_l1_stats(profile->value, ts))));
  });
}

fi_status fi_orlicz_example_json(double p, size_t n, double tolerance, char** out) {
  return guard([&] {
    const auto ex = build_orlicz_example(p, orlicz_default_base(n), orlicz_default_gamma(n), tolerance);
    emit_string(out, dump(to_json(ex)));
  });
}

fi_status fi_orlicz_example_sequence(double p, size_t n, fi_sequence** out) {
  return guard([&] {
    auto ex = build_orlicz_example(p, orlicz_default_base(n), orlicz_default_gamma(n));
    emit(out, std::move(ex.seq));
  });
}

fi_status fi_orlicz_growth_json(const char* kind, double param, double t_min, double t_max, size_t count,
                                char** out) {
  return guard([&] {
    require(kind, "kind");
    OrliczFunction phi;
    if (std::strcmp(kind, "power") == 0) phi = orlicz_power(param);
    else if (std::strcmp(kind, "exponential") == 0) phi = orlicz_exponential(param);
    else throw Error(ErrorCode::InvalidArgument, std::string("unknown Orlicz family: ") + kind);
    const SampleRange range{t_min, t_max, count};
    auto j = to_json(check_growth(phi, range));
    const auto shape = spot_check(phi, range);
    j["name"] = phi.name;
    j["params"] = phi.params;
    j["shape"] = {{"convex", shape.convex},
                  {"nondecreasing", shape.nondecreasing},
                  {"superlinear_trend", shape.superlinear_trend}};
    emit_string(out, dump(j));
  });
}

fi_status fi_noouter_json(const fi_sequence* seq, const double* eps, size_t n, double c_mu, char** out) {
  return guard([&] {
    require(seq, "sequence");
    if (n > 0) require(eps, "eps");
    emit_string(out, dump(to_json(noouter_bound(seq->value, std::span<const double>(eps, n), c_mu))));
  });
}

fi_status fi_run_acceptance(int quick, uint64_t seed, fi_criterion_callback callback, void* user,
                            int* all_passed) {
  return guard([&] {
    AcceptanceOptions o;
    o.quick = quick != 0;
    o.seed = seed;
    bool ok = true;
    run_acceptance(o, [&](const CriterionResult& r) {
      ok = ok && r.passed;
      if (!callback) return;
      const fi_criterion c{r.id, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), r.seconds};
      callback(&c, user);
    });
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

}  // extern "C"
