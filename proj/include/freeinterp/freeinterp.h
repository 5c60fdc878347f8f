/* C interface to the free-interpolation toolkit.
 *
 * All functions returning fi_status leave a message retrievable with
 * fi_last_error() (thread-local) on failure. Strings returned through
 * char** are owned by the caller and released with fi_string_free(). */
#ifndef FREEINTERP_FREEINTERP_H
#define FREEINTERP_FREEINTERP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FI_API __declspec(dllexport)
#else
#define FI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fi_status {
  FI_OK = 0,
  FI_INVALID_ARGUMENT,
  FI_DUPLICATE_POINT,
  FI_NON_FINITE,
  FI_CAPACITY_EXCEEDED,
  FI_UNDERFLOW,
  FI_HYPOTHESIS_VIOLATED,
  FI_GRID_TOO_COARSE,
  FI_NOT_RADIAL,
  FI_MODE_MISMATCH,
  FI_ARCS_OVERLAP,
  FI_DEGENERATE_WEIGHT,
  FI_PARSE,
  FI_NOT_FOUND,
  FI_INTERNAL
} fi_status;

FI_API const char* fi_status_name(fi_status status);
FI_API const char* fi_last_error(void);
FI_API const char* fi_version(void);
FI_API void fi_string_free(char* s);

typedef struct fi_sequence fi_sequence;
typedef struct fi_measure fi_measure;
typedef struct fi_certificate fi_certificate;
typedef struct fi_profile fi_profile;

/* ---- sequences ---- */

/* Points given by 1-|z| and arg z. */
FI_API fi_status fi_sequence_create(const double* one_minus_r, const double* theta, size_t n,
                                    const char* label, fi_sequence** out);
FI_API fi_status fi_sequence_from_json(const char* text, fi_sequence** out);
FI_API fi_status fi_sequence_to_json(const fi_sequence* seq, char** out);
FI_API void fi_sequence_free(fi_sequence* seq);
FI_API size_t fi_sequence_size(const fi_sequence* seq);
FI_API fi_status fi_sequence_point(const fi_sequence* seq, size_t i, double* r, double* theta,
                                   double* one_minus_r);

FI_API fi_status fi_gen_radial(double q, size_t n, double theta, fi_sequence** out);
FI_API fi_status fi_gen_stolz(double q, size_t n, double theta, double spread, double aperture,
                              fi_sequence** out);
FI_API fi_status fi_gen_disjoint_tangent(size_t n, fi_sequence** out);
FI_API fi_status fi_gen_random_separated(size_t n, double min_separation, uint64_t seed,
                                         fi_sequence** out);
/* 1-|z_n| = 4^-n with disjoint shadow arcs. */
FI_API fi_status fi_gen_orlicz_base(size_t n, fi_sequence** out);
/* Appends radial partners with |b(z'_n, z_n)| = exp(-eps_n / (1-|z_n|)). */
FI_API fi_status fi_attach_partners(const fi_sequence* base, const double* eps, size_t n,
                                    fi_sequence** out);

FI_API fi_status fi_log_blaschke_at(const fi_sequence* seq, size_t i, double* out);
FI_API fi_status fi_separation_constant(const fi_sequence* seq, double* out);
FI_API fi_status fi_classify_json(const fi_sequence* seq, char** out);

/* ---- measures ---- */

FI_API fi_status fi_measure_create(fi_measure** out);
FI_API fi_status fi_measure_from_json(const char* text, fi_measure** out);
FI_API void fi_measure_free(fi_measure* mu);
/* Adds value * indicator of the arc centred at center with the given half-width. */
FI_API fi_status fi_measure_add_step(fi_measure* mu, double center, double half_width, double value);
FI_API fi_status fi_measure_add_atom(fi_measure* mu, double angle, double mass);
FI_API fi_status fi_measure_total_mass(const fi_measure* mu, double* out);
FI_API fi_status fi_poisson_extend(const fi_measure* mu, double one_minus_r, double theta, double* out);
FI_API fi_status fi_herglotz(const fi_measure* mu, double one_minus_r, double theta, double* re,
                             double* im);

/* ---- certificates ---- */

typedef enum fi_construction {
  FI_CERT_PROPSEP = 0,
  FI_CERT_MAXIMAL,
  FI_CERT_CS,
  FI_CERT_STAIRCASE,
  FI_CERT_DIRAC,
  FI_CERT_CUSTOM
} fi_construction;

typedef struct fi_options {
  size_t grid_size;     /* default 4096 */
  double aperture;      /* default 2 */
  double tolerance;     /* default 1e-9 */
  double threshold;     /* propsep near-factor threshold; <= 0 selects min(1/2, delta) */
  int exact_plateaus;   /* maximal: nonzero uses the exact step form of M */
  size_t min_cells;     /* maximal grid mode: cells per shadow arc */
} fi_options;

FI_API void fi_options_default(fi_options* opts);
FI_API fi_status fi_construction_from_name(const char* name, fi_construction* out);

/* custom is required for FI_CERT_CUSTOM and ignored otherwise; opts may be NULL. */
FI_API fi_status fi_certify(const fi_sequence* seq, fi_construction construction,
                            const fi_measure* custom, const fi_options* opts,
                            fi_certificate** out);
FI_API void fi_certificate_free(fi_certificate* cert);
FI_API int fi_certificate_verdict(const fi_certificate* cert);
FI_API double fi_certificate_min_margin(const fi_certificate* cert);
FI_API fi_status fi_certificate_constant(const fi_certificate* cert, const char* name, double* out);
FI_API fi_status fi_certificate_to_json(const fi_certificate* cert, char** out);

/* ---- maximal function ---- */

FI_API fi_status fi_maximal_profile(const fi_sequence* seq, size_t grid_size, double aperture,
                                    fi_profile** out);
FI_API void fi_profile_free(fi_profile* profile);
FI_API size_t fi_profile_size(const fi_profile* profile);
FI_API fi_status fi_profile_value(const fi_profile* profile, size_t i, double* theta, double* m);
FI_API fi_status fi_profile_csv(const fi_profile* profile, char** out);
FI_API fi_status fi_profile_stats_json(const fi_profile* profile, char** out);

/* ---- Orlicz ---- */

/* Example on fi_gen_orlicz_base(n) with gamma_n = n^2. */
FI_API fi_status fi_orlicz_example_json(double p, size_t n, double tolerance, char** out);
FI_API fi_status fi_orlicz_example_sequence(double p, size_t n, fi_sequence** out);
/* kind is "power" (param p) or "exponential" (param rate). */
FI_API fi_status fi_orlicz_growth_json(const char* kind, double param, double t_min, double t_max,
                                       size_t count, char** out);

/* ---- refutation bound ---- */

FI_API fi_status fi_noouter_json(const fi_sequence* seq, const double* eps, size_t n, double c_mu,
                                 char** out);

/* ---- acceptance suite ---- */

typedef struct fi_criterion {
  int id;
  const char* name;
  int passed;
  const char* detail;
  double seconds;
} fi_criterion;

typedef void (*fi_criterion_callback)(const fi_criterion* result, void* user);

FI_API fi_status fi_run_acceptance(int quick, uint64_t seed, fi_criterion_callback callback,
                                   void* user, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif
