/* C interface to the Eisenstein continued fraction library.
 *
 * Strings returned through char** out-parameters are owned by the caller and
 * released with cf_string_free. Field elements are written "X+Yr" where r is
 * sqrt(-3) and X, Y are rationals such as -3/7.
 */
#ifndef EISENCF_H
#define EISENCF_H

#include <stddef.h>
#include <stdint.h>

#if defined(EISENCF_BUILDING)
#define CF_API __attribute__((visibility("default")))
#else
#define CF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cf_status {
    CF_OK = 0,
    CF_ERR_PARSE = 1,
    CF_ERR_DOMAIN = 2,
    CF_ERR_DIVISION_BY_ZERO = 3,
    CF_ERR_CONFIG = 4,
    CF_ERR_IO = 5,
    CF_ERR_INTERNAL = 6,
    CF_VERIFY_FAIL = 7 /* report produced, at least one check failed */
} cf_status;

/* Message for the last non-OK status on the calling thread. */
CF_API const char* cf_last_error(void);
CF_API void cf_string_free(char* s);
/* 0 restores the default (CF_THREADS, then hardware concurrency). */
CF_API void cf_set_threads(unsigned n);

/* ---- arithmetic ---- */
CF_API cf_status cf_normalize(const char* z, char** out);
/* Unique digit a in the lattice J with z - a in U, as "(a,b)" meaning a + b*zeta. */
CF_API cf_status cf_floor_j(const char* z, char** out);
/* 1 if z is in U, 0 if not. */
CF_API cf_status cf_in_u(const char* z, int* out);

/* ---- expansions ---- */
typedef struct cf_expansion cf_expansion;

CF_API cf_status cf_expand(const char* z, size_t max_digits, cf_expansion** out);
CF_API void cf_expansion_free(cf_expansion* e);
CF_API size_t cf_expansion_length(const cf_expansion* e);
/* digit i as "(a,b)" */
CF_API cf_status cf_expansion_digit(const cf_expansion* e, size_t i, char** out);
/* "TerminatedAtZero", "Truncated" or "SpecialPeriodic" */
CF_API const char* cf_expansion_terminal(const cf_expansion* e);
CF_API cf_status cf_expansion_json(const cf_expansion* e, char** out);
CF_API cf_status cf_expansion_csv(const cf_expansion* e, char** out);

/* ---- verification ---- */
typedef struct cf_verify_config {
    uint64_t samples;
    unsigned depth;
    unsigned mono_depth;
    unsigned grid; /* 0 chooses from samples */
    uint64_t seed;
    int timing; /* nonzero adds elapsed seconds to the report */
} cf_verify_config;

CF_API void cf_verify_config_default(cf_verify_config* c);
/* which: inversions, frs, dual, orbit, monotonic, special or all.
 * Returns CF_VERIFY_FAIL with the report in *json_out when a check fails. */
CF_API cf_status cf_verify(const char* which, const cf_verify_config* c, char** json_out);

/* ---- ergodic statistics ---- */
typedef struct cf_ergodic_config {
    uint64_t orbits;
    uint64_t length;
    uint64_t samples; /* quadrature points */
    uint64_t seed;
    double tol; /* float boundary band, in (0, 1e-6] */
} cf_ergodic_config;

CF_API void cf_ergodic_config_default(cf_ergodic_config* c);
CF_API cf_status cf_levy(const cf_ergodic_config* c, char** json_out);
/* grid x grid CSV of the invariant density; C0 comes from c->samples quadrature points. */
CF_API cf_status cf_density(unsigned grid, const cf_ergodic_config* c, char** csv_out);

/* ---- figures ---- */
/* Writes the region SVGs into dir (created if needed); *json_out lists the paths. */
CF_API cf_status cf_render(const char* dir, char** json_out);

#ifdef __cplusplus
}
#endif

#endif
