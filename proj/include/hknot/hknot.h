/*
 * hknot - Mobius-invariant energies of Legendrian knots in the Heisenberg
 * group, exposed as a C shared-library API with opaque handles and error
 * codes.  All functions return HK_OK on success; on failure they return a
 * status code and leave a message retrievable with hk_last_error().
 *
 * Handles are created by hk_*_create/from functions and must be released
 * with the matching hk_*_release.  All operations on constructed objects are
 * read-only and thread-safe; error messages are per-thread.
 */
#ifndef HKNOT_H
#define HKNOT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HKNOT_API __declspec(dllexport)
#else
#define HKNOT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hk_status {
    HK_OK = 0,
    HK_ERR_INVALID_ARGUMENT = 1, /* bad spec, parameter out of range */
    HK_ERR_NUMERICAL = 2,        /* non-embedded knot, failed extrapolation, ... */
    HK_ERR_UNSUPPORTED = 3       /* operation undefined for this object */
} hk_status;

typedef struct hk_curve hk_curve;   /* planar curve specification */
typedef struct hk_knot hk_knot;     /* arc-length sampled Legendrian knot */
typedef struct hk_mobius hk_mobius; /* element of PU(2,1) */
typedef struct hk_opt hk_opt;       /* energy minimization run */

/* message for the most recent failure on the calling thread */
HKNOT_API const char* hk_last_error(void);

HKNOT_API const char* hk_version(void);

/* ---- curves ----------------------------------------------------------- */

/* JSON spec: {"type": "fourier"|"gerono"|"finite_r_circle"|
 *             "infinite_r_circle"|"perturbed_r_circle", ...};
 * see README for the per-type fields.  Unknown fields are rejected. */
HKNOT_API hk_status hk_curve_from_json(const char* json_spec, hk_curve** out);
HKNOT_API void hk_curve_release(hk_curve* c);

HKNOT_API hk_status hk_curve_signed_area(const hk_curve* c, double* out);

/* Legendrian lift sampled at `samples` points (64 <= samples <= 65536,
 * even).  Closed curve types require a vanishing signed area. */
HKNOT_API hk_status hk_curve_lift(const hk_curve* c, int samples, hk_knot** out);

/* ---- knots ------------------------------------------------------------ */

HKNOT_API void hk_knot_release(hk_knot* k);
HKNOT_API hk_status hk_knot_length(const hk_knot* k, double* out);
HKNOT_API hk_status hk_knot_is_closed(const hk_knot* k, int* out);
HKNOT_API hk_status hk_knot_sample_count(const hk_knot* k, int* out);
/* sample i as (x, y, u) */
HKNOT_API hk_status hk_knot_sample(const hk_knot* k, int i, double xyu[3]);
HKNOT_API hk_status hk_knot_embeddedness_margin(const hk_knot* k, double* out);
HKNOT_API hk_status hk_knot_diameter(const hk_knot* k, double* out);

/* ---- energies ---------------------------------------------------------- */

typedef struct hk_energy_report {
    double value;
    char method[16];
    int samples;
    double slope;    /* hadamard: fitted O(eps) coefficient, else 0 */
    double epsilon0; /* beta: split radius, else 0 */
} hk_energy_report;

/* method: "subtraction" (reference), "hadamard", "cosine", or "beta" */
HKNOT_API hk_status hk_knot_energy(const hk_knot* k, const char* method,
                                   hk_energy_report* out);

/* pointwise potential V(K; gamma(s0)) */
HKNOT_API hk_status hk_knot_potential(const hk_knot* k, double s0, double* out);

typedef struct hk_beta_result {
    double value_re, value_im;
    double epsilon0;
    char method[16]; /* "direct" or "continued" */
} hk_beta_result;

/* meromorphic continuation for Re zeta > -7 away from the poles -1, -3, -5;
 * eps0 <= 0 picks a default inside the safe chord window */
HKNOT_API hk_status hk_knot_beta(const hk_knot* k, double zeta_re, double zeta_im,
                                 double eps0, hk_beta_result* out);

typedef struct hk_psi_fit {
    double t_max;
    double c1, c3, c5;
    double residual;
    double condition;
} hk_psi_fit;

/* least squares of Psi(t) ~ c1 t + c3 t^3 + c5 t^5; t_max <= 0 picks
 * min(L/64, safe_window/2) */
HKNOT_API hk_status hk_knot_psi_fit(const hk_knot* k, double t_max, int n_points,
                                    hk_psi_fit* out);

/* residues of B_K at -1, -3, -5: out = {2L, m2/12, m4/192} */
HKNOT_API hk_status hk_knot_residues(const hk_knot* k, double out[3]);

/* out = {L, int k^2, int k^4, int (k^4 + 8 k k'' + 8 k'^2)} */
HKNOT_API hk_status hk_knot_curvature_moments(const hk_knot* k, double out[4]);

/* ---- Mobius transformations ------------------------------------------- */

/* deterministic pseudo-random word in the generator families
 * (translations, dilations, rotations, inversion) */
HKNOT_API hk_status hk_mobius_random(uint64_t seed, int word_length, hk_mobius** out);
HKNOT_API void hk_mobius_release(hk_mobius* m);
/* generator word, e.g. "TRDI" in order of application */
HKNOT_API hk_status hk_mobius_word(const hk_mobius* m, char* buf, size_t buflen);

/* Mobius image of a closed knot, resampled to `samples` uniform arc-length
 * points.  Fails with HK_ERR_NUMERICAL when the image passes through
 * infinity. */
HKNOT_API hk_status hk_knot_transform(const hk_knot* k, const hk_mobius* m, int samples,
                                      hk_knot** out);

/* ---- identity checks used by the CLI ----------------------------------- */

/* max | |Omega(v,v')| - 2|v||v'|/d^2 | over `trials` random horizontal
 * configurations */
HKNOT_API hk_status hk_check_omega_identity(uint64_t seed, int trials, double* max_dev);

/* max |theta - theta_direct| over `pairs` random sample pairs of the knot */
HKNOT_API hk_status hk_check_theta_agreement(const hk_knot* k, uint64_t seed, int pairs,
                                             double* max_dev);

/* |circulation/h^2 - Re Omega| for one random configuration at step h */
HKNOT_API hk_status hk_check_dalpha(uint64_t seed, double h, double* residual);

/* ---- minimization ------------------------------------------------------ */

typedef struct hk_minimize_options {
    int max_iter;
    double fd_step;
    double init_step;
    double tol;
    int samples;
    int final_samples;
} hk_minimize_options;

HKNOT_API void hk_minimize_options_default(hk_minimize_options* opt);

HKNOT_API hk_status hk_minimize(const hk_curve* c0, const hk_minimize_options* opt,
                                hk_opt** out);
HKNOT_API void hk_opt_release(hk_opt* o);
HKNOT_API hk_status hk_opt_trace_size(const hk_opt* o, int* out);
/* entry i as (iteration, energy, gradient norm) */
HKNOT_API hk_status hk_opt_trace_entry(const hk_opt* o, int i, double out[3]);
HKNOT_API hk_status hk_opt_energy(const hk_opt* o, double* out);
HKNOT_API hk_status hk_opt_final_energy(const hk_opt* o, double* out);
HKNOT_API hk_status hk_opt_stalled(const hk_opt* o, int* out);

#ifdef __cplusplus
}
#endif

#endif /* HKNOT_H */
