/* distill.h - C interface to the entanglement distillation simulator.
 *
 * The library evaluates and optimizes two-pair distillation protocols
 * (DEJMPS, LOCCNet, NA-LOCCNet) whose measurement results travel to the
 * deciding party over noisy binary symmetric channels. All functions are
 * thread-safe; protocol handles are immutable after creation and may be
 * shared across threads.
 *
 * Every fallible call returns a dst_status. On failure a human-readable
 * message is available from dst_last_error() on the calling thread.
 */
#ifndef DISTILL_H
#define DISTILL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DST_API __declspec(dllexport)
#else
#define DST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dst_status {
    DST_OK = 0,
    DST_ERR_INVALID_ARGUMENT = 1, /* null pointers, bad structure, missing theta */
    DST_ERR_DOMAIN = 2,           /* F outside [0,1], p outside [0,0.5], ...    */
    DST_ERR_DEGENERATE = 3,       /* success probability vanishes               */
    DST_ERR_PARSE = 4,            /* malformed circuit-description JSON         */
    DST_ERR_INTERNAL = 5
} dst_status;

/* Opaque protocol handle. */
typedef struct dst_protocol dst_protocol;

typedef enum dst_opt_mode {
    DST_OPT_NOISE_AWARE = 0, /* maximize the channel-aware average fidelity */
    DST_OPT_NOISELESS = 1    /* maximize F^00, then report noisy metrics    */
} dst_opt_mode;

/* One true measurement outcome (x,y), indexed by 2*x + y. */
typedef struct dst_outcome {
    double probability; /* P^xy */
    double fidelity;    /* F^xy; 0 when not present */
    int present;        /* 0 when P^xy is below the probability floor */
} dst_outcome;

typedef struct dst_evaluation {
    double avg_fidelity; /* conditional average fidelity given success */
    double p_succ;       /* probability that success is declared */
    dst_outcome outcome[4];
} dst_evaluation;

/* Zero-initialize for defaults (1024 grid points, 1e-9 tolerance). */
typedef struct dst_search_config {
    int grid_points;
    double refine_tol;
    int refine_max_iter;
} dst_search_config;

typedef struct dst_mc_config {
    uint64_t num_samples; /* 0 selects the default of 1000000 */
    uint64_t seed;
} dst_mc_config;

typedef struct dst_mc_result {
    double avg_fidelity;
    double avg_fidelity_stderr;
    double p_succ;
    double p_succ_stderr;
    double outcome_freq[4];
    uint64_t num_samples;
    uint64_t num_successes;
} dst_mc_result;

DST_API const char* dst_version(void);

/* Message from the most recent failing call on this thread; never NULL. */
DST_API const char* dst_last_error(void);

/* Built-in protocol registry. */
DST_API int dst_builtin_count(void);
DST_API const char* dst_builtin_name(int index); /* NULL when out of range */

DST_API dst_status dst_protocol_builtin(const char* name, dst_protocol** out);
DST_API dst_status dst_protocol_from_json(const char* json_text, dst_protocol** out);
DST_API void dst_protocol_free(dst_protocol* proto);

DST_API const char* dst_protocol_name(const dst_protocol* proto);
DST_API int dst_protocol_num_params(const dst_protocol* proto);

/* Fills out_pairs with up to 8 ints as (alice,bob) received-bit pairs and
 * returns the number of pairs in the success set. */
DST_API int dst_protocol_success_set(const dst_protocol* proto, int out_pairs[8]);

/* Serializes to the circuit-description JSON format. Writes up to buf_size
 * bytes including the terminator; *needed receives the full length
 * (excluding the terminator) regardless. buf may be NULL to query the size. */
DST_API dst_status dst_protocol_to_json(const dst_protocol* proto, char* buf,
                                        size_t buf_size, size_t* needed);

/* Exact density-matrix evaluation at input fidelity F and bit flip
 * probability p. theta may be NULL for parameterless protocols and must be
 * non-NULL for protocols with a free parameter. */
DST_API dst_status dst_evaluate(const dst_protocol* proto, const double* theta,
                                double input_fidelity, double flip_probability,
                                dst_evaluation* out);

/* One-dimensional search over theta in [0, 2*pi). cfg may be NULL. */
DST_API dst_status dst_optimize(const dst_protocol* proto, dst_opt_mode mode,
                                double input_fidelity, double flip_probability,
                                const dst_search_config* cfg, double* theta_star,
                                dst_evaluation* out);

/* Monte-Carlo trajectory estimate with a seeded, reproducible sampler. */
DST_API dst_status dst_mc_evaluate(const dst_protocol* proto, const double* theta,
                                   double input_fidelity, double flip_probability,
                                   const dst_mc_config* cfg, dst_mc_result* out);

#ifdef __cplusplus
}
#endif

#endif /* DISTILL_H */
