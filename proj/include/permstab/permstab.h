#ifndef PERMSTAB_PERMSTAB_H
#define PERMSTAB_PERMSTAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(PERMSTAB_BUILDING)
#define PS_API __attribute__((visibility("default")))
#else
#define PS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ps_status {
  PS_OK = 0,
  PS_INVALID_ARGUMENT = 1,
  PS_NOT_A_PERMUTATION = 2,
  PS_OUT_OF_RANGE = 3,
  PS_NON_BOOLEAN = 4,
  PS_BUDGET_EXCEEDED = 5,
  PS_UNSUPPORTED = 6,
  PS_IO = 7,
  PS_VERIFICATION_FAILED = 8,
  PS_INTERNAL = 9
} ps_status;

typedef struct ps_perm ps_perm;
typedef struct ps_sampler ps_sampler;
typedef struct ps_report ps_report;

PS_API const char* ps_version(void);
PS_API const char* ps_status_string(ps_status status);
/* Message of the last failed call on this thread; empty string if none. */
PS_API const char* ps_last_error_message(void);

/* Permutations: one-line notation, values 1..n. */
PS_API ps_status ps_perm_create(const int32_t* values, size_t n, ps_perm** out);
/* "3142", "3,1,4,2" or "3 1 4 2". */
PS_API ps_status ps_perm_parse(const char* text, ps_perm** out);
PS_API void ps_perm_destroy(ps_perm* perm);
PS_API size_t ps_perm_size(const ps_perm* perm);
/* Copies the n values into out; capacity must be >= n. */
PS_API ps_status ps_perm_values(const ps_perm* perm, int32_t* out, size_t capacity);

PS_API ps_status ps_left_inversion_count(const ps_perm* w, int32_t j, int32_t* out);
/* rec_out[j-1] = 1 iff j is a record; capacity must be >= n. */
PS_API ps_status ps_record_indicators(const ps_perm* w, uint8_t* rec_out, size_t capacity);
PS_API ps_status ps_perm_fs(const ps_perm* w, int32_t* out);
PS_API ps_status ps_lambda(const ps_perm* w, int32_t i, int32_t* out);
PS_API ps_status ps_contains_pattern(const ps_perm* w, const ps_perm* pattern, int* out);
PS_API ps_status ps_conjugate_by_w0(const ps_perm* w, ps_perm** out);

PS_API ps_status ps_pair_fs(const ps_perm* u, const ps_perm* v, int32_t* out);
/* Raw BS(u,v) = FS(w0 u w0, w0 v w0) - n; negative for the identity pair when n > 1. */
PS_API ps_status ps_pair_bs(const ps_perm* u, const ps_perm* v, int32_t n, int32_t* out);
/* Writes Y_1..Y_{m+1} into y and their count into len; a short buffer gets PS_OUT_OF_RANGE
   with len still set. */
PS_API ps_status ps_pair_walk(const ps_perm* u, const ps_perm* v, int32_t* y, size_t capacity, size_t* len);

/* Classes: "uniform", "grassmannian", "grassmannian-modified", "boolean", "av:231",
   "av:3412,4231", "cograssmannian", "fireworks", "smooth", "vexillary", "covexillary",
   "levi-spherical". */
PS_API ps_status ps_class_contains(const char* cls, const ps_perm* w, int* out);
PS_API ps_status ps_class_count(const char* cls, int32_t n, uint64_t* out);

/* Boolean tag words as strings over {0,S,C}; buffer gets a NUL-terminated string. */
PS_API ps_status ps_tag_encode(const ps_perm* w, char* buffer, size_t capacity);
PS_API ps_status ps_tag_decode(const char* tags, ps_perm** out);

/* burn_in < 0 and thinning < 1 select the defaults 50 n^2 and n^2. */
PS_API ps_status ps_sampler_create(const char* cls, int32_t n, uint64_t seed, uint64_t stream, int force_mcmc,
                                   int64_t burn_in, int64_t thinning, ps_sampler** out);
PS_API ps_status ps_sampler_next(ps_sampler* sampler, ps_perm** out);
PS_API int ps_sampler_is_exact(const ps_sampler* sampler);
PS_API void ps_sampler_destroy(ps_sampler* sampler);

/* Runs one experiment from a JSON config ({"command": "estimate", ...}).
   threads <= 0 uses the hardware concurrency. A report is produced even when
   verification fails (status PS_VERIFICATION_FAILED). */
PS_API ps_status ps_experiment_run(const char* config_json, int threads, ps_report** out);
/* The resolved config for a raw one, as JSON text; free with ps_string_free. */
PS_API ps_status ps_config_resolve(const char* config_json, char** out);
PS_API const char* ps_report_json(const ps_report* report);
PS_API const char* ps_report_csv(const ps_report* report);
PS_API int ps_report_passed(const ps_report* report);
PS_API void ps_report_destroy(ps_report* report);
PS_API void ps_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
