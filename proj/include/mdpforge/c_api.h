#ifndef MDPFORGE_C_API_H_
#define MDPFORGE_C_API_H_

/* C ABI over the environment module, consumed by the Python gym binding.
 *
 * Every function returns a status code and reports details through an
 * optional mdpforge_error out-parameter (may be NULL):
 *   0 ok, 1 parse, 2 semantic, 3 state (bad handle, not reset, done, bad action).
 * Handles are opaque non-zero integers. A handle must not be used from two
 * threads at once; distinct handles may be used concurrently. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MDPFORGE_API __declspec(dllexport)
#else
#define MDPFORGE_API __attribute__((visibility("default")))
#endif

enum {
  MDPFORGE_OK = 0,
  MDPFORGE_ERR_PARSE = 1,
  MDPFORGE_ERR_SEMANTIC = 2,
  MDPFORGE_ERR_STATE = 3
};

typedef uint64_t mdpforge_handle;

typedef struct mdpforge_error {
  int code;
  int line; /* 0 when the error has no source position */
  int col;
  char message[512];
} mdpforge_error;

/* Parses and validates `dsl_text` (UTF-8, NUL-terminated) and creates a
 * session seeded with `seed`. */
MDPFORGE_API int mdpforge_create_env(const char* dsl_text, uint64_t seed, mdpforge_handle* out_handle,
                                     mdpforge_error* err);
MDPFORGE_API int mdpforge_reset(mdpforge_handle handle, int64_t* out_state, mdpforge_error* err);
MDPFORGE_API int mdpforge_step(mdpforge_handle handle, int64_t action, int64_t* out_state, double* out_reward,
                               int* out_done, mdpforge_error* err);
/* Copies the DOT rendering (NUL-terminated) into `buffer` when it fits.
 * `*out_size` always receives the required size including the terminator. */
MDPFORGE_API int mdpforge_render(mdpforge_handle handle, char* buffer, size_t capacity, size_t* out_size,
                                 mdpforge_error* err);
MDPFORGE_API int mdpforge_destroy(mdpforge_handle handle, mdpforge_error* err);

MDPFORGE_API int mdpforge_num_states(mdpforge_handle handle, int64_t* out, mdpforge_error* err);
MDPFORGE_API int mdpforge_num_actions(mdpforge_handle handle, int64_t* out, mdpforge_error* err);
/* Draws from the session's uniform action sampler, which is the same stream
 * the CLI `simulate` command uses for the same seed. */
MDPFORGE_API int mdpforge_sample_action(mdpforge_handle handle, int64_t* out_action, mdpforge_error* err);

/* Number of live handles, for leak checks. */
MDPFORGE_API size_t mdpforge_live_handles(void);

#ifdef __cplusplus
}
#endif

#endif /* MDPFORGE_C_API_H_ */
