#ifndef FANFORGE_H
#define FANFORGE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FF_API __declspec(dllexport)
#else
#define FF_API __attribute__((visibility("default")))
#endif

typedef enum ff_status {
  FF_OK = 0,
  FF_ERR_INVALID_ARGUMENT,
  FF_ERR_OUT_OF_RANGE,
  FF_ERR_NOT_IN_CANTOR,
  FF_ERR_AT_JUMP_LOCATION,
  FF_ERR_INDEX_OUT_OF_RANGE,
  FF_ERR_TRUNCATION_TOO_COARSE,
  FF_ERR_STAGE_ORDER_VIOLATION,
  FF_ERR_JUMP_HIT,
  FF_ERR_NOT_SPANNING,
  FF_ERR_NOT_ORDERED,
  FF_ERR_DEPTH_INSUFFICIENT,
  FF_ERR_UNKNOWN_COPY,
  FF_ERR_SCHEMA,
  FF_ERR_IO,
  FF_ERR_INTERNAL
} ff_status;

typedef struct ff_state ff_state;
typedef struct ff_report ff_report;

FF_API const char* ff_version(void);
FF_API const char* ff_status_name(ff_status status);
/* Message of the last failed call on this thread; "" after success. */
FF_API const char* ff_last_error(void);

/* Parses a "p/q" rational and converts it to double (truncating). */
FF_API ff_status ff_rational_to_double(const char* text, double* out);

/* Strings returned through char** are owned by the caller. */
FF_API void ff_string_free(char* text);

FF_API ff_status ff_build(int depth, int truncation, ff_state** out);
FF_API ff_status ff_state_load(const char* path, ff_state** out);
FF_API ff_status ff_state_parse(const char* json_text, ff_state** out);
FF_API ff_status ff_state_save(const ff_state* state, const char* path);
FF_API ff_status ff_state_json(const ff_state* state, char** out);
FF_API void ff_state_free(ff_state* state);

FF_API ff_status ff_state_depth(const ff_state* state, int* out);
FF_API ff_status ff_state_truncation(const ff_state* state, int* out);
FF_API ff_status ff_state_copy_count(const ff_state* state, size_t* out);
FF_API ff_status ff_stage_rect_count(const ff_state* state, int stage, size_t* out);

/* checks: comma separated "name" or "name:n"; NULL or "" runs everything.
   grid_depth < 0 means K+2. */
FF_API ff_status ff_verify(const ff_state* state, const char* checks, int grid_depth,
                           int fiber_count, const double* epsilons, size_t epsilon_count,
                           ff_report** out);
FF_API ff_status ff_report_json(const ff_report* report, char** out);
FF_API ff_status ff_report_text(const ff_report* report, char** out);
FF_API ff_status ff_report_counts(const ff_report* report, size_t* passed, size_t* failed,
                                  size_t* skipped);
FF_API void ff_report_free(ff_report* report);

/* Rationals are "p/q" strings; lo/hi may be NULL for [-K, K+1]. JSON result. */
FF_API ff_status ff_trace(const ff_state* state, const char* c, const char* lo,
                          const char* hi, char** out);

/* figure: "tiling", "fan" or "earring". options_json may be NULL; keys:
   width, height, margin, stage_first, stage_last, r_min, r_max, copy_stroke,
   rect_stroke, draw_midpoints, draw_rects, draw_copies, cantor_depth,
   earring_copy. */
FF_API ff_status ff_render(const ff_state* state, const char* figure,
                           const char* options_json, char** svg_out);
FF_API ff_status ff_figure_file_name(const ff_state* state, const char* figure, char** out);

/* Decomposition summary plus one copy's earring, as JSON. */
FF_API ff_status ff_decomposition(const ff_state* state, size_t copy, char** out);

/* Shrinking regions around one loop of an earring, for (owner, n, loop), as JSON. */
FF_API ff_status ff_claim5(const ff_state* state, size_t owner, int n, int loop, char** out);

#ifdef __cplusplus
}
#endif

#endif
