#ifndef TFDG_H
#define TFDG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every fallible call. */
enum {
  TFDG_OK = 0,
  TFDG_ERR_INVALID_ARGUMENT = 1,
  TFDG_ERR_DOMAIN = 2,
  TFDG_ERR_SINGULAR = 3,
  TFDG_ERR_SOLVER_FAILURE = 4,
  TFDG_ERR_IO_FAILURE = 5,
  TFDG_ERR_BAD_DATA = 6,
  TFDG_ERR_NOT_FOUND = 7,
  TFDG_ERR_INTERNAL = 8
};

/* Message for the most recent failure on the calling thread.  Never NULL. */
const char* tfdg_last_error(void);

/* E_{alpha,beta}(-x) for x >= 0, alpha in (0, 1]. */
int tfdg_ml_neg(double alpha, double beta, double x, double* out);

/* A completed convergence study: errors per level, observed orders, checks. */
typedef struct tfdg_run tfdg_run;

typedef struct tfdg_run_options {
  const char* cache_dir; /* NULL: no reference checkpointing */
  const int* levels;     /* NULL: keep the configured ladder */
  size_t n_levels;       /* replacing the ladder resets any separate E2 ladder */
  double alpha;          /* 0: keep the configured order */
  int jobs;              /* <= 1: run ladder levels one by one */
  unsigned long long seed; /* recorded with the run */
} tfdg_run_options;

/* `options` may be NULL for defaults.  On success *out owns the run. */
int tfdg_run_preset(const char* name, const tfdg_run_options* options, tfdg_run** out);
int tfdg_run_config(const char* toml_path, const tfdg_run_options* options, tfdg_run** out);

int tfdg_run_save(const tfdg_run* run, const char* json_path);
int tfdg_run_load(const char* json_path, tfdg_run** out);

/* Strings returned through `out` are heap copies; release them with
 * tfdg_string_free. */
int tfdg_run_table(const tfdg_run* run, int markdown, char** out);
int tfdg_run_json(const tfdg_run* run, char** out);
int tfdg_run_name(const tfdg_run* run, char** out);

/* 1 if every recorded check passed, 0 otherwise, negative on bad input. */
int tfdg_run_pass(const tfdg_run* run);

void tfdg_run_free(tfdg_run* run);

/* Newline-separated "name<TAB>description" lines for every preset. */
int tfdg_preset_list(char** out);

void tfdg_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
