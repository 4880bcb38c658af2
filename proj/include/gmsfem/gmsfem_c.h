/* Copyright (c) 2026 The gmsfem-boltzmann authors.
 * SPDX-License-Identifier: Apache-2.0 */

/* C interface of the gmsfem shared library.
 *
 * Every function returns a gmsfem_status. On failure a message describing the error is
 * available from gmsfem_last_error() on the calling thread until the next call on that
 * thread. Handles are opaque and must be released with the matching *_free function;
 * passing NULL to a *_free function is a no-op. */

#ifndef GMSFEM_C_H
#define GMSFEM_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(GMSFEM_BUILDING_LIBRARY)
#define GMSFEM_API __attribute__((visibility("default")))
#else
#define GMSFEM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gmsfem_status
{
  GMSFEM_OK = 0,
  GMSFEM_INVALID_ARGUMENT = 1,
  GMSFEM_NUMERICAL_FAILURE = 2,
  GMSFEM_IO_ERROR = 3,
  GMSFEM_INTERNAL_ERROR = 4
} gmsfem_status;

typedef struct gmsfem_config gmsfem_config;
typedef struct gmsfem_result gmsfem_result;

/* One result row. modes is -1 for the full snapshot space. */
typedef struct gmsfem_row
{
  double eps;
  int32_t modes;
  double snapshot_ratio;
  double e1;
  double e2;
  double lambda_star;
  double t_offline_s;
  double t_online_s;
  int32_t coarse_dim;
  double condition_estimate;
  double stability_lhs;
  double stability_rhs;
  double snapshot_gap;
} gmsfem_row;

GMSFEM_API const char *gmsfem_version(void);
GMSFEM_API const char *gmsfem_last_error(void);
GMSFEM_API const char *gmsfem_status_string(gmsfem_status status);

/* Configuration. */
GMSFEM_API gmsfem_status gmsfem_config_default(gmsfem_config **out);
GMSFEM_API gmsfem_status gmsfem_config_from_file(const char *path, gmsfem_config **out);
GMSFEM_API gmsfem_status gmsfem_config_from_string(const char *text, gmsfem_config **out);
GMSFEM_API gmsfem_status gmsfem_config_set(gmsfem_config *config, const char *key,
                                           const char *value);
/* Copies the value of key, NUL-terminated, into buf. *needed receives the required size
 * including the terminator; a too-small buffer yields GMSFEM_INVALID_ARGUMENT. */
GMSFEM_API gmsfem_status gmsfem_config_get(const gmsfem_config *config, const char *key,
                                           char *buf, size_t size, size_t *needed);
/* Canonical text form of the whole config, same buffer convention as gmsfem_config_get. */
GMSFEM_API gmsfem_status gmsfem_config_to_string(const gmsfem_config *config, char *buf,
                                                 size_t size, size_t *needed);
GMSFEM_API void gmsfem_config_free(gmsfem_config *config);

/* Pipeline. run uses the eps of the config; sweep runs each eps in the list and the
 * eigenvalue study. Neither writes files; see gmsfem_result_write. */
GMSFEM_API gmsfem_status gmsfem_run(const gmsfem_config *config, gmsfem_result **out);
GMSFEM_API gmsfem_status gmsfem_sweep(const gmsfem_config *config, const double *eps,
                                      size_t count, gmsfem_result **out);

GMSFEM_API gmsfem_status gmsfem_result_row_count(const gmsfem_result *result, size_t *count);
GMSFEM_API gmsfem_status gmsfem_result_row(const gmsfem_result *result, size_t index,
                                           gmsfem_row *row);
/* Results CSV (with a leading eps column for sweeps). */
GMSFEM_API gmsfem_status gmsfem_result_csv(const gmsfem_result *result, int timings, char *buf,
                                           size_t size, size_t *needed);
/* Writes the results CSV to path and, for sweeps, the eigenvalue CSV next to it with an
 * "_eigen" suffix. Relative paths honour GMSFEM_OUTPUT_DIR. */
GMSFEM_API gmsfem_status gmsfem_result_write(const gmsfem_result *result, const char *path,
                                             int timings);
GMSFEM_API void gmsfem_result_free(gmsfem_result *result);

/* Geometry and quadrature queries. */
GMSFEM_API gmsfem_status gmsfem_ordinates(int32_t m, double offset, double *directions_xy,
                                          double *weights);
GMSFEM_API gmsfem_status gmsfem_mesh_counts(int32_t ncx, int32_t ncy, int32_t nf,
                                            int32_t *blocks, int32_t *interior_edges,
                                            int32_t *fine_cells);

#ifdef __cplusplus
}
#endif

#endif /* GMSFEM_C_H */
