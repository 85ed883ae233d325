#ifndef CUSPLIM_H
#define CUSPLIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Return codes. Nonzero calls leave a message in cusplim_last_error(). */
#define CUSPLIM_OK 0
#define CUSPLIM_ERR_CONFIG 2
#define CUSPLIM_ERR_NUMERIC 3

/* Message for the most recent failing call on this thread. */
const char* cusplim_last_error(void);

const char* cusplim_version(void);

/* Cusp normalizing constant squared, closed form and adaptive quadrature.
 * alpha in (-1/2, 1/2), amplitudes a, b >= 0, not both zero. */
int cusplim_gamma_sq_closed(double alpha, double a, double b, double* out);
int cusplim_gamma_sq_quad(double alpha, double a, double b, double* out);

/* Tail law of the H = 1/2 MLE limit: P(|xi| > t). */
int cusplim_brownian_argmax_tail(double t, double* out);

/* Two-sided fractional Brownian motion on the grid u_j = (j - m) * span / m,
 * j = 0..2m. A sampler holds the precomputed circulant spectrum; each sample
 * call draws from the stream (master_seed, stream_index) and writes 2m + 1
 * values with values[m] = 0. */
typedef struct cusplim_fbm_sampler cusplim_fbm_sampler;

int cusplim_fbm_sampler_create(double hurst, size_t m, double span, cusplim_fbm_sampler** out);
size_t cusplim_fbm_node_count(const cusplim_fbm_sampler* sampler);
int cusplim_fbm_sample(const cusplim_fbm_sampler* sampler, uint64_t master_seed,
                       uint64_t stream_index, double* values);
void cusplim_fbm_sampler_destroy(cusplim_fbm_sampler* sampler);

/* One path straight to CSV (header "u,w"). use_cholesky_oracle != 0 switches
 * to the dense-covariance reference sampler (needs 2m + 1 <= 512). */
int cusplim_fbm_write_csv(double hurst, size_t m, double span, uint64_t master_seed,
                          uint64_t stream_index, int use_cholesky_oracle, const char* csv_path);

typedef struct {
  double hurst;
  size_t n_reps;
  size_t m;
  double span;
  double var_zeta, se_var_zeta;
  double var_xi, se_var_xi;
  double mean_zeta, mean_xi;
} cusplim_limits_summary;

/* Monte Carlo over the limit-law estimators zeta_hat and xi_hat.
 * Writes summary.csv into out_dir (if non-NULL), plus raw.csv when
 * write_raw != 0 and density_zeta.csv / density_xi.csv when
 * write_density != 0. Output bytes do not depend on n_threads. */
int cusplim_limits_run(double hurst, size_t m, double span, size_t n_reps, uint64_t master_seed,
                       int n_threads, const char* out_dir, int write_raw, int write_density,
                       cusplim_limits_summary* out);

/* One limits run per Hurst value, same seed for each. Writes table.csv,
 * fig1a.csv (H, log var_zeta), fig1b.csv (H, var_xi / var_zeta) into
 * out_dir; per-H raw/density files carry an H suffix. row_status[i]
 * receives the per-H return code; rows that fail are skipped and the
 * first failure's code is returned. */
int cusplim_table_run(const double* hursts, size_t n_hurst, size_t m, double span, size_t n_reps,
                      uint64_t master_seed, int n_threads, const char* out_dir, int write_raw,
                      int write_density, cusplim_limits_summary* out_rows, int* row_status);

typedef struct {
  double alpha, a, b;
  double theta_true;
  double theta_lo, theta_hi;
  double t_obs;
  double eps;
  size_t n_t, n_u; /* 0 means default: 2^14 time cells, 2^12 parameter cells */
} cusplim_model_config;

typedef struct {
  double hurst;
  size_t n_reps;
  size_t n_t, n_u;
  double phi_eps;
  double var_pitman, se_var_pitman;
  double var_mle, se_var_mle;
  double mean_pitman, mean_mle;
} cusplim_model_summary;

/* Signal-plus-white-noise experiment: per replicate, simulate the path,
 * compute MLE and Pitman estimates from the same noise, and normalize by
 * phi_eps = (eps / Gamma_alpha)^{1/H}. Writes summary.csv and raw.csv into
 * out_dir (if non-NULL). */
int cusplim_model_run(const cusplim_model_config* cfg, size_t n_reps, uint64_t master_seed,
                      int n_threads, const char* out_dir, cusplim_model_summary* out);

/* Two-sample Kolmogorov-Smirnov distance between named numeric columns of
 * two CSV files. */
int cusplim_ks_csv(const char* csv_a, const char* col_a, const char* csv_b, const char* col_b,
                   double* out);

#ifdef __cplusplus
}
#endif

#endif /* CUSPLIM_H */
