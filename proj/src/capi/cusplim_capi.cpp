#include "cusplim.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "csvio.hpp"
#include "cusp.hpp"
#include "errors.hpp"
#include "fgn.hpp"
#include "grid.hpp"
#include "limits_mc.hpp"
#include "modelsim.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace {

thread_local std::string g_last_error;

template <typename Fn>
int guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return CUSPLIM_OK;
  } catch (const cusplim::ConfigError& e) {
    g_last_error = e.what();
    return CUSPLIM_ERR_CONFIG;
  } catch (const cusplim::NumericError& e) {
    g_last_error = e.what();
    return CUSPLIM_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CUSPLIM_ERR_NUMERIC;
  } catch (...) {
    g_last_error = "unknown failure";
    return CUSPLIM_ERR_NUMERIC;
  }
}

void require(bool ok, const char* message) {
  if (!ok) throw cusplim::ConfigError(message);
}

std::string hurst_suffix(double hurst) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", hurst);
  return buf;
}

void ensure_dir(const char* dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw cusplim::ConfigError("cannot create output directory '" + std::string(dir) +
                               "': " + ec.message());
  }
}

cusplim_limits_summary to_c(const cusplim::McSummary& s) {
  cusplim_limits_summary out{};
  out.hurst = s.hurst;
  out.n_reps = s.n_reps;
  out.m = s.m;
  out.span = s.span;
  out.var_zeta = s.zeta.variance();
  out.se_var_zeta = s.zeta.se_variance();
  out.var_xi = s.xi.variance();
  out.se_var_xi = s.xi.se_variance();
  out.mean_zeta = s.zeta.mean();
  out.mean_xi = s.xi.mean();
  return out;
}

cusplim::McSummary run_limits_to_dir(double hurst, size_t m, double span, size_t n_reps,
                                     uint64_t master_seed, int n_threads, const char* out_dir,
                                     int write_raw, int write_density,
                                     const std::string& file_suffix) {
  cusplim::LimitsRunConfig cfg;
  cfg.hurst = hurst;
  cfg.grid = cusplim::GridSpec{m, span};
  cfg.n_reps = n_reps;
  cfg.master_seed = master_seed;
  cfg.n_threads = n_threads;

  const bool need_raw = out_dir && (write_raw || write_density);
  if (out_dir) ensure_dir(out_dir);
  std::vector<cusplim::LimitSample> raw;
  const cusplim::McSummary summary = cusplim::run_limits_mc(cfg, need_raw ? &raw : nullptr);

  if (out_dir) {
    const std::string dir(out_dir);
    if (file_suffix.empty()) {
      cusplim::write_limits_summary(dir + "/summary.csv", summary);
    }
    if (write_raw) {
      cusplim::write_limits_raw(dir + "/raw" + file_suffix + ".csv", raw);
    }
    if (write_density) {
      std::vector<double> zeta(raw.size());
      std::vector<double> xi(raw.size());
      for (size_t i = 0; i < raw.size(); ++i) {
        zeta[i] = raw[i].zeta_hat;
        xi[i] = raw[i].xi_hat;
      }
      cusplim::write_density(dir + "/density_zeta" + file_suffix + ".csv", cusplim::kde(zeta));
      cusplim::write_density(dir + "/density_xi" + file_suffix + ".csv", cusplim::kde(xi));
    }
  }
  return summary;
}

}  // namespace

extern "C" {

const char* cusplim_last_error(void) { return g_last_error.c_str(); }

const char* cusplim_version(void) { return "0.1.0"; }

int cusplim_gamma_sq_closed(double alpha, double a, double b, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = cusplim::gamma_alpha_sq_closed(cusplim::CuspParams(alpha, a, b));
  });
}

int cusplim_gamma_sq_quad(double alpha, double a, double b, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = cusplim::gamma_alpha_sq_quad(cusplim::CuspParams(alpha, a, b));
  });
}

int cusplim_brownian_argmax_tail(double t, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = cusplim::brownian_argmax_tail(t);
  });
}

struct cusplim_fbm_sampler {
  cusplim::TwoSidedFbmSampler sampler;
};

int cusplim_fbm_sampler_create(double hurst, size_t m, double span, cusplim_fbm_sampler** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = new cusplim_fbm_sampler{
        cusplim::TwoSidedFbmSampler(hurst, cusplim::GridSpec{m, span})};
  });
}

size_t cusplim_fbm_node_count(const cusplim_fbm_sampler* sampler) {
  return sampler ? sampler->sampler.spec().node_count() : 0;
}

int cusplim_fbm_sample(const cusplim_fbm_sampler* sampler, uint64_t master_seed,
                       uint64_t stream_index, double* values) {
  return guarded([&] {
    require(sampler != nullptr, "sampler must not be null");
    require(values != nullptr, "values must not be null");
    cusplim::RngStream stream(master_seed, stream_index);
    cusplim::FbmGrid grid = sampler->sampler.sample(stream);
    std::copy(grid.values.begin(), grid.values.end(), values);
  });
}

void cusplim_fbm_sampler_destroy(cusplim_fbm_sampler* sampler) { delete sampler; }

int cusplim_fbm_write_csv(double hurst, size_t m, double span, uint64_t master_seed,
                          uint64_t stream_index, int use_cholesky_oracle, const char* csv_path) {
  return guarded([&] {
    require(csv_path != nullptr, "csv_path must not be null");
    const cusplim::GridSpec spec{m, span};
    cusplim::RngStream stream(master_seed, stream_index);
    const cusplim::FbmGrid grid = use_cholesky_oracle
                                      ? cusplim::cholesky_fbm_oracle(hurst, spec, stream)
                                      : cusplim::two_sided_fbm(hurst, spec, stream);
    cusplim::write_fbm_path(csv_path, grid);
  });
}

int cusplim_limits_run(double hurst, size_t m, double span, size_t n_reps, uint64_t master_seed,
                       int n_threads, const char* out_dir, int write_raw, int write_density,
                       cusplim_limits_summary* out) {
  return guarded([&] {
    const cusplim::McSummary summary = run_limits_to_dir(
        hurst, m, span, n_reps, master_seed, n_threads, out_dir, write_raw, write_density, "");
    if (out) *out = to_c(summary);
  });
}

int cusplim_table_run(const double* hursts, size_t n_hurst, size_t m, double span, size_t n_reps,
                      uint64_t master_seed, int n_threads, const char* out_dir, int write_raw,
                      int write_density, cusplim_limits_summary* out_rows, int* row_status) {
  return guarded([&] {
    require(hursts != nullptr && n_hurst > 0, "hurst list must not be empty");
    if (out_dir) ensure_dir(out_dir);
    std::vector<cusplim::McSummary> rows;
    int first_failure = CUSPLIM_OK;
    for (size_t i = 0; i < n_hurst; ++i) {
      const std::string suffix = "_H" + hurst_suffix(hursts[i]);
      cusplim::McSummary summary;
      const int rc = guarded([&] {
        summary = run_limits_to_dir(hursts[i], m, span, n_reps, master_seed, n_threads, out_dir,
                                    write_raw, write_density, suffix);
      });
      if (row_status) row_status[i] = rc;
      if (rc != CUSPLIM_OK) {
        if (first_failure == CUSPLIM_OK) first_failure = rc;
        continue;
      }
      if (out_rows) out_rows[i] = to_c(summary);
      rows.push_back(summary);
    }
    if (out_dir) {
      const std::string dir(out_dir);
      cusplim::write_limits_table(dir + "/table.csv", rows);
      std::vector<std::pair<double, double>> fig1a;
      std::vector<std::pair<double, double>> fig1b;
      for (const cusplim::McSummary& s : rows) {
        fig1a.emplace_back(s.hurst, std::log(s.zeta.variance()));
        fig1b.emplace_back(s.hurst, s.xi.variance() / s.zeta.variance());
      }
      cusplim::write_pairs(dir + "/fig1a.csv", "H,log_var_zeta", fig1a);
      cusplim::write_pairs(dir + "/fig1b.csv", "H,var_ratio", fig1b);
    }
    if (first_failure != CUSPLIM_OK) {
      throw cusplim::NumericError("one or more hurst rows failed; see row_status");
    }
  });
}

int cusplim_model_run(const cusplim_model_config* cfg, size_t n_reps, uint64_t master_seed,
                      int n_threads, const char* out_dir, cusplim_model_summary* out) {
  return guarded([&] {
    require(cfg != nullptr, "cfg must not be null");
    cusplim::ModelRunConfig run;
    run.model.cusp = cusplim::CuspParams(cfg->alpha, cfg->a, cfg->b);
    run.model.theta_true = cfg->theta_true;
    run.model.theta_lo = cfg->theta_lo;
    run.model.theta_hi = cfg->theta_hi;
    run.model.t_obs = cfg->t_obs;
    run.model.eps = cfg->eps;
    if (cfg->n_t) run.model.n_t = cfg->n_t;
    if (cfg->n_u) run.model.n_u = cfg->n_u;
    run.n_reps = n_reps;
    run.master_seed = master_seed;
    run.n_threads = n_threads;

    if (out_dir) ensure_dir(out_dir);
    std::vector<cusplim::EstimateResult> raw;
    const cusplim::ModelMcSummary summary =
        cusplim::run_model_mc(run, out_dir ? &raw : nullptr);

    if (out_dir) {
      const std::string dir(out_dir);
      cusplim::write_model_summary(dir + "/summary.csv", summary);
      cusplim::write_model_raw(dir + "/raw.csv", raw);
    }
    if (out) {
      out->hurst = summary.hurst;
      out->n_reps = summary.n_reps;
      out->n_t = summary.n_t;
      out->n_u = summary.n_u;
      out->phi_eps = summary.phi_eps;
      out->var_pitman = summary.pitman.variance();
      out->se_var_pitman = summary.pitman.se_variance();
      out->var_mle = summary.mle.variance();
      out->se_var_mle = summary.mle.se_variance();
      out->mean_pitman = summary.pitman.mean();
      out->mean_mle = summary.mle.mean();
    }
  });
}

int cusplim_ks_csv(const char* csv_a, const char* col_a, const char* csv_b, const char* col_b,
                   double* out) {
  return guarded([&] {
    require(csv_a && col_a && csv_b && col_b && out, "all arguments must be non-null");
    const cusplim::CsvTable ta = cusplim::read_csv(csv_a);
    const cusplim::CsvTable tb = cusplim::read_csv(csv_b);
    *out = cusplim::ks_distance(ta.column(col_a), tb.column(col_b));
  });
}

}  // extern "C"
