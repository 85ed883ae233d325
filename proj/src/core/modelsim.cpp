#include "modelsim.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"

namespace cusplim {

void ModelConfig::validate() const {
  if (!(theta_lo > 0.0)) throw ConfigError("model config: need 0 < theta_lo");
  if (!(theta_lo < theta_hi)) throw ConfigError("model config: need theta_lo < theta_hi");
  if (!(theta_hi < t_obs)) throw ConfigError("model config: need theta_hi < t_obs");
  if (!(theta_true > theta_lo && theta_true < theta_hi)) {
    throw ConfigError("model config: need theta_true in (theta_lo, theta_hi)");
  }
  if (!(eps > 0.0)) throw ConfigError("model config: need eps > 0");
  if (n_t < 2) throw ConfigError("model config: need n_t >= 2");
  if (n_u < 2) throw ConfigError("model config: need n_u >= 2");
}

double signal_value(const ModelConfig& cfg, double t, double theta) {
  double s = q_alpha(cfg.cusp, t - theta);
  if (cfg.smooth_term) s += cfg.smooth_term(t, theta);
  return s;
}

namespace {
constexpr std::size_t kTableByteBudget = std::size_t{1} << 30;
}

ModelExperiment::ModelExperiment(const ModelConfig& cfg, bool build_table) : cfg_(cfg) {
  cfg_.validate();
  gamma_ = std::sqrt(gamma_alpha_sq_quad(cfg_.cusp));
  phi_eps_ = std::pow(cfg_.eps / gamma_, 1.0 / cfg_.cusp.hurst());
  du_ = (cfg_.theta_hi - cfg_.theta_lo) / static_cast<double>(cfg_.n_u);

  const std::size_t n_nodes = cfg_.n_u + 1;
  node_u_.resize(n_nodes);
  for (std::size_t k = 0; k < n_nodes; ++k) {
    node_u_[k] = cfg_.theta_lo + static_cast<double>(k) * du_;
  }
  node_u_.back() = cfg_.theta_hi;

  const double dt = cfg_.t_obs / static_cast<double>(cfg_.n_t);
  energy_.assign(n_nodes, 0.0);
  const bool fits = n_nodes <= kTableByteBudget / (8 * cfg_.n_t);
  if (build_table && fits) table_.resize(n_nodes * cfg_.n_t);
  std::vector<double> row;
  for (std::size_t k = 0; k < n_nodes; ++k) {
    double* dst;
    if (!table_.empty()) {
      dst = table_.data() + k * cfg_.n_t;
    } else {
      row.resize(cfg_.n_t);
      dst = row.data();
    }
    double e = 0.0;
    for (std::size_t i = 0; i < cfg_.n_t; ++i) {
      const double t = (static_cast<double>(i) + 0.5) * dt;
      const double s = signal_value(cfg_, t, node_u_[k]);
      dst[i] = s;
      e += s * s;
    }
    energy_[k] = e * dt;
  }
}

double ModelExperiment::node(std::size_t k) const { return node_u_[k]; }

void ModelExperiment::simulate_path(RngStream& stream, ObservationPath& out) const {
  out.t_obs = cfg_.t_obs;
  out.dx.resize(cfg_.n_t);
  const double dt = cfg_.t_obs / static_cast<double>(cfg_.n_t);
  const double noise_scale = cfg_.eps * std::sqrt(dt);
  for (std::size_t i = 0; i < cfg_.n_t; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * dt;
    out.dx[i] = signal_value(cfg_, t, cfg_.theta_true) * dt + noise_scale * stream.normal();
  }
}

ObservationPath ModelExperiment::simulate_path(RngStream& stream) const {
  ObservationPath path;
  simulate_path(stream, path);
  return path;
}

double ModelExperiment::log_likelihood(const ObservationPath& path, double u) const {
  if (path.dx.size() != cfg_.n_t) throw ConfigError("path length does not match config");
  const double dt = cfg_.t_obs / static_cast<double>(cfg_.n_t);
  double cross = 0.0;
  double energy = 0.0;
  for (std::size_t i = 0; i < cfg_.n_t; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * dt;
    const double s = signal_value(cfg_, t, u);
    cross += s * path.dx[i];
    energy += s * s;
  }
  const double inv_eps2 = 1.0 / (cfg_.eps * cfg_.eps);
  return inv_eps2 * cross - 0.5 * inv_eps2 * energy * dt;
}

double ModelExperiment::signal_row_dot(std::size_t k, std::span<const double> dx) const {
  double cross = 0.0;
  if (!table_.empty()) {
    const double* row = table_.data() + k * cfg_.n_t;
    for (std::size_t i = 0; i < cfg_.n_t; ++i) cross += row[i] * dx[i];
  } else {
    const double dt = cfg_.t_obs / static_cast<double>(cfg_.n_t);
    for (std::size_t i = 0; i < cfg_.n_t; ++i) {
      const double t = (static_cast<double>(i) + 0.5) * dt;
      cross += signal_value(cfg_, t, node_u_[k]) * dx[i];
    }
  }
  return cross;
}

void ModelExperiment::loglik_nodes(const ObservationPath& path, std::vector<double>& out) const {
  if (path.dx.size() != cfg_.n_t) throw ConfigError("path length does not match config");
  const std::size_t n_nodes = node_u_.size();
  out.resize(n_nodes);
  const double inv_eps2 = 1.0 / (cfg_.eps * cfg_.eps);
  for (std::size_t k = 0; k < n_nodes; ++k) {
    out[k] = inv_eps2 * signal_row_dot(k, path.dx) - 0.5 * inv_eps2 * energy_[k];
  }
}

double ModelExperiment::mle_estimate(const ObservationPath& path,
                                     std::span<const double> node_ll) const {
  if (node_ll.size() != node_u_.size()) throw ConfigError("node log-likelihoods missing");
  std::size_t best = 0;
  for (std::size_t k = 1; k < node_ll.size(); ++k) {
    if (node_ll[k] > node_ll[best]) best = k;
  }

  double lo = best == 0 ? node_u_.front() : node_u_[best - 1];
  double hi = best + 1 == node_u_.size() ? node_u_.back() : node_u_[best + 1];
  const double tol = phi_eps_ / 100.0;
  if (hi - lo <= tol) return 0.5 * (lo + hi);

  constexpr double kInvPhi = 0.6180339887498949;
  constexpr double kInvPhi2 = 1.0 - kInvPhi;
  double x1 = lo + kInvPhi2 * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = log_likelihood(path, x1);
  double f2 = log_likelihood(path, x2);
  while (hi - lo > tol) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = lo + kInvPhi2 * (hi - lo);
      f1 = log_likelihood(path, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = log_likelihood(path, x2);
    }
  }
  return 0.5 * (lo + hi);
}

double ModelExperiment::pitman_estimate(std::span<const double> node_ll) const {
  if (node_ll.size() != node_u_.size()) throw ConfigError("node log-likelihoods missing");
  double shift = node_ll[0];
  for (double v : node_ll) shift = std::max(shift, v);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < node_ll.size(); ++k) {
    const double w = (k == 0 || k + 1 == node_ll.size()) ? 0.5 * du_ : du_;
    const double g = w * std::exp(node_ll[k] - shift);
    num += node_u_[k] * g;
    den += g;
  }
  if (!(den > 0.0) || !std::isfinite(den) || !std::isfinite(num)) {
    throw DegenerateDenominator("posterior mass vanished after stabilization");
  }
  return num / den;
}

EstimateResult ModelExperiment::estimate(const ObservationPath& path) const {
  std::vector<double> node_ll;
  loglik_nodes(path, node_ll);
  EstimateResult r;
  r.phi_eps = phi_eps_;
  r.mle = mle_estimate(path, node_ll);
  r.pitman = pitman_estimate(node_ll);
  r.normalized_mle = (r.mle - cfg_.theta_true) / phi_eps_;
  r.normalized_pitman = (r.pitman - cfg_.theta_true) / phi_eps_;
  return r;
}

double ModelExperiment::drift_b_eps(double u) const {
  const double shifted = cfg_.theta_true + u * phi_eps_;
  const double dt = cfg_.t_obs / static_cast<double>(cfg_.n_t);
  double acc = 0.0;
  for (std::size_t i = 0; i < cfg_.n_t; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * dt;
    const double d = signal_value(cfg_, t, shifted) - signal_value(cfg_, t, cfg_.theta_true);
    acc += d * d;
  }
  return acc * dt / (2.0 * cfg_.eps * cfg_.eps);
}

ObservationPath simulate_path(const ModelConfig& cfg, RngStream& stream) {
  return ModelExperiment(cfg, false).simulate_path(stream);
}

double log_likelihood(const ModelConfig& cfg, const ObservationPath& path, double u) {
  return ModelExperiment(cfg, false).log_likelihood(path, u);
}

double mle_estimate(const ModelConfig& cfg, const ObservationPath& path) {
  const ModelExperiment exp(cfg, false);
  std::vector<double> node_ll;
  exp.loglik_nodes(path, node_ll);
  return exp.mle_estimate(path, node_ll);
}

double pitman_estimate(const ModelConfig& cfg, const ObservationPath& path) {
  const ModelExperiment exp(cfg, false);
  std::vector<double> node_ll;
  exp.loglik_nodes(path, node_ll);
  return exp.pitman_estimate(node_ll);
}

ModelMcSummary run_model_mc(const ModelRunConfig& cfg, std::vector<EstimateResult>* raw) {
  if (cfg.n_reps < 2) throw ConfigError("run_model_mc needs at least 2 replicates");
  const ModelExperiment exp(cfg.model);

  std::vector<EstimateResult> slots(cfg.n_reps);

  struct WorkerState {
    ObservationPath path;
    std::vector<double> node_ll;
  };
  parallel_for_state(
      cfg.n_reps, cfg.n_threads, [] { return WorkerState{}; },
      [&](WorkerState& state, std::size_t i) {
        try {
          RngStream stream(cfg.master_seed, i);
          exp.simulate_path(stream, state.path);
          exp.loglik_nodes(state.path, state.node_ll);
          EstimateResult r;
          r.phi_eps = exp.phi_eps();
          r.mle = exp.mle_estimate(state.path, state.node_ll);
          r.pitman = exp.pitman_estimate(state.node_ll);
          r.normalized_mle = (r.mle - cfg.model.theta_true) / exp.phi_eps();
          r.normalized_pitman = (r.pitman - cfg.model.theta_true) / exp.phi_eps();
          slots[i] = r;
        } catch (const ConfigError& e) {
          throw ConfigError("replicate " + std::to_string(i) + ": " + e.what());
        } catch (const NumericError& e) {
          throw NumericError("replicate " + std::to_string(i) + ": " + e.what());
        }
      });

  ModelMcSummary summary;
  summary.hurst = cfg.model.cusp.hurst();
  summary.n_reps = cfg.n_reps;
  summary.n_t = cfg.model.n_t;
  summary.n_u = cfg.model.n_u;
  summary.phi_eps = exp.phi_eps();
  for (const EstimateResult& r : slots) {
    summary.pitman.add(r.normalized_pitman);
    summary.mle.add(r.normalized_mle);
  }
  if (raw) *raw = std::move(slots);
  return summary;
}

}  // namespace cusplim
