#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cusp.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace cusplim {

// Smooth nuisance term h(t, theta) added to the cusp signal.
using SmoothTerm = std::function<double(double, double)>;

struct ModelConfig {
  CuspParams cusp{0.25, 1.0, 1.0};
  double theta_true = 1.0;
  double theta_lo = 0.5;
  double theta_hi = 1.5;
  double t_obs = 2.0;
  double eps = 0.02;
  std::size_t n_t = std::size_t{1} << 14;
  std::size_t n_u = std::size_t{1} << 12;
  SmoothTerm smooth_term;

  // Throws ConfigError naming the violated constraint.
  void validate() const;
};

struct ObservationPath {
  double t_obs = 0.0;
  std::vector<double> dx;  // increments over midpoint cells

  double delta() const { return t_obs / static_cast<double>(dx.size()); }
  double midpoint(std::size_t i) const { return (static_cast<double>(i) + 0.5) * delta(); }
};

struct EstimateResult {
  double mle = 0.0;
  double pitman = 0.0;
  double normalized_mle = 0.0;
  double normalized_pitman = 0.0;
  double phi_eps = 0.0;
};

double signal_value(const ModelConfig& cfg, double t, double theta);

// One experiment setup: validates the config, fixes the parameter grid of
// n_u cells (n_u + 1 nodes spanning [theta_lo, theta_hi]), and precomputes
// the signal table S(t_i, u_k) unless it would exceed the memory budget,
// in which case rows are recomputed on the fly in the same FP order.
class ModelExperiment {
 public:
  explicit ModelExperiment(const ModelConfig& cfg, bool build_table = true);

  const ModelConfig& config() const { return cfg_; }
  double hurst() const { return cfg_.cusp.hurst(); }
  double gamma_alpha() const { return gamma_; }
  double phi_eps() const { return phi_eps_; }
  std::size_t node_count() const { return cfg_.n_u + 1; }
  double node(std::size_t k) const;
  bool table_built() const { return !table_.empty(); }

  void simulate_path(RngStream& stream, ObservationPath& out) const;
  ObservationPath simulate_path(RngStream& stream) const;

  double log_likelihood(const ObservationPath& path, double u) const;
  // ll(u_k) for every grid node, in ascending node order.
  void loglik_nodes(const ObservationPath& path, std::vector<double>& out) const;

  // Coarse scan over the node log-likelihoods (ties toward theta_lo), then
  // golden-section refinement in the bracketing cell pair to phi_eps/100.
  double mle_estimate(const ObservationPath& path, std::span<const double> node_ll) const;
  double pitman_estimate(std::span<const double> node_ll) const;
  EstimateResult estimate(const ObservationPath& path) const;

  // Deterministic part of the normalized log-likelihood ratio at normalized
  // offset u: B_eps(u) = (2 eps^2)^{-1} sum (S(t_i, theta+u phi) - S(t_i, theta))^2 dt.
  double drift_b_eps(double u) const;

 private:
  double signal_row_dot(std::size_t k, std::span<const double> dx) const;

  ModelConfig cfg_;
  double gamma_ = 0.0;
  double phi_eps_ = 0.0;
  double du_ = 0.0;
  std::vector<double> table_;      // node-major: table_[k * n_t + i], empty if too big
  std::vector<double> energy_;     // sum_i S(t_i, u_k)^2 dt per node
  std::vector<double> node_u_;
};

ObservationPath simulate_path(const ModelConfig& cfg, RngStream& stream);
double log_likelihood(const ModelConfig& cfg, const ObservationPath& path, double u);
double mle_estimate(const ModelConfig& cfg, const ObservationPath& path);
double pitman_estimate(const ModelConfig& cfg, const ObservationPath& path);

struct ModelRunConfig {
  ModelConfig model;
  std::size_t n_reps = 0;
  std::uint64_t master_seed = 0;
  int n_threads = 1;
};

struct ModelMcSummary {
  double hurst = 0.0;
  std::size_t n_reps = 0;
  std::size_t n_t = 0;
  std::size_t n_u = 0;
  double phi_eps = 0.0;
  MomentAccumulator pitman;  // over normalized_pitman
  MomentAccumulator mle;     // over normalized_mle
};

// Replicate i draws from RngStream(master_seed, i); both estimators see the
// same path (common random numbers), and reruns with the same seed share
// noise across eps values of equal n_t.
ModelMcSummary run_model_mc(const ModelRunConfig& cfg, std::vector<EstimateResult>* raw = nullptr);

}  // namespace cusplim
