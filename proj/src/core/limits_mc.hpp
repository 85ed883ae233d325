#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "grid.hpp"
#include "stats.hpp"

namespace cusplim {

struct LimitSample {
  double zeta_hat = 0.0;
  double xi_hat = 0.0;
  double max_exponent = 0.0;  // max_j (W_j - |u_j|^{2H}/2), >= 0 since u = 0 gives 0
  long argmax_index = 0;      // signed node offset j - m
};

// One-replicate estimators on the likelihood-ratio field
// Z(u_j) = W(u_j) - |u_j|^{2H}/2 over the grid.
class LimitEstimator {
 public:
  LimitEstimator(double hurst, const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }

  // zeta_hat: trapezoid ratio with shift-by-max stabilization.
  // xi_hat: grid argmax; ties go to the smallest |u_j|, negative side first.
  LimitSample estimate(std::span<const double> w) const;

  // No stabilization; only safe on paths where exp(Z) stays in range.
  double zeta_hat_unstabilized(std::span<const double> w) const;

 private:
  GridSpec spec_;
  std::vector<double> u_;
  std::vector<double> drift_;
  std::vector<double> weight_;
};

struct LimitsRunConfig {
  double hurst = 0.5;
  GridSpec grid{1, 1.0};
  std::size_t n_reps = 0;
  std::uint64_t master_seed = 0;
  int n_threads = 1;
};

struct McSummary {
  double hurst = 0.0;
  std::size_t n_reps = 0;
  std::size_t m = 0;
  double span = 0.0;
  MomentAccumulator zeta;
  MomentAccumulator xi;
};

// Replicate i draws from RngStream(master_seed, i); results are accumulated
// in replicate order, so summaries and raw dumps do not depend on n_threads.
McSummary run_limits_mc(const LimitsRunConfig& cfg, std::vector<LimitSample>* raw = nullptr);

// Tail law of the argmax of two-sided Brownian motion with drift -|u|/2:
// P(|xi_{1/2}| > t), computed in an overflow-free scaled-Mills form.
double brownian_argmax_tail(double t);

struct ReferenceLaw {
  double mean = 0.0;
  double variance = 1.0;
  double (*cdf)(double) = nullptr;
  double (*quantile)(double) = nullptr;
};

// H = 1 boundary: both limit laws are standard normal.
ReferenceLaw h1_reference_law();

}  // namespace cusplim
