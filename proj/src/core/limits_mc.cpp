#include "limits_mc.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"
#include "fgn.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "special.hpp"

namespace cusplim {

LimitEstimator::LimitEstimator(double hurst, const GridSpec& spec) : spec_(spec) {
  if (!(hurst > 0.0 && hurst <= 1.0)) throw ConfigError("hurst must lie in (0, 1]");
  const std::size_t n = spec_.node_count();
  u_.resize(n);
  drift_.resize(n);
  weight_.resize(n);
  const double delta = spec_.delta();
  for (std::size_t j = 0; j < n; ++j) {
    u_[j] = spec_.node(j);
    drift_[j] = 0.5 * std::pow(std::abs(u_[j]), 2.0 * hurst);
    weight_[j] = (j == 0 || j + 1 == n) ? 0.5 * delta : delta;
  }
}

LimitSample LimitEstimator::estimate(std::span<const double> w) const {
  const std::size_t n = u_.size();
  if (w.size() != n) throw ConfigError("path length does not match grid");

  double best = w[0] - drift_[0];
  std::size_t best_j = 0;
  for (std::size_t j = 1; j < n; ++j) {
    const double e = w[j] - drift_[j];
    if (e > best || (e == best && std::abs(u_[j]) < std::abs(u_[best_j]))) {
      best = e;
      best_j = j;
    }
  }

  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double g = weight_[j] * std::exp(w[j] - drift_[j] - best);
    num += u_[j] * g;
    den += g;
  }
  if (!(den > 0.0) || !std::isfinite(den) || !std::isfinite(num)) {
    throw DegenerateDenominator("posterior mass vanished after stabilization");
  }
  LimitSample s;
  s.zeta_hat = num / den;
  s.xi_hat = u_[best_j];
  s.max_exponent = best;
  s.argmax_index = static_cast<long>(best_j) - static_cast<long>(spec_.m);
  return s;
}

double LimitEstimator::zeta_hat_unstabilized(std::span<const double> w) const {
  const std::size_t n = u_.size();
  if (w.size() != n) throw ConfigError("path length does not match grid");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double g = weight_[j] * std::exp(w[j] - drift_[j]);
    num += u_[j] * g;
    den += g;
  }
  if (!(den > 0.0) || !std::isfinite(den) || !std::isfinite(num)) {
    throw DegenerateDenominator("unstabilized posterior mass overflowed or vanished");
  }
  return num / den;
}

McSummary run_limits_mc(const LimitsRunConfig& cfg, std::vector<LimitSample>* raw) {
  if (cfg.n_reps < 2) throw ConfigError("run_limits_mc needs at least 2 replicates");
  const TwoSidedFbmSampler sampler(cfg.hurst, cfg.grid);
  const LimitEstimator estimator(cfg.hurst, cfg.grid);

  std::vector<LimitSample> slots(cfg.n_reps);

  struct WorkerState {
    FgnWorkspace ws;
    FbmGrid grid;
  };
  parallel_for_state(
      cfg.n_reps, cfg.n_threads,
      [&] {
        return WorkerState{FgnWorkspace{}, FbmGrid{cfg.grid, cfg.hurst, {}}};
      },
      [&](WorkerState& state, std::size_t i) {
        try {
          RngStream stream(cfg.master_seed, i);
          sampler.sample(stream, state.grid, state.ws);
          slots[i] = estimator.estimate(state.grid.values);
        } catch (const ConfigError& e) {
          throw ConfigError("replicate " + std::to_string(i) + ": " + e.what());
        } catch (const NumericError& e) {
          throw NumericError("replicate " + std::to_string(i) + ": " + e.what());
        }
      });

  McSummary summary;
  summary.hurst = cfg.hurst;
  summary.n_reps = cfg.n_reps;
  summary.m = cfg.grid.m;
  summary.span = cfg.grid.span;
  for (const LimitSample& s : slots) {
    summary.zeta.add(s.zeta_hat);
    summary.xi.add(s.xi_hat);
  }
  if (raw) *raw = std::move(slots);
  return summary;
}

double brownian_argmax_tail(double t) {
  if (!(t >= 0.0)) throw ConfigError("brownian_argmax_tail needs t >= 0");
  const double rt = std::sqrt(t);
  const double term1 = (t + 5.0) * std_normal_cdf(-0.5 * rt);
  const double term2 = std::sqrt(2.0 * t / kPi) * std::exp(-t / 8.0);
  // 3 e^t Phi(-3 sqrt(t)/2) = (3/2) e^{-t/8} erfcx(3 sqrt(t) / (2 sqrt 2))
  const double term3 = 1.5 * std::exp(-t / 8.0) * erfcx_positive(3.0 * rt / (2.0 * kSqrt2));
  const double p = term1 - term2 - term3;
  if (p < 0.0) return 0.0;
  if (p > 1.0) return 1.0;
  return p;
}

ReferenceLaw h1_reference_law() {
  return ReferenceLaw{0.0, 1.0, &std_normal_cdf, &std_normal_quantile};
}

}  // namespace cusplim
