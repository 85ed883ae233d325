#include <cmath>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "fgn.hpp"
#include "grid.hpp"
#include "limits_mc.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

using namespace cusplim;

TEST_CASE("flat path gives centered estimates") {
  const GridSpec spec{16, 4.0};
  const LimitEstimator est(0.75, spec);
  const std::vector<double> w(spec.node_count(), 0.0);
  const LimitSample s = est.estimate(w);
  CHECK(std::abs(s.zeta_hat) < 1e-12);
  CHECK(s.xi_hat == 0.0);
  CHECK(s.max_exponent == 0.0);
  CHECK(s.argmax_index == 0);
}

TEST_CASE("stabilized posterior mean matches the naive form in range") {
  const GridSpec spec{8, 1.0};
  const LimitEstimator est(0.7, spec);
  RngStream stream(4, 0);
  for (int r = 0; r < 20; ++r) {
    const FbmGrid g = two_sided_fbm(0.7, spec, stream);
    const double stabilized = est.estimate(g.values).zeta_hat;
    const double naive = est.zeta_hat_unstabilized(g.values);
    CHECK(stabilized == doctest::Approx(naive).epsilon(1e-12));
  }
}

TEST_CASE("argmax diagnostics invariants") {
  const GridSpec spec{64, 8.0};
  const LimitEstimator est(0.6, spec);
  for (std::uint64_t r = 0; r < 50; ++r) {
    RngStream stream(1009, r);
    const FbmGrid g = two_sided_fbm(0.6, spec, stream);
    const LimitSample s = est.estimate(g.values);
    // the u = 0 node contributes exponent exactly 0, so the max cannot be below it
    CHECK(s.max_exponent >= 0.0);
    CHECK(std::abs(s.argmax_index) <= 64);
    const std::size_t j = static_cast<std::size_t>(s.argmax_index + 64);
    CHECK(s.xi_hat == spec.node(j));
    CHECK(s.max_exponent == g.values[j] - 0.5 * std::pow(std::abs(s.xi_hat), 1.2));
  }
}

TEST_CASE("argmax ties resolve to the smallest |u|, negative side first") {
  const GridSpec spec{2, 2.0};
  const LimitEstimator est(0.5, spec);
  // drift is |u|/2 on u = {-2,-1,0,1,2}; these w make Z = {-1,1,0,1,-1}
  const std::vector<double> tied_pm = {0.0, 1.5, 0.0, 1.5, 0.0};
  const LimitSample s1 = est.estimate(tied_pm);
  CHECK(s1.xi_hat == -1.0);
  CHECK(s1.argmax_index == -1);
  CHECK(s1.max_exponent == 1.0);

  // Z = {-1,-0.5,0,0,-1}: tie between u = 0 and u = 1 goes to u = 0
  const std::vector<double> tied_inner = {0.0, 0.0, 0.0, 0.5, 0.0};
  const LimitSample s2 = est.estimate(tied_inner);
  CHECK(s2.xi_hat == 0.0);
  CHECK(s2.argmax_index == 0);
}

TEST_CASE("estimator validation") {
  const GridSpec spec{4, 1.0};
  CHECK_THROWS_AS(LimitEstimator(0.0, spec), ConfigError);
  CHECK_THROWS_AS(LimitEstimator(1.5, spec), ConfigError);
  const LimitEstimator est(0.5, spec);
  const std::vector<double> wrong(5, 0.0);
  CHECK_THROWS_AS(est.estimate(wrong), ConfigError);
}

TEST_CASE("monte carlo estimates are centered for a symmetric field") {
  LimitsRunConfig cfg;
  cfg.hurst = 0.9;
  cfg.grid = GridSpec{1 << 10, 30.0};
  cfg.n_reps = 1000;
  cfg.master_seed = 1234;
  const McSummary s = run_limits_mc(cfg);
  CHECK(s.n_reps == 1000);
  CHECK(std::abs(s.zeta.mean()) < 4.0 * s.zeta.se_mean());
  CHECK(std::abs(s.xi.mean()) < 4.0 * s.xi.se_mean());
  CHECK(s.xi.variance() > s.zeta.variance());
}

TEST_CASE("monte carlo output does not depend on repetition or thread count") {
  LimitsRunConfig cfg;
  cfg.hurst = 0.7;
  cfg.grid = GridSpec{256, 10.0};
  cfg.n_reps = 400;
  cfg.master_seed = 77;
  cfg.n_threads = 1;

  std::vector<LimitSample> raw1, raw2, raw3;
  const McSummary s1 = run_limits_mc(cfg, &raw1);
  const McSummary s2 = run_limits_mc(cfg, &raw2);
  cfg.n_threads = 3;
  const McSummary s3 = run_limits_mc(cfg, &raw3);

  REQUIRE(raw1.size() == 400);
  REQUIRE(raw2.size() == 400);
  REQUIRE(raw3.size() == 400);
  for (std::size_t i = 0; i < raw1.size(); ++i) {
    CHECK(raw1[i].zeta_hat == raw2[i].zeta_hat);
    CHECK(raw1[i].xi_hat == raw2[i].xi_hat);
    CHECK(raw1[i].zeta_hat == raw3[i].zeta_hat);
    CHECK(raw1[i].xi_hat == raw3[i].xi_hat);
    CHECK(raw1[i].argmax_index == raw3[i].argmax_index);
  }
  CHECK(s1.zeta.variance() == s2.zeta.variance());
  CHECK(s1.zeta.variance() == s3.zeta.variance());
  CHECK(s1.xi.variance() == s3.xi.variance());
}

TEST_CASE("brownian argmax tail law reference values") {
  CHECK(brownian_argmax_tail(0.0) == 1.0);
  CHECK(brownian_argmax_tail(0.5) == doctest::Approx(0.74575958627326652).epsilon(1e-9));
  CHECK(brownian_argmax_tail(1.0) == doctest::Approx(0.60229217516929357).epsilon(1e-9));
  CHECK(brownian_argmax_tail(2.0) == doctest::Approx(0.42379138748044285).epsilon(1e-9));
  CHECK(brownian_argmax_tail(8.0) == doctest::Approx(0.093453585787182046).epsilon(1e-9));
  CHECK(brownian_argmax_tail(26.0) == doctest::Approx(0.0034868453763941878).epsilon(1e-9));
  CHECK_THROWS_AS(brownian_argmax_tail(-1.0), ConfigError);
}

TEST_CASE("brownian argmax tail is a valid survival function") {
  double prev = 1.0;
  for (double t = 0.0; t <= 40.0; t += 0.25) {
    const double p = brownian_argmax_tail(t);
    CHECK(p >= 0.0);
    CHECK(p <= prev + 1e-15);
    prev = p;
  }
}

TEST_CASE("brownian argmax tail integrates to the known moments") {
  // E xi^2 = int_0^inf 2 t P(|xi| > t) dt = 26
  const double second = exp_sinh(
      [](double t, double /*dist*/) { return 2.0 * t * brownian_argmax_tail(t); }, 0.0, 1e-7);
  CHECK(second == doctest::Approx(26.0).epsilon(1e-4));
  // E |xi| = int_0^inf P(|xi| > t) dt = 3
  const double first =
      exp_sinh([](double t, double /*dist*/) { return brownian_argmax_tail(t); }, 0.0, 1e-8);
  CHECK(first == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("gaussian reference law at the smooth boundary") {
  const ReferenceLaw law = h1_reference_law();
  CHECK(law.mean == 0.0);
  CHECK(law.variance == 1.0);
  CHECK(law.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(law.quantile(0.975) == doctest::Approx(1.9599639845400542).epsilon(1e-12));
}
