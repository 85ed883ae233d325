#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "rng.hpp"
#include "special.hpp"
#include "stats.hpp"

using namespace cusplim;

namespace {

struct DirectMoments {
  double mean = 0.0, var = 0.0, m4 = 0.0;
};

DirectMoments direct_moments(const std::vector<double>& x) {
  DirectMoments d;
  const double n = static_cast<double>(x.size());
  d.mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double c = v - d.mean;
    m2 += c * c;
    m4 += c * c * c * c;
  }
  d.var = m2 / (n - 1.0);
  d.m4 = m4 / n;
  return d;
}

}  // namespace

TEST_CASE("moment accumulator matches direct two-pass computation") {
  const std::vector<double> x = {0.31, -1.2, 4.5, 0.0, 2.25, -0.75, 1.1, 3.3, -2.2, 0.5};
  MomentAccumulator acc;
  for (double v : x) acc.add(v);
  const DirectMoments d = direct_moments(x);
  CHECK(acc.count() == x.size());
  CHECK(acc.mean() == doctest::Approx(d.mean).epsilon(1e-14));
  CHECK(acc.variance() == doctest::Approx(d.var).epsilon(1e-13));
  CHECK(acc.central_moment4() == doctest::Approx(d.m4).epsilon(1e-13));
  CHECK(acc.se_mean() == doctest::Approx(std::sqrt(d.var / 10.0)).epsilon(1e-13));
  CHECK(acc.se_variance() ==
        doctest::Approx(std::sqrt((d.m4 - d.var * d.var) / 10.0)).epsilon(1e-12));
}

TEST_CASE("moment accumulator merge is split-point invariant") {
  RngStream stream(99, 0);
  std::vector<double> x(500);
  for (double& v : x) v = stream.normal() * 3.0 + 1.0;

  MomentAccumulator whole;
  for (double v : x) whole.add(v);

  for (std::size_t cut : {1UL, 100UL, 250UL, 499UL}) {
    MomentAccumulator lo, hi;
    for (std::size_t i = 0; i < cut; ++i) lo.add(x[i]);
    for (std::size_t i = cut; i < x.size(); ++i) hi.add(x[i]);
    lo.merge(hi);
    CHECK(lo.count() == whole.count());
    CHECK(lo.mean() == doctest::Approx(whole.mean()).epsilon(1e-12));
    CHECK(lo.variance() == doctest::Approx(whole.variance()).epsilon(1e-12));
    CHECK(lo.central_moment4() == doctest::Approx(whole.central_moment4()).epsilon(1e-11));
  }

  MomentAccumulator empty_left;
  MomentAccumulator copy = whole;
  empty_left.merge(copy);
  CHECK(empty_left.count() == whole.count());
  CHECK(empty_left.variance() == doctest::Approx(whole.variance()).epsilon(1e-13));
  whole.merge(MomentAccumulator{});
  CHECK(whole.count() == x.size());
}

TEST_CASE("kde recovers a standard normal density") {
  RngStream stream(7, 3);
  std::vector<double> x(100000);
  for (double& v : x) v = stream.normal();
  const DensityCurve curve = kde(x);
  REQUIRE(curve.x.size() == curve.density.size());
  CHECK_FALSE(curve.degenerate);

  double worst = 0.0;
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    worst = std::max(worst, std::abs(curve.density[i] - std_normal_pdf(curve.x[i])));
  }
  CHECK(worst < 0.01);

  const double mass = trapezoid_integral(curve.x, curve.density);
  CHECK(mass > 0.98);
  CHECK(mass <= 1.0 + 1e-9);
}

TEST_CASE("kde edge cases") {
  std::vector<double> tiny(20, 1.0);
  CHECK_THROWS_AS(kde(tiny), TooFewSamples);

  std::vector<double> constant(500, 2.5);
  const DensityCurve curve = kde(constant);
  CHECK(curve.degenerate);
  CHECK(curve.bandwidth == doctest::Approx(1e-6));
}

TEST_CASE("ks distance basics") {
  RngStream stream(21, 0);
  std::vector<double> a(5000);
  for (double& v : a) v = stream.normal();
  std::vector<double> same = a;
  CHECK(ks_distance(a, same) == doctest::Approx(0.0).epsilon(1e-15));

  std::vector<double> shifted(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) shifted[i] = a[i] + 100.0;
  CHECK(ks_distance(a, shifted) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("ks distance between two same-law samples is small") {
  std::vector<double> a(10000), b(10000);
  RngStream sa(31, 0), sb(31, 1);
  for (double& v : a) v = sa.normal();
  for (double& v : b) v = sb.normal();
  CHECK(ks_distance(a, b) < 0.027);
}

TEST_CASE("one-sample ks against the true cdf") {
  std::vector<double> a(10000);
  RngStream stream(47, 0);
  for (double& v : a) v = stream.normal();
  CHECK(ks_distance(a, std_normal_cdf) < 0.02);

  // against a wrong cdf the distance is large
  const auto shifted_cdf = [](double x) { return std_normal_cdf(x - 2.0); };
  CHECK(ks_distance(a, shifted_cdf) > 0.5);
}

TEST_CASE("trapezoid integral") {
  const std::vector<double> x = {0.0, 0.5, 1.0, 2.0};
  const std::vector<double> y = {0.0, 0.5, 1.0, 2.0};
  CHECK(trapezoid_integral(x, y) == doctest::Approx(2.0).epsilon(1e-14));
  const std::vector<double> c = {3.0, 3.0, 3.0, 3.0};
  CHECK(trapezoid_integral(x, c) == doctest::Approx(6.0).epsilon(1e-14));
}
