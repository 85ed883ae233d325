#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cusplim {

// Streaming central-moment accumulator (count, mean, M2..M4) with an
// order-insensitive merge, so parallel replicate batches aggregate to the
// same summary regardless of scheduling.
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;     // unbiased, n-1 denominator
  double se_mean() const;
  double se_variance() const;  // sqrt((m4 - var^2)/n)
  double central_moment4() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

struct DensityCurve {
  std::vector<double> x;
  std::vector<double> density;
  double bandwidth = 0.0;
  bool degenerate = false;
};

// Gaussian-kernel density with Silverman bandwidth
// 1.06 min(sd, IQR/1.34) N^{-1/5}, evaluated on [min,max] +/- 3 bandwidths.
DensityCurve kde(std::span<const double> samples, std::size_t n_grid = 512);

double ks_distance(std::span<const double> a, std::span<const double> b);
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

double trapezoid_integral(std::span<const double> x, std::span<const double> y);

}  // namespace cusplim
