#include "stats.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "special.hpp"

namespace cusplim {

void MomentAccumulator::add(double x) {
  const double n1 = static_cast<double>(n_);
  n_ += 1;
  const double n = static_cast<double>(n_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
  m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
  m2_ += term1;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double n = na + nb;
  const double d = other.mean_ - mean_;
  const double d2 = d * d;

  const double m2 = m2_ + other.m2_ + d2 * na * nb / n;
  const double m3 = m3_ + other.m3_ + d * d2 * na * nb * (na - nb) / (n * n) +
                    3.0 * d * (na * other.m2_ - nb * m2_) / n;
  const double m4 = m4_ + other.m4_ +
                    d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                    6.0 * d2 * (na * na * other.m2_ + nb * nb * m2_) / (n * n) +
                    4.0 * d * (na * other.m3_ - nb * m3_) / n;

  mean_ += d * nb / n;
  m2_ = m2;
  m3_ = m3;
  m4_ = m4;
  n_ += other.n_;
}

double MomentAccumulator::variance() const {
  if (n_ < 2) return 0.0;
  return m2_ / static_cast<double>(n_ - 1);
}

double MomentAccumulator::se_mean() const {
  if (n_ < 2) return 0.0;
  return std::sqrt(variance() / static_cast<double>(n_));
}

double MomentAccumulator::central_moment4() const {
  if (n_ == 0) return 0.0;
  return m4_ / static_cast<double>(n_);
}

double MomentAccumulator::se_variance() const {
  if (n_ < 2) return 0.0;
  const double var = variance();
  const double inner = central_moment4() - var * var;
  return std::sqrt(std::max(inner, 0.0) / static_cast<double>(n_));
}

namespace {

double quantile_sorted(const std::vector<double>& s, double p) {
  const double idx = p * static_cast<double>(s.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(idx);
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  const double frac = idx - static_cast<double>(lo);
  return s[lo] + frac * (s[hi] - s[lo]);
}

}  // namespace

DensityCurve kde(std::span<const double> samples, std::size_t n_grid) {
  if (samples.size() < 100) throw TooFewSamples("kde requires at least 100 samples");
  if (n_grid < 2) throw ConfigError("kde grid needs at least 2 points");
  const std::size_t n = samples.size();

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  MomentAccumulator acc;
  for (double v : sorted) acc.add(v);
  const double sd = std::sqrt(acc.variance());
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double spread = std::min(sd, iqr / 1.34);

  DensityCurve curve;
  curve.bandwidth = 1.06 * spread * std::pow(static_cast<double>(n), -0.2);
  if (!(curve.bandwidth > 1e-6)) {
    curve.bandwidth = 1e-6;
    curve.degenerate = true;
  }

  const double lo = sorted.front() - 3.0 * curve.bandwidth;
  const double hi = sorted.back() + 3.0 * curve.bandwidth;
  const double step = (hi - lo) / static_cast<double>(n_grid - 1);
  curve.x.resize(n_grid);
  curve.density.resize(n_grid);
  const double inv_nb = 1.0 / (static_cast<double>(n) * curve.bandwidth);
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double xi = lo + static_cast<double>(i) * step;
    double s = 0.0;
    for (double v : sorted) s += std_normal_pdf((xi - v) / curve.bandwidth);
    curve.x[i] = xi;
    curve.density[i] = s * inv_nb;
  }
  return curve;
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ConfigError("ks_distance requires nonempty samples");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double sup = 0.0;
  while (i < sa.size() && j < sb.size()) {
    if (sa[i] < sb[j]) {
      ++i;
    } else if (sb[j] < sa[i]) {
      ++j;
    } else {
      // consume the whole tie group on both sides before comparing cdfs
      const double v = sa[i];
      while (i < sa.size() && sa[i] == v) ++i;
      while (j < sb.size() && sb[j] == v) ++j;
    }
    sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return sup;
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw ConfigError("ks_distance requires nonempty samples");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    sup = std::max(sup, std::abs(f - static_cast<double>(i) / n));
    sup = std::max(sup, std::abs(f - static_cast<double>(i + 1) / n));
  }
  return sup;
}

double trapezoid_integral(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("trapezoid needs matched arrays");
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  }
  return acc;
}

}  // namespace cusplim
