#include "fgn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace cusplim {

namespace {

void check_hurst(double hurst) {
  if (!(hurst > 0.0 && hurst <= 1.0)) throw ConfigError("hurst must be in (0, 1]");
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

double fgn_autocovariance(double hurst, double delta, std::size_t lag) {
  check_hurst(hurst);
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  const double k = static_cast<double>(lag);
  const double two_h = 2.0 * hurst;
  return 0.5 * std::pow(delta, two_h) *
         (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
          std::pow(std::abs(k - 1.0), two_h));
}

FgnSampler::FgnSampler(double hurst, std::size_t n, double delta)
    : n_(n), embed_(next_pow2(2 * n)), fft_half_(next_pow2(2 * n) / 2) {
  check_hurst(hurst);
  if (n == 0) throw ConfigError("fgn length must be >= 1");
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");

  const std::size_t m = embed_;
  std::vector<double> row(m);
  for (std::size_t j = 0; j < m; ++j) {
    row[j] = fgn_autocovariance(hurst, delta, std::min(j, m - j));
  }
  auto spectrum = real_fft(row);

  double max_eig = 0.0;
  for (const auto& s : spectrum) max_eig = std::max(max_eig, s.real());
  const double tol = 1e-9 * max_eig;

  min_eig_ = spectrum[0].real();
  coef_.resize(m / 2 + 1);
  for (std::size_t k = 0; k <= m / 2; ++k) {
    double lambda = spectrum[k].real();
    min_eig_ = std::min(min_eig_, lambda);
    if (lambda < -tol) {
      throw CirculantNotPSD("circulant eigenvalue " + std::to_string(lambda) +
                            " below -1e-9 * max at index " + std::to_string(k));
    }
    lambda = std::max(lambda, 0.0);
    const double denom = (k == 0 || k == m / 2) ? static_cast<double>(m)
                                                : 2.0 * static_cast<double>(m);
    coef_[k] = std::sqrt(lambda / denom);
  }

  fold_rot_.resize(m / 2);
  for (std::size_t k = 0; k < m / 2; ++k) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    fold_rot_[k] = std::complex<double>(std::cos(ang), std::sin(ang));
  }
}

void FgnSampler::sample(RngStream& stream, std::vector<double>& out, FgnWorkspace& ws) const {
  const std::size_t m = embed_;
  const std::size_t half = m / 2;
  out.resize(n_);

  // Hermitian random spectrum, fixed draw order: S_0, S_{M/2}, then pairs.
  // Folding S into Z of half size uses Sh_k = conj(S_{half-k}) = S_{k+half}.
  auto& spec = ws.spectrum;
  auto& z = ws.folded;
  spec.resize(half + 1);
  z.resize(half);
  spec[0] = coef_[0] * stream.normal();
  spec[half] = coef_[half] * stream.normal();
  for (std::size_t k = 1; k < half; ++k) {
    const double re = stream.normal();
    const double im = stream.normal();
    spec[k] = std::complex<double>(coef_[k] * re, coef_[k] * im);
  }
  for (std::size_t k = 0; k < half; ++k) {
    const std::complex<double> sk = spec[k];
    const std::complex<double> sh = std::conj(spec[half - k]);
    const std::complex<double> b = (sk - sh) * fold_rot_[k];
    const std::complex<double> a = sk + sh;
    z[k] = a + std::complex<double>(-b.imag(), b.real());
  }
  fft_half_.inverse_unnormalized(z);
  for (std::size_t l = 0; 2 * l < n_; ++l) {
    out[2 * l] = z[l].real();
    if (2 * l + 1 < n_) out[2 * l + 1] = z[l].imag();
  }
}

std::vector<double> FgnSampler::sample(RngStream& stream) const {
  std::vector<double> out;
  FgnWorkspace ws;
  sample(stream, out, ws);
  return out;
}

std::vector<double> fgn_sample(double hurst, std::size_t n, double delta, RngStream& stream) {
  return FgnSampler(hurst, n, delta).sample(stream);
}

TwoSidedFbmSampler::TwoSidedFbmSampler(double hurst, const GridSpec& spec)
    : hurst_(hurst), spec_(spec), fgn_(hurst, 2 * spec.m, spec.delta()) {}

void TwoSidedFbmSampler::sample(RngStream& stream, FbmGrid& out, FgnWorkspace& ws) const {
  const std::size_t m = spec_.m;
  fgn_.sample(stream, ws.increments, ws);

  out.spec = spec_;
  out.hurst = hurst_;
  out.values.resize(2 * m + 1);
  out.values[0] = 0.0;
  for (std::size_t i = 0; i < 2 * m; ++i) out.values[i + 1] = out.values[i] + ws.increments[i];
  const double center = out.values[m];
  for (double& v : out.values) v -= center;
  out.values[m] = 0.0;
}

FbmGrid TwoSidedFbmSampler::sample(RngStream& stream) const {
  FbmGrid out;
  FgnWorkspace ws;
  sample(stream, out, ws);
  return out;
}

FbmGrid two_sided_fbm(double hurst, const GridSpec& spec, RngStream& stream) {
  return TwoSidedFbmSampler(hurst, spec).sample(stream);
}

CholeskyFbmSampler::CholeskyFbmSampler(double hurst, const GridSpec& spec)
    : hurst_(hurst), spec_(spec), dim_(2 * spec.m) {
  check_hurst(hurst);
  if (spec.node_count() > 512) {
    throw ConfigError("cholesky oracle limited to grids with 2m+1 <= 512 nodes");
  }

  const double two_h = 2.0 * hurst;
  std::vector<double> u;
  u.reserve(dim_);
  for (std::size_t i = 0; i < spec.node_count(); ++i) {
    if (i != spec.m) u.push_back(spec.node(i));
  }

  std::vector<double> cov(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double c = 0.5 * (std::pow(std::abs(u[i]), two_h) + std::pow(std::abs(u[j]), two_h) -
                              std::pow(std::abs(u[i] - u[j]), two_h));
      cov[i * dim_ + j] = c;
      cov[j * dim_ + i] = c;
    }
  }

  double max_diag = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) max_diag = std::max(max_diag, cov[i * dim_ + i]);

  auto try_factor = [&](double jitter) -> bool {
    chol_.assign(dim_ * dim_, 0.0);
    for (std::size_t j = 0; j < dim_; ++j) {
      double d = cov[j * dim_ + j] + jitter;
      for (std::size_t k = 0; k < j; ++k) d -= chol_[j * dim_ + k] * chol_[j * dim_ + k];
      if (!(d > 0.0)) return false;
      const double ljj = std::sqrt(d);
      chol_[j * dim_ + j] = ljj;
      for (std::size_t i = j + 1; i < dim_; ++i) {
        double s = cov[i * dim_ + j];
        for (std::size_t k = 0; k < j; ++k) s -= chol_[i * dim_ + k] * chol_[j * dim_ + k];
        chol_[i * dim_ + j] = s / ljj;
      }
    }
    return true;
  };

  if (!try_factor(0.0) && !try_factor(1e-12 * std::max(max_diag, 1.0))) {
    throw CovarianceNotPD("fBm covariance not positive definite beyond 1e-12 jitter");
  }
}

FbmGrid CholeskyFbmSampler::sample(RngStream& stream) const {
  const auto z = stream.normals(dim_);
  FbmGrid out;
  out.spec = spec_;
  out.hurst = hurst_;
  out.values.assign(spec_.node_count(), 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k <= i; ++k) s += chol_[i * dim_ + k] * z[k];
    const std::size_t node = (i < spec_.m) ? i : i + 1;
    out.values[node] = s;
  }
  return out;
}

FbmGrid cholesky_fbm_oracle(double hurst, const GridSpec& spec, RngStream& stream) {
  return CholeskyFbmSampler(hurst, spec).sample(stream);
}

}  // namespace cusplim
