#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "fft.hpp"
#include "grid.hpp"
#include "rng.hpp"

namespace cusplim {

// Stationary autocovariance of fractional Gaussian noise at lag k:
// gamma(k) = delta^{2H}/2 (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}).
double fgn_autocovariance(double hurst, double delta, std::size_t lag);

// Reusable per-worker buffers for the samplers below.
struct FgnWorkspace {
  std::vector<std::complex<double>> spectrum;
  std::vector<std::complex<double>> folded;
  std::vector<double> increments;
};

// Exact-in-law fGn generator by circulant embedding (Wood-Chan). The
// embedding is the first power of two >= 2n; eigenvalues in [-tol, 0) with
// tol = 1e-9 * max eigenvalue are clamped to zero, anything lower aborts.
class FgnSampler {
 public:
  FgnSampler(double hurst, std::size_t n, double delta);

  std::size_t length() const { return n_; }
  std::size_t embedding_size() const { return embed_; }
  double min_eigenvalue() const { return min_eig_; }

  // Draws embedding_size() normals from the stream.
  std::vector<double> sample(RngStream& stream) const;
  void sample(RngStream& stream, std::vector<double>& out, FgnWorkspace& ws) const;

 private:
  std::size_t n_ = 0;
  std::size_t embed_ = 0;
  double min_eig_ = 0.0;
  std::vector<double> coef_;  // sqrt(lambda_k / M) style spectral scales, k <= M/2
  std::vector<std::complex<double>> fold_rot_;  // e^{+2pi i k/M}, k < M/2
  Fft fft_half_;
};

std::vector<double> fgn_sample(double hurst, std::size_t n, double delta, RngStream& stream);

// Two-sided fBm on the grid: one fGn run of length 2m, partial sums pinned
// at the center, so the halves keep their exact cross-zero dependence.
class TwoSidedFbmSampler {
 public:
  TwoSidedFbmSampler(double hurst, const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  double hurst() const { return hurst_; }

  FbmGrid sample(RngStream& stream) const;
  void sample(RngStream& stream, FbmGrid& out, FgnWorkspace& ws) const;

 private:
  double hurst_ = 0.0;
  GridSpec spec_;
  FgnSampler fgn_;
};

FbmGrid two_sided_fbm(double hurst, const GridSpec& spec, RngStream& stream);

// Dense-covariance oracle for small grids (2m+1 <= 512): exact fBm sampling
// via a Cholesky factor of Cov(W_u, W_s) = (|u|^{2H}+|s|^{2H}-|u-s|^{2H})/2.
class CholeskyFbmSampler {
 public:
  CholeskyFbmSampler(double hurst, const GridSpec& spec);

  FbmGrid sample(RngStream& stream) const;

 private:
  double hurst_ = 0.0;
  GridSpec spec_;
  std::vector<double> chol_;  // lower triangle, row-major, over nonzero nodes
  std::size_t dim_ = 0;
};

FbmGrid cholesky_fbm_oracle(double hurst, const GridSpec& spec, RngStream& stream);

}  // namespace cusplim
