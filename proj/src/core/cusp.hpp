#pragma once

#include <cstddef>
#include <vector>

#include "rng.hpp"

namespace cusplim {

// Asymmetric cusp q_alpha(x) = (a if x >= 0 else b) |x|^alpha with
// H = alpha + 1/2.
struct CuspParams {
  double alpha = 0.0;
  double a = 1.0;
  double b = 1.0;

  CuspParams(double alpha_, double a_, double b_);

  double hurst() const { return alpha + 0.5; }
  bool one_sided() const { return a == 0.0 || b == 0.0; }
};

double q_alpha(const CuspParams& p, double x);

// Closed form sqrt(pi) G(1+alpha) / (2^{2a+1} G(3/2+alpha)) *
// (sec(pi alpha)(a^2+b^2) - 2ab). Throws NonPositive when the expression is
// <= 0 (alpha = 0 with a = b carries no location information).
double gamma_alpha_sq_closed(const CuspParams& p);

// Ground truth: adaptive double-exponential quadrature of
// int (q(y-1) - q(y))^2 dy, split at the singular points {0, 1}, absolute
// error below 1e-9.
double gamma_alpha_sq_quad(const CuspParams& p);

// Midpoint-cell discretization of Y_u = Gamma^{-1} int (q(y-u) - q(y)) dW_y
// over [-y_span/2, y_span/2]. u-grid values must sit on cell boundaries so
// midpoints avoid the singular points (SingularHit otherwise, alpha < 0).
// Normalization uses the square root of the quadrature value.
class LimitFieldSampler {
 public:
  LimitFieldSampler(const CuspParams& p, std::vector<double> u_grid, double y_span,
                    std::size_t n_y);

  double gamma() const { return gamma_; }
  const std::vector<double>& u_grid() const { return u_grid_; }

  // out[k] = Y at u_grid[k]; draws n_y normals per call.
  void sample(RngStream& stream, std::vector<double>& out, std::vector<double>& normals_buf) const;
  std::vector<double> sample(RngStream& stream) const;

 private:
  std::vector<double> u_grid_;
  double gamma_ = 0.0;
  std::size_t n_y_ = 0;
  std::vector<double> kernel_;  // row k: scaled q-difference at cell midpoints
};

std::vector<double> limit_field_path(const CuspParams& p, const std::vector<double>& u_grid,
                                     double y_span, std::size_t n_y, RngStream& stream);

}  // namespace cusplim
