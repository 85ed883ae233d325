#include "cusp.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "errors.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace cusplim {

CuspParams::CuspParams(double alpha_, double a_, double b_) : alpha(alpha_), a(a_), b(b_) {
  if (!(alpha > -0.5 && alpha < 0.5)) throw ConfigError("alpha must be in (-1/2, 1/2)");
  if (!(a >= 0.0) || !(b >= 0.0)) throw ConfigError("cusp coefficients must be >= 0");
  if (a == 0.0 && b == 0.0) throw ConfigError("cusp coefficients must not both be zero");
}

double q_alpha(const CuspParams& p, double x) {
  if (x == 0.0) {
    if (p.alpha < 0.0) throw SingularPoint("q_alpha unbounded at x = 0 for alpha < 0");
    return (p.alpha == 0.0) ? p.a : 0.0;
  }
  const double coef = (x >= 0.0) ? p.a : p.b;
  return coef * std::pow(std::abs(x), p.alpha);
}

double gamma_alpha_sq_closed(const CuspParams& p) {
  const double alpha = p.alpha;
  const double sec = 1.0 / std::cos(std::numbers::pi * alpha);
  const double shape = sec * (p.a * p.a + p.b * p.b) - 2.0 * p.a * p.b;
  const double value = std::sqrt(std::numbers::pi) * gamma_fn(1.0 + alpha) /
                       (std::pow(2.0, 2.0 * alpha + 1.0) * gamma_fn(1.5 + alpha)) * shape;
  if (!(value > 0.0)) {
    throw NonPositive("closed-form normalizer " + std::to_string(value) +
                      " is not positive (degenerate: no location information)");
  }
  return value;
}

namespace {

// (q(y-1) - q(y))^2 on a semi-infinite piece where both terms carry the same
// coefficient c: integrand c^2 ((1+z)^alpha - z^alpha)^2, z the distance to
// the singular endpoint. The z > 1 branch avoids the catastrophic
// cancellation of two large powers.
double tail_integrand(double alpha, double c, double z) {
  double diff;
  if (z > 1.0) {
    diff = std::pow(z, alpha) * std::expm1(alpha * std::log1p(1.0 / z));
  } else {
    diff = std::pow(1.0 + z, alpha) - std::pow(z, alpha);
  }
  return c * c * diff * diff;
}

}  // namespace

double gamma_alpha_sq_quad(const CuspParams& p) {
  const double alpha = p.alpha;
  const double a = p.a;
  const double b = p.b;
  const double tol = 3e-10;

  // y < 0: both q terms on the b side.
  const double left = exp_sinh(
      [alpha, b](double /*x*/, double dist) { return tail_integrand(alpha, b, dist); }, 0.0, tol);
  // y > 1: both on the a side.
  const double right = exp_sinh(
      [alpha, a](double /*x*/, double dist) { return tail_integrand(alpha, a, dist); }, 0.0, tol);
  // y in (0,1): q(y-1) = b (1-y)^alpha, q(y) = a y^alpha.
  const double mid = tanh_sinh(
      [alpha, a, b](double x, double dist) {
        const double y = (x <= 0.5) ? dist : x;
        const double omy = (x <= 0.5) ? 1.0 - x : dist;
        const double diff = b * std::pow(omy, alpha) - a * std::pow(y, alpha);
        return diff * diff;
      },
      0.0, 1.0, tol);

  return left + mid + right;
}

LimitFieldSampler::LimitFieldSampler(const CuspParams& p, std::vector<double> u_grid,
                                     double y_span, std::size_t n_y)
    : u_grid_(std::move(u_grid)), n_y_(n_y) {
  if (n_y < 2) throw ConfigError("limit field grid needs n_y >= 2");
  if (!(y_span > 0.0)) throw ConfigError("y_span must be positive");
  double max_abs_u = 0.0;
  for (double u : u_grid_) max_abs_u = std::max(max_abs_u, std::abs(u));
  if (!(y_span > 4.0 * max_abs_u)) {
    throw ConfigError("y_span must cover max|u| with margin");
  }

  gamma_ = std::sqrt(gamma_alpha_sq_quad(p));
  if (!(gamma_ > 0.0)) throw NonPositive("cusp normalizer is zero");

  const double dy = y_span / static_cast<double>(n_y);
  const double scale = std::sqrt(dy) / gamma_;
  kernel_.resize(u_grid_.size() * n_y);
  for (std::size_t j = 0; j < n_y; ++j) {
    const double y = -0.5 * y_span + (static_cast<double>(j) + 0.5) * dy;
    if (p.alpha < 0.0 && y == 0.0) throw SingularHit("cell midpoint hit y = 0");
    const double qy = q_alpha(p, y);
    for (std::size_t k = 0; k < u_grid_.size(); ++k) {
      const double arg = y - u_grid_[k];
      if (p.alpha < 0.0 && arg == 0.0) {
        throw SingularHit("cell midpoint hit y = u; put u on cell boundaries");
      }
      kernel_[k * n_y + j] = scale * (q_alpha(p, arg) - qy);
    }
  }
}

void LimitFieldSampler::sample(RngStream& stream, std::vector<double>& out,
                               std::vector<double>& normals_buf) const {
  normals_buf.resize(n_y_);
  stream.normals(normals_buf);
  out.assign(u_grid_.size(), 0.0);
  for (std::size_t k = 0; k < u_grid_.size(); ++k) {
    const double* row = kernel_.data() + k * n_y_;
    double acc = 0.0;
    for (std::size_t j = 0; j < n_y_; ++j) acc += row[j] * normals_buf[j];
    out[k] = acc;
  }
}

std::vector<double> LimitFieldSampler::sample(RngStream& stream) const {
  std::vector<double> out;
  std::vector<double> buf;
  sample(stream, out, buf);
  return out;
}

std::vector<double> limit_field_path(const CuspParams& p, const std::vector<double>& u_grid,
                                     double y_span, std::size_t n_y, RngStream& stream) {
  return LimitFieldSampler(p, u_grid, y_span, n_y).sample(stream);
}

}  // namespace cusplim
