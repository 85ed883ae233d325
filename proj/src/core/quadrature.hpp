#pragma once

#include <functional>

namespace cusplim {

// Double-exponential quadrature with level doubling until the change between
// successive levels is below abs_tol (QuadratureFailure otherwise). Endpoint
// singularities integrable in the |x|^p, p > -1 sense are handled.
//
// tanh_sinh integrates over (a, b). The integrand is called as f(x, dist)
// where dist is the distance to the nearer endpoint, computed in a
// cancellation-free way for use right at singular endpoints.
double tanh_sinh(const std::function<double(double, double)>& f, double a, double b,
                 double abs_tol);

// exp_sinh integrates over (a, +inf) for integrands with algebraic decay.
// The integrand is called as f(x, dist) with dist = x - a.
double exp_sinh(const std::function<double(double, double)>& f, double a, double abs_tol);

}  // namespace cusplim
