#pragma once

namespace cusplim {

inline constexpr double kZeta3 = 1.2020569031595943;
inline constexpr double kPi = 3.141592653589793;
inline constexpr double kSqrt2 = 1.4142135623730951;

double std_normal_cdf(double t);
double std_normal_pdf(double t);

// Scaled complementary error function e^{z^2} erfc(z) for z >= 0,
// overflow-free for large z.
double erfcx_positive(double z);

// Inverse standard normal CDF (Wichura's AS241 rational approximation).
double std_normal_quantile(double p);

double gamma_fn(double x);

}  // namespace cusplim
