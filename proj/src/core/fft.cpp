#include "fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "errors.hpp"

namespace cusplim {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Fft::Fft(std::size_t n) : n_(n) {
  if (!is_power_of_two(n)) throw ConfigError("fft size must be a power of two");
  twiddle_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    twiddle_[k] = std::complex<double>(std::cos(ang), std::sin(ang));
  }
}

void Fft::transform(std::span<std::complex<double>> data, bool conj_twiddles) const {
  if (data.size() != n_) throw ConfigError("fft buffer size mismatch");
  if (n_ < 2) return;

  for (std::size_t i = 1, j = 0; i < n_; ++i) {
    std::size_t bit = n_ >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j |= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n_ / len;
    for (std::size_t i = 0; i < n_; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        std::complex<double> w = twiddle_[j * step];
        if (conj_twiddles) w = std::conj(w);
        const std::complex<double> u = data[i + j];
        const std::complex<double> v = data[i + j + half] * w;
        data[i + j] = u + v;
        data[i + j + half] = u - v;
      }
    }
  }
}

void Fft::forward(std::span<std::complex<double>> data) const { transform(data, false); }

void Fft::inverse_unnormalized(std::span<std::complex<double>> data) const {
  transform(data, true);
}

std::vector<std::complex<double>> real_fft(std::span<const double> x) {
  const std::size_t n = x.size();
  if (!is_power_of_two(n)) throw ConfigError("real_fft length must be a power of two");
  std::vector<std::complex<double>> buf(x.begin(), x.end());
  Fft(n).forward(buf);
  buf.resize(n / 2 + 1);
  return buf;
}

std::vector<double> hermitian_synthesis(std::span<const std::complex<double>> half_spectrum,
                                        std::size_t n) {
  if (!is_power_of_two(n)) throw ConfigError("synthesis length must be a power of two");
  if (half_spectrum.size() != n / 2 + 1) throw ConfigError("half spectrum size mismatch");
  if (n == 1) return {half_spectrum[0].real()};

  // Fold the Hermitian spectrum into one complex transform of half size:
  // with Sh_k = conj(S_{n/2-k}) standing in for S_{k+n/2},
  //   A_k = S_k + Sh_k,  B_k = (S_k - Sh_k) e^{+2pi i k/n},  Z_k = A_k + i B_k,
  // the size-n/2 unnormalized inverse of Z interleaves the even/odd outputs.
  const std::size_t half = n / 2;
  std::vector<std::complex<double>> z(half);
  for (std::size_t k = 0; k < half; ++k) {
    const std::complex<double> sk = half_spectrum[k];
    const std::complex<double> sh = std::conj(half_spectrum[half - k]);
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    const std::complex<double> rot(std::cos(ang), std::sin(ang));
    const std::complex<double> a = sk + sh;
    const std::complex<double> b = (sk - sh) * rot;
    z[k] = a + std::complex<double>(-b.imag(), b.real());
  }
  Fft(half).inverse_unnormalized(z);

  std::vector<double> y(n);
  for (std::size_t l = 0; l < half; ++l) {
    y[2 * l] = z[l].real();
    y[2 * l + 1] = z[l].imag();
  }
  return y;
}

std::vector<double> real_fft_roundtrip(std::span<const double> x) {
  const std::size_t n = x.size();
  auto spectrum = real_fft(x);
  auto y = hermitian_synthesis(spectrum, n);
  const double inv = 1.0 / static_cast<double>(n);
  for (double& v : y) v *= inv;
  return y;
}

}  // namespace cusplim
