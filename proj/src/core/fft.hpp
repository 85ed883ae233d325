#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cusplim {

// Iterative radix-2 FFT on power-of-two sizes with a precomputed twiddle
// table. forward() uses the e^{-2pi i jk/n} kernel, inverse_unnormalized()
// the e^{+2pi i jk/n} kernel without the 1/n factor.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::span<std::complex<double>> data) const;
  void inverse_unnormalized(std::span<std::complex<double>> data) const;

 private:
  void transform(std::span<std::complex<double>> data, bool conj_twiddles) const;

  std::size_t n_ = 0;
  std::vector<std::complex<double>> twiddle_;  // e^{-2pi i k/n}, k < n/2
};

bool is_power_of_two(std::size_t n);

// Forward transform of a real vector; returns the n/2+1 nonredundant bins.
std::vector<std::complex<double>> real_fft(std::span<const double> x);

// Synthesis y_j = sum_k S_k e^{+2pi i jk/n} of a Hermitian spectrum given by
// its n/2+1 nonredundant bins, via one complex FFT of size n/2.
std::vector<double> hermitian_synthesis(std::span<const std::complex<double>> half_spectrum,
                                        std::size_t n);

// Forward-then-inverse identity check contract: returns the roundtrip of x.
std::vector<double> real_fft_roundtrip(std::span<const double> x);

}  // namespace cusplim
