#include "rng.hpp"

#include <cmath>
#include <numbers>

namespace cusplim {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
  std::uint64_t s = master_seed;
  const std::uint64_t w0 = splitmix64(s);
  s ^= splitmix64(stream_index);
  const std::uint64_t w1 = splitmix64(s);
  const std::uint64_t w2 = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(w0), static_cast<std::uint32_t>(w0 >> 32),
                    static_cast<std::uint32_t>(w1), static_cast<std::uint32_t>(w1 >> 32),
                    static_cast<std::uint32_t>(w2), static_cast<std::uint32_t>(w2 >> 32)};
  eng_.seed(seq);
}

double RngStream::uniform01() {
  return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform01()));
  const double t = 2.0 * std::numbers::pi * uniform01();
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

void RngStream::normals(std::span<double> out) {
  for (double& x : out) x = normal();
}

std::vector<double> RngStream::normals(std::size_t n) {
  std::vector<double> out(n);
  normals(std::span<double>(out));
  return out;
}

std::vector<double> gaussian_block(RngStream& stream, std::size_t n) {
  return stream.normals(n);
}

}  // namespace cusplim
