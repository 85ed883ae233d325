#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace cusplim {

// One deterministic stream of standard normals per (master_seed, stream_index).
// The engine seed is a 128-bit splitmix64 mix of both inputs, so streams are
// reproducible independently of thread count or creation order.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  // Uniform on (0,1]; never returns 0, so log() is safe.
  double uniform01();

  // Standard normal via Box-Muller on uniform01 pairs (implementation pinned
  // for cross-platform bit reproducibility; std::normal_distribution is not).
  double normal();

  void normals(std::span<double> out);
  std::vector<double> normals(std::size_t n);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::uint64_t master_seed_ = 0;
  std::uint64_t stream_index_ = 0;
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::vector<double> gaussian_block(RngStream& stream, std::size_t n);

}  // namespace cusplim
