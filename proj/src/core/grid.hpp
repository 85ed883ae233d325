#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace cusplim {

// Symmetric grid u_j = j*T/m for j = -m..m (2m+1 nodes, u_0 = 0).
struct GridSpec {
  std::size_t m = 0;
  double span = 0.0;  // T

  GridSpec() = default;
  GridSpec(std::size_t m_, double span_) : m(m_), span(span_) {
    if (m == 0) throw ConfigError("grid requires m >= 1");
    if (!(span > 0.0)) throw ConfigError("grid requires span > 0");
  }

  double delta() const { return span / static_cast<double>(m); }
  std::size_t node_count() const { return 2 * m + 1; }
  double node(std::size_t i) const {
    return (static_cast<double>(i) - static_cast<double>(m)) * delta();
  }
  std::vector<double> nodes() const {
    std::vector<double> u(node_count());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = node(i);
    return u;
  }
};

struct FbmGrid {
  GridSpec spec;
  double hurst = 0.0;
  std::vector<double> values;  // W at u_{-m}..u_m
};

}  // namespace cusplim
