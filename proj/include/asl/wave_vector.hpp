#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace asl {

/// Integer lattice point in Z^d, d in {2,3}. For d == 2 the third entry is 0.
struct WaveVector {
  int d = 3;
  std::array<int, 3> c{0, 0, 0};

  WaveVector() = default;
  WaveVector(int k1, int k2) : d(2), c{k1, k2, 0} {}
  WaveVector(int k1, int k2, int k3) : d(3), c{k1, k2, k3} {}

  int operator[](int i) const { return c[i]; }
  int last() const { return c[d - 1]; }

  std::int64_t squared_norm() const {
    std::int64_t s = 0;
    for (int i = 0; i < d; ++i) s += std::int64_t(c[i]) * c[i];
    return s;
  }
  double norm() const { return std::sqrt(double(squared_norm())); }
  int inf_norm() const {
    int m = 0;
    for (int i = 0; i < d; ++i) m = std::max(m, std::abs(c[i]));
    return m;
  }
  bool is_zero() const { return squared_norm() == 0; }

  WaveVector operator-() const {
    WaveVector r = *this;
    for (int i = 0; i < d; ++i) r.c[i] = -r.c[i];
    return r;
  }
  bool operator==(const WaveVector&) const = default;
};

/// (b_1,..,b_{d-1}) stacked with a last component k_d.
inline WaveVector stacked(const std::array<int, 2>& b, int kd, int d) {
  return d == 2 ? WaveVector(b[0], kd) : WaveVector(b[0], b[1], kd);
}

}  // namespace asl
