#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rotinv {

/// Exponent pair (m1, m2) of the normal-ordered monomial U^m1 V^m2.
using Index2 = std::array<int, 2>;

/// Exponents (a, b, c, d) of the normal-ordered monomial U_l^a V_l^b U_r^c V_r^d.
using Index4 = std::array<int, 4>;

template <std::size_t N>
std::array<int, N> operator+(const std::array<int, N>& x, const std::array<int, N>& y) {
  std::array<int, N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = x[i] + y[i];
  return r;
}

template <std::size_t N>
std::array<int, N> operator-(const std::array<int, N>& x, const std::array<int, N>& y) {
  std::array<int, N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = x[i] - y[i];
  return r;
}

template <std::size_t N>
std::array<int, N> operator-(const std::array<int, N>& x) {
  std::array<int, N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = -x[i];
  return r;
}

template <std::size_t N>
int l1_norm(const std::array<int, N>& x) {
  int s = 0;
  for (int v : x) s += v < 0 ? -v : v;
  return s;
}

template <std::size_t N>
int linf_norm(const std::array<int, N>& x) {
  int s = 0;
  for (int v : x) s = std::max(s, v < 0 ? -v : v);
  return s;
}

struct IndexHash {
  template <std::size_t N>
  std::size_t operator()(const std::array<int, N>& x) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : x) {
      h ^= static_cast<std::uint32_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Closed integer rectangle [lo, hi] in Z^2.
struct Box2 {
  Index2 lo{0, 0};
  Index2 hi{0, 0};

  static Box2 centered(int radius, Index2 center = {0, 0}) {
    return {{center[0] - radius, center[1] - radius}, {center[0] + radius, center[1] + radius}};
  }

  bool contains(const Index2& x) const {
    return x[0] >= lo[0] && x[0] <= hi[0] && x[1] >= lo[1] && x[1] <= hi[1];
  }
  bool on_boundary(const Index2& x) const {
    return contains(x) && (x[0] == lo[0] || x[0] == hi[0] || x[1] == lo[1] || x[1] == hi[1]);
  }
  bool empty() const { return lo[0] > hi[0] || lo[1] > hi[1]; }

  /// Lexicographic enumeration.
  std::vector<Index2> points() const {
    std::vector<Index2> out;
    for (int i = lo[0]; i <= hi[0]; ++i)
      for (int j = lo[1]; j <= hi[1]; ++j) out.push_back({i, j});
    return out;
  }
};

/// All x in Z^4 with |x|_1 <= radius, in lexicographic order.
std::vector<Index4> l1_ball4(int radius);

/// All x in Z^2 with |x|_1 <= radius, in lexicographic order.
std::vector<Index2> l1_ball2(int radius);

std::string to_string(const Index2& x);
std::string to_string(const Index4& x);

}  // namespace rotinv
