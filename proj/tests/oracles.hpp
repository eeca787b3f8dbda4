#pragma once

// Brute-force reference computations that share no code with the library's
// evaluators: f(x) is recomputed from the coefficient tables and every power
// of w comes from std::polar.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "qes/polynomial.hpp"

namespace oracle {

using Complex = std::complex<double>;

// x_i = -1 when bit i of y is set.
inline int spin(std::uint64_t y, int i) { return (y >> i) & 1U ? -1 : 1; }

inline long long value(const qes::QuadPoly& f, std::uint64_t y) {
  long long v = 0;
  for (const auto& [ij, a] : f.quadratic_terms()) v += static_cast<long long>(a) * spin(y, ij.first) * spin(y, ij.second);
  for (int i = 0; i < f.n(); ++i) v += static_cast<long long>(f.linear_terms()[static_cast<std::size_t>(i)]) * spin(y, i);
  return v;
}

inline Complex omega_pow(int m, long long e) { return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / m); }

// 2^-n sum_y w^f(y) prod_{i in S} y_i
inline Complex coefficient(const qes::QuadPoly& f, std::uint64_t subset) {
  Complex acc{0.0, 0.0};
  const std::uint64_t points = std::uint64_t{1} << f.n();
  for (std::uint64_t y = 0; y < points; ++y) {
    int sign = 1;
    for (int i = 0; i < f.n(); ++i) {
      if ((subset >> i) & 1U) sign *= spin(y, i);
    }
    acc += static_cast<double>(sign) * omega_pow(f.m(), value(f, y));
  }
  return acc / static_cast<double>(points);
}

inline Complex normalized_sum(const qes::QuadPoly& f) { return coefficient(f, (std::uint64_t{1} << f.n()) - 1); }

inline double half_q(int m) { return std::cos(std::numbers::pi / (2.0 * m)); }

inline qes::QuadPoly random_poly(int n, int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(0, m - 1);
  qes::QuadPoly f(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) f.set_quadratic(i, j, coeff(rng));
    f.set_linear(i, coeff(rng));
  }
  return f;
}

// Random labelled tree (or forest when p < 1) with nonzero weights.
inline qes::QuadPoly random_forest(int n, int m, double p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> weight(1, m - 1);
  std::uniform_int_distribution<int> coeff(0, m - 1);
  std::bernoulli_distribution join(p);
  qes::QuadPoly f(n, m);
  for (int v = 1; v < n; ++v) {
    if (join(rng)) f.set_quadratic(std::uniform_int_distribution<int>(0, v - 1)(rng), v, weight(rng));
  }
  for (int i = 0; i < n; ++i) f.set_linear(i, coeff(rng));
  return f;
}

inline int random_odd(std::mt19937_64& rng, int lo, int hi) {
  return lo + 2 * std::uniform_int_distribution<int>(0, (hi - lo) / 2)(rng);
}

}  // namespace oracle
