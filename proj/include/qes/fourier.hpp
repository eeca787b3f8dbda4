#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <vector>

#include "qes/polynomial.hpp"

namespace qes {

using Complex = std::complex<double>;

/// lambda(a) = (w^a - w^-a) / 2, the odd edge factor.
Complex lambda_factor(int m, std::int64_t a);
/// mu(a) = (w^a + w^-a) / 2, the even edge factor.
Complex mu_factor(int m, std::int64_t a);

/// Fourier coefficients of w^f on {-1,1}^n, normalized by 2^-n:
///   c_S = 2^-n sum_y w^f(y) prod_{i in S} y_i.
/// Subsets are bitmasks with variable i (0-based) on bit i, so c_{[n]} = S(f).
struct Spectrum {
  int n = 0;
  int m = 0;
  std::vector<Complex> table;

  const Complex& operator[](std::uint64_t subset) const { return table[subset]; }
  std::uint64_t full_set() const { return (std::uint64_t{1} << n) - 1; }
  double max_abs() const;
  double parseval_sum() const;

  /// CSV with header "mask,re,im,abs"; one row per subset in mask order.
  void write_csv(std::ostream& out) const;
};

inline constexpr int kMaxNaiveSpectrumVariables = 16;
inline constexpr int kMaxFwhtVariables = 26;

/// O(4^n) direct evaluation of every coefficient.
Spectrum spectrum_naive(const QuadPoly& f);

/// Walsh-Hadamard butterflies over the 2^n values of w^f, n 2^n operations.
Spectrum spectrum_fwht(const QuadPoly& f);

/// One coefficient of a forest polynomial by leaf stripping, O(n) per subset.
/// Each vertex v carries a factor alpha_v + beta_v x_v, initially
/// mu(b_v) + lambda(b_v) x_v. Removing a leaf j hanging off i through weight a
/// keeps the part of (mu(a) + lambda(a) x_i x_j)(alpha_j + beta_j x_j) with
/// the x_j-parity S demands, and multiplies it into i's factor:
///   j not in S:  mu(a) alpha_j + lambda(a) beta_j x_i
///   j in S:      mu(a) beta_j  + lambda(a) alpha_j x_i
/// A stripped tree leaves its root factor, read at the root's parity; trees multiply.
/// Throws std::invalid_argument if G(f) has a cycle.
Complex coeff_tree(const QuadPoly& f, std::uint64_t subset);

/// All coefficients through coeff_tree.
Spectrum spectrum_tree(const QuadPoly& f);

struct ForestCertificate {
  int k = 0;               ///< forest_distance(G(f))
  double threshold = 0.0;  ///< (n-2) log2(2/q)
  bool applicable = false;
  double bound = 0.0;      ///< 2^(k/2) (q/2)^(n-1)
  double conjectured = 0.0;  ///< (q/2)^floor((n+1)/2)
  /// The value |S(f)| is certified not to exceed: max(bound, conjectured).
  double certified() const { return bound > conjectured ? bound : conjectured; }
};

ForestCertificate forest_bound_certificate(const QuadPoly& f);

}  // namespace qes
