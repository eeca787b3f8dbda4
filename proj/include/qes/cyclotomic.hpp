#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qes {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Throws std::invalid_argument unless m is odd and at least 3.
void require_odd_modulus(int m);

/// Exact element of Z[w], w = exp(2 pi i / m), stored as a coefficient vector
/// in Z[x]/(x^m - 1). Coefficient j multiplies w^j.
///
/// The representation is not unique: 1 + w + ... + w^(m-1) is zero but has a
/// nonzero vector. operator== compares representations; same_value() compares
/// the complex numbers.
class CycInt {
 public:
  /// The zero element.
  explicit CycInt(int modulus);
  CycInt(int modulus, std::vector<BigInt> coeffs);
  CycInt(int modulus, std::span<const std::int64_t> coeffs);

  /// coeff * w^exponent; the exponent is reduced mod m (negative allowed).
  static CycInt monomial(int modulus, std::int64_t exponent, const BigInt& coeff = 1);

  int modulus() const noexcept { return modulus_; }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  const BigInt& operator[](int j) const { return coeffs_[static_cast<std::size_t>(j)]; }

  CycInt& operator+=(const CycInt& other);
  CycInt& operator-=(const CycInt& other);
  CycInt& operator*=(const CycInt& other);
  CycInt& operator*=(const BigInt& scalar);

  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  friend CycInt operator*(CycInt a, const BigInt& s) { return a *= s; }
  CycInt operator-() const;

  /// Complex conjugate: w^j -> w^(m-j).
  CycInt conj() const;

  /// True iff the element is the complex number 0 (reduction mod Phi_m).
  bool is_zero() const;

  /// If the element is a rational integer, returns it.
  std::optional<BigInt> as_integer() const;

  /// Complex embedding, summed from index 0 to m-1.
  std::complex<double> value() const;
  double abs() const { return std::abs(value()); }

  bool operator==(const CycInt& other) const = default;

 private:
  void check_same_modulus(const CycInt& other) const;

  int modulus_;
  std::vector<BigInt> coeffs_;
};

enum class CycOp { add, sub, mul, conj };

/// Single entry point for ring arithmetic; `b` is ignored for conj.
CycInt cyc_arith(const CycInt& a, const CycInt& b, CycOp op);
inline bool cyc_is_zero(const CycInt& a) { return a.is_zero(); }
inline double cyc_abs(const CycInt& a) { return a.abs(); }
inline bool same_value(const CycInt& a, const CycInt& b) { return (a - b).is_zero(); }

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
/// Built as (x^m - 1) / prod_{d | m, d < m} Phi_d.
std::vector<BigInt> cyclotomic_polynomial(int m);

/// Remainder of `poly` modulo the monic polynomial `divisor` (both lowest degree
/// first). The result has size divisor.size() - 1.
std::vector<BigInt> poly_remainder(std::vector<BigInt> poly, const std::vector<BigInt>& divisor);

/// exp(2 pi i k / m) with k reduced mod m first.
std::complex<double> root_of_unity(int m, std::int64_t k);

struct RootParams {
  int m;
  int c;     ///< floor((m+1)/4), maximizes |w^y - w^-y|
  double q;  ///< 2 cos(pi / 2m), the maximum of |w^y - w^-y|
  double r;  ///< 2 cos(3 pi / 2m), second largest |w^y - w^-y|
  double s;  ///< 2 cos(pi / m), second largest |w^y + w^-y|
};

RootParams root_params(int m);

/// The 2-normalized Chebyshev polynomial Q_k, with Q_k(2 cos t) = 2 cos(k t).
struct ChebSeq {
  int degree;
  std::vector<std::int64_t> coeffs;  ///< lowest degree first

  double operator()(double x) const;
};

/// Q_0 = 2, Q_1 = x, Q_{k+1} = x Q_k - Q_{k-1}. Valid for 0 <= k <= 64.
ChebSeq chebyshev_seq(int k);

/// Q_k(x) evaluated through the three-term recurrence.
double chebyshev_q(int k, double x);

}  // namespace qes
