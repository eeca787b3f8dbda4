#include "qes/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qes {

void require_odd_modulus(int m) {
  if (m < 3 || m % 2 == 0) {
    throw std::invalid_argument("modulus must be odd and >= 3, got " + std::to_string(m));
  }
}

namespace {

std::size_t reduce_exponent(std::int64_t k, int m) {
  auto r = k % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}

// Exact division of `num` by the monic `den`, both lowest degree first.
std::vector<BigInt> poly_divide_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<BigInt> quot(num.size() - dn);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const BigInt lead = num[k + dn];
    quot[k] = lead;
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[k + j] -= lead * den[j];
  }
  for (std::size_t j = 0; j < dn; ++j) {
    if (num[j] != 0) throw std::logic_error("cyclotomic division left a remainder");
  }
  return quot;
}

std::vector<BigInt> compute_cyclotomic(int m) {
  std::vector<BigInt> poly(static_cast<std::size_t>(m) + 1);
  poly[0] = -1;
  poly[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) poly = poly_divide_exact(std::move(poly), cyclotomic_polynomial(d));
  }
  return poly;
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(int m) {
  if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: m must be positive");
  static std::mutex mutex;
  static std::map<int, std::vector<BigInt>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  auto poly = compute_cyclotomic(m);
  std::lock_guard lock(mutex);
  return cache.emplace(m, std::move(poly)).first->second;
}

std::vector<BigInt> poly_remainder(std::vector<BigInt> poly, const std::vector<BigInt>& divisor) {
  const std::size_t dn = divisor.size() - 1;
  if (divisor.back() != 1) throw std::invalid_argument("poly_remainder: divisor must be monic");
  for (std::size_t k = poly.size(); k-- > dn;) {
    const BigInt lead = poly[k];
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) poly[k - dn + j] -= lead * divisor[j];
  }
  poly.resize(dn);
  return poly;
}

std::complex<double> root_of_unity(int m, std::int64_t k) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(reduce_exponent(k, m)) / m;
  return {std::cos(angle), std::sin(angle)};
}

CycInt::CycInt(int modulus) : modulus_(modulus) {
  require_odd_modulus(modulus);
  coeffs_.resize(static_cast<std::size_t>(modulus));
}

CycInt::CycInt(int modulus, std::vector<BigInt> coeffs) : modulus_(modulus), coeffs_(std::move(coeffs)) {
  require_odd_modulus(modulus);
  if (coeffs_.size() != static_cast<std::size_t>(modulus)) {
    throw std::invalid_argument("CycInt: coefficient vector length must equal the modulus");
  }
}

CycInt::CycInt(int modulus, std::span<const std::int64_t> coeffs)
    : CycInt(modulus, std::vector<BigInt>(coeffs.begin(), coeffs.end())) {}

CycInt CycInt::monomial(int modulus, std::int64_t exponent, const BigInt& coeff) {
  CycInt out(modulus);
  out.coeffs_[reduce_exponent(exponent, modulus)] = coeff;
  return out;
}

void CycInt::check_same_modulus(const CycInt& other) const {
  if (modulus_ != other.modulus_) {
    throw std::invalid_argument("CycInt modulus mismatch: " + std::to_string(modulus_) + " vs " +
                                std::to_string(other.modulus_));
  }
}

CycInt& CycInt::operator+=(const CycInt& other) {
  check_same_modulus(other);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& other) {
  check_same_modulus(other);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  return *this;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
  a.check_same_modulus(b);
  const auto m = static_cast<std::size_t>(a.modulus_);
  CycInt out(a.modulus_);
  for (std::size_t i = 0; i < m; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (b.coeffs_[j] == 0) continue;
      const std::size_t k = i + j < m ? i + j : i + j - m;
      out.coeffs_[k] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

CycInt& CycInt::operator*=(const CycInt& other) { return *this = *this * other; }

CycInt& CycInt::operator*=(const BigInt& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

CycInt CycInt::operator-() const {
  CycInt out(*this);
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

CycInt CycInt::conj() const {
  CycInt out(modulus_);
  const auto m = coeffs_.size();
  out.coeffs_[0] = coeffs_[0];
  for (std::size_t j = 1; j < m; ++j) out.coeffs_[m - j] = coeffs_[j];
  return out;
}

bool CycInt::is_zero() const {
  const auto rem = poly_remainder(coeffs_, cyclotomic_polynomial(modulus_));
  for (const auto& c : rem) {
    if (c != 0) return false;
  }
  return true;
}

std::optional<BigInt> CycInt::as_integer() const {
  const auto rem = poly_remainder(coeffs_, cyclotomic_polynomial(modulus_));
  for (std::size_t j = 1; j < rem.size(); ++j) {
    if (rem[j] != 0) return std::nullopt;
  }
  return rem.empty() ? BigInt(0) : rem[0];
}

std::complex<double> CycInt::value() const {
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    sum += coeffs_[j].convert_to<double>() * root_of_unity(modulus_, static_cast<std::int64_t>(j));
  }
  return sum;
}

CycInt cyc_arith(const CycInt& a, const CycInt& b, CycOp op) {
  switch (op) {
    case CycOp::add:
      return a + b;
    case CycOp::sub:
      return a - b;
    case CycOp::mul:
      return a * b;
    case CycOp::conj:
      return a.conj();
  }
  throw std::invalid_argument("cyc_arith: unknown operation");
}

RootParams root_params(int m) {
  require_odd_modulus(m);
  const double pi = std::numbers::pi;
  return RootParams{
      .m = m,
      .c = (m + 1) / 4,
      .q = 2.0 * std::cos(pi / (2.0 * m)),
      .r = 2.0 * std::cos(3.0 * pi / (2.0 * m)),
      .s = 2.0 * std::cos(pi / m),
  };
}

double ChebSeq::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + static_cast<double>(*it);
  return acc;
}

ChebSeq chebyshev_seq(int k) {
  if (k < 0 || k > 64) throw std::invalid_argument("chebyshev_seq: degree must be in [0, 64]");
  std::vector<std::int64_t> prev{2};
  if (k == 0) return {0, prev};
  std::vector<std::int64_t> cur{0, 1};
  for (int d = 1; d < k; ++d) {
    std::vector<std::int64_t> next(cur.size() + 1, 0);
    for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += cur[j];
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {k, cur};
}

double chebyshev_q(int k, double x) {
  if (k < 0) throw std::invalid_argument("chebyshev_q: negative degree");
  if (k == 0) return 2.0;
  double prev = 2.0;
  double cur = x;
  for (int d = 1; d < k; ++d) {
    const double next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace qes
