#pragma once

#include <complex>
#include <vector>

#include "json.hpp"
#include "qes/cyclotomic.hpp"
#include "qes/polynomial.hpp"

namespace qes {

/// w - w^2 = i sqrt(3) in Z[w], w = e^(2 pi i / 3).
CycInt i_sqrt3();

/// Legendre symbol (y | 3).
int legendre3(int y);

/// Checks (y|3) (w - w^2) == w^y - w^-y exactly for y in {-1, 0, 1}.
bool legendre_identity_check();

/// sum_{x in {-1,1}^n} w^f(x), without the parity factor.
CycInt complete_sum(const QuadPoly& f);

struct DecompositionTerm {
  QuadPoly poly;
  int sign;  ///< +1 or -1
};

/// x_1...x_n written as a product of Legendre factors over the pairs
/// (sigma[0], sigma[1]), (sigma[2], sigma[3]), ...; for odd n the last factor
/// is x_{sigma[n-1]} alone. Expanding gives one term f + sum_j eps_j (pair j)
/// per sign choice eps, with sign prod eps_j, so that
///   S~(f) (i sqrt 3)^factors = sum_terms sign complete_sum(term).
struct Decomposition {
  std::vector<int> sigma;  ///< 0-based permutation
  int factors = 0;         ///< ceil(n/2)
  std::vector<DecompositionTerm> terms;
  std::complex<double> scale;  ///< (i sqrt 3)^-factors

  /// scale * 2^-n * sum sign complete_sum(term), which equals S(f).
  std::complex<double> recombine() const;
};

/// Throws std::invalid_argument unless f.m() == 3 and sigma permutes [0, n).
Decomposition decompose_m3(const QuadPoly& f, const std::vector<int>& sigma);
Decomposition decompose_m3(const QuadPoly& f);  ///< identity sigma

/// S~(f) (w - w^2)^factors == sum sign complete_sum(term), checked in Z[w].
bool recombination_exact(const QuadPoly& f, const Decomposition& d);
/// |recombine() - S(f)|.
double recombination_error(const QuadPoly& f, const Decomposition& d);

/// Whether the quadratic part of h is a nonsingular form mod 3: the matrix
/// with entries a_ij / 2 = 2 a_ij off the diagonal and 0 on it has nonzero
/// determinant over GF(3). Linear terms are ignored.
bool is_nonsingular_mod3(const QuadPoly& h);

/// Determinant over GF(3) of the matrix above, in {0, 1, 2}.
int quadratic_form_det_mod3(const QuadPoly& h);

struct TheoremACheck {
  bool applicable = false;  ///< every term is nonsingular mod 3
  bool holds = false;       ///< |S| <= bound + 1e-9 (meaningful when applicable)
  double norm = 0.0;
  double bound = 0.0;       ///< (sqrt(3)/2)^floor(n/2)
};

/// Even n only; throws std::invalid_argument for odd n or m != 3.
TheoremACheck verify_theorem_a(const QuadPoly& f, const std::vector<int>& sigma);
/// Odd n counterpart with exponent floor(n/2).
TheoremACheck verify_theorem_a_odd(const QuadPoly& f, const std::vector<int>& sigma);

inline constexpr int kMaxPairingVariables = 10;

/// One sigma per pairing of [0, n): (n-1)!! for even n; for odd n each choice
/// of the lone last variable times the pairings of the rest.
std::vector<std::vector<int>> all_pairings(int n);

/// sigma as a 1-based array, terms as polynomial objects with a "sign" field.
nlohmann::json to_json(const Decomposition& d);

}  // namespace qes
