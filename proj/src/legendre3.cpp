#include "qes/legendre3.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "qes/sum_engine.hpp"

namespace qes {

CycInt i_sqrt3() { return CycInt::monomial(3, 1) - CycInt::monomial(3, 2); }

int legendre3(int y) {
  const int r = ((y % 3) + 3) % 3;
  return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

bool legendre_identity_check() {
  const CycInt root3 = i_sqrt3();
  for (int y = -1; y <= 1; ++y) {
    const CycInt lhs = root3 * BigInt(legendre3(y));
    const CycInt rhs = CycInt::monomial(3, y) - CycInt::monomial(3, -y);
    if (!same_value(lhs, rhs)) return false;
  }
  return true;
}

CycInt complete_sum(const QuadPoly& f) {
  if (f.n() > kMaxEvalVariables) throw GuardError("complete_sum: n too large");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(f.m()), 0);
  const std::uint64_t points = std::uint64_t{1} << f.n();
  for (std::uint64_t y = 0; y < points; ++y) ++counts[static_cast<std::size_t>(f.evaluate(y))];
  return CycInt(f.m(), std::span<const std::int64_t>(counts));
}

std::complex<double> Decomposition::recombine() const {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& t : terms) acc += static_cast<double>(t.sign) * complete_sum(t.poly).value();
  const int n = terms.empty() ? 0 : terms.front().poly.n();
  return acc * scale * std::ldexp(1.0, -n);
}

namespace {

void check_sigma(int n, const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != n) throw std::invalid_argument("sigma must have n entries");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("sigma is not a permutation of the variables");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

std::vector<int> identity(int n) {
  std::vector<int> sigma(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = i;
  return sigma;
}

}  // namespace

Decomposition decompose_m3(const QuadPoly& f, const std::vector<int>& sigma) {
  if (f.m() != 3) throw std::invalid_argument("decompose_m3 requires m = 3, got " + std::to_string(f.m()));
  const int n = f.n();
  check_sigma(n, sigma);

  Decomposition d;
  d.sigma = sigma;
  d.factors = (n + 1) / 2;
  d.scale = std::pow(std::complex<double>(0.0, std::sqrt(3.0)), -d.factors);
  const int pairs = n / 2;
  for (std::uint32_t mask = 0; mask < (1U << d.factors); ++mask) {
    QuadPoly g = f;
    int sign = 1;
    for (int j = 0; j < d.factors; ++j) {
      const int eps = (mask >> j) & 1U ? -1 : 1;
      sign *= eps;
      if (j < pairs) {
        const int u = sigma[static_cast<std::size_t>(2 * j)];
        const int v = sigma[static_cast<std::size_t>(2 * j + 1)];
        g.set_quadratic(u, v, g.quadratic(u, v) + eps);
      } else {
        const int u = sigma[static_cast<std::size_t>(n - 1)];
        g.set_linear(u, g.linear(u) + eps);
      }
    }
    d.terms.push_back({std::move(g), sign});
  }
  return d;
}

Decomposition decompose_m3(const QuadPoly& f) { return decompose_m3(f, identity(f.n())); }

bool recombination_exact(const QuadPoly& f, const Decomposition& d) {
  CycInt lhs = eval_gray(f).unnormalized;
  const CycInt root3 = i_sqrt3();
  for (int k = 0; k < d.factors; ++k) lhs *= root3;
  CycInt rhs(3);
  for (const auto& t : d.terms) {
    if (t.sign > 0) {
      rhs += complete_sum(t.poly);
    } else {
      rhs -= complete_sum(t.poly);
    }
  }
  return same_value(lhs, rhs);
}

double recombination_error(const QuadPoly& f, const Decomposition& d) {
  return std::abs(d.recombine() - eval_gray(f).normalized());
}

int quadratic_form_det_mod3(const QuadPoly& h) {
  if (h.m() != 3) throw std::invalid_argument("quadratic_form_det_mod3 requires m = 3");
  const auto n = static_cast<std::size_t>(h.n());
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (const auto& [ij, coeff] : h.quadratic_terms()) {
    const int half = (2 * coeff) % 3;
    a[ij.first][ij.second] = half;
    a[ij.second][ij.first] = half;
  }
  int det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = 3 - det;
    }
    det = det * a[col][col] % 3;
    const int inv = a[col][col];  // x^-1 = x in GF(3)
    for (std::size_t row = col + 1; row < n; ++row) {
      const int factor = a[row][col] * inv % 3;
      if (factor == 0) continue;
      for (std::size_t k = col; k < n; ++k) a[row][k] = ((a[row][k] - factor * a[col][k]) % 3 + 3) % 3;
    }
  }
  return det % 3;
}

bool is_nonsingular_mod3(const QuadPoly& h) { return quadratic_form_det_mod3(h) != 0; }

namespace {

TheoremACheck theorem_a(const QuadPoly& f, const std::vector<int>& sigma) {
  TheoremACheck check;
  const auto d = decompose_m3(f, sigma);
  check.applicable = std::all_of(d.terms.begin(), d.terms.end(),
                                 [](const DecompositionTerm& t) { return is_nonsingular_mod3(t.poly); });
  check.norm = eval_gray(f).norm;
  check.bound = std::pow(std::sqrt(3.0) / 2.0, f.n() / 2);
  check.holds = check.norm <= check.bound + 1e-9;
  return check;
}

}  // namespace

TheoremACheck verify_theorem_a(const QuadPoly& f, const std::vector<int>& sigma) {
  if (f.n() % 2 != 0) throw std::invalid_argument("verify_theorem_a needs even n; use verify_theorem_a_odd");
  return theorem_a(f, sigma);
}

TheoremACheck verify_theorem_a_odd(const QuadPoly& f, const std::vector<int>& sigma) {
  if (f.n() % 2 == 0) throw std::invalid_argument("verify_theorem_a_odd needs odd n");
  return theorem_a(f, sigma);
}

std::vector<std::vector<int>> all_pairings(int n) {
  if (n < 1 || n > kMaxPairingVariables) {
    throw std::invalid_argument("all_pairings: n must be in [1, " + std::to_string(kMaxPairingVariables) + "]");
  }
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  std::function<void(std::vector<int>, int)> rec = [&](std::vector<int> rest, int lone) {
    if (rest.empty()) {
      auto sigma = prefix;
      if (lone >= 0) sigma.push_back(lone);
      out.push_back(std::move(sigma));
      return;
    }
    for (std::size_t k = 1; k < rest.size(); ++k) {
      std::vector<int> next;
      for (std::size_t t = 1; t < rest.size(); ++t) {
        if (t != k) next.push_back(rest[t]);
      }
      prefix.push_back(rest.front());
      prefix.push_back(rest[k]);
      rec(std::move(next), lone);
      prefix.resize(prefix.size() - 2);
    }
  };
  if (n % 2 == 0) {
    rec(identity(n), -1);
  } else {
    for (int lone = 0; lone < n; ++lone) {
      std::vector<int> rest;
      for (int i = 0; i < n; ++i) {
        if (i != lone) rest.push_back(i);
      }
      rec(std::move(rest), lone);
    }
  }
  return out;
}

nlohmann::json to_json(const Decomposition& d) {
  nlohmann::json sigma = nlohmann::json::array();
  for (int v : d.sigma) sigma.push_back(v + 1);
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : d.terms) {
    auto j = poly_to_json(t.poly);
    j["sign"] = t.sign;
    terms.push_back(std::move(j));
  }
  return {{"sigma", sigma},
          {"factors", d.factors},
          {"terms", terms},
          {"scale", {{"re", d.scale.real()}, {"im", d.scale.imag()}}}};
}

}  // namespace qes
