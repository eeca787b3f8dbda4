#pragma once

#include <optional>

#include "json.hpp"
#include "qes/cyclotomic.hpp"
#include "qes/polynomial.hpp"
#include "qes/sum_engine.hpp"

namespace qes {

/// Sum over the family of (S~ conj(S~))^(r/2), kept as an exact cyclotomic integer.
struct MomentAccumulator {
  int m;
  int half_order;
  CycInt numerator;
  std::uint64_t members = 0;

  MomentAccumulator(int modulus, int order);
  void add(const QuadPoly& f, const SumValue& v);
  void merge(MomentAccumulator other);
};

struct MomentReport {
  FamilySpec spec;
  int order = 2;
  std::uint64_t family_size = 0;
  BigRational value;  ///< exact M_r
  double value_float = 0.0;
  std::optional<BigRational> predicted;  ///< exact closed-form value, when one applies
  std::optional<BigRational> bound;      ///< exact closed-form upper bound, when one applies

  bool matches_prediction() const { return predicted && value == *predicted; }
  /// value <= bound, compared in floating point with `slack`.
  bool within_bound(double slack = 1e-12) const;
};

/// Exact r-th moment of |S| over an exhaustive family, r in {2, 4, 6}.
/// predicted is 2^-n for all-quadratic r=2 and (1+(-1)^n)/2^n for homogeneous
/// r=2; bound is (9n(n-1) + (9n+1) 2^(2-2n))/4 * 2^(-3n) for all-quadratic r=6
/// with m > 3.
/// Throws std::logic_error if the accumulated numerator is not a rational integer.
MomentReport moment_exact(const FamilySpec& spec, int order, const SweepOptions& options = {});

/// Sixth-moment upper bound for all quadratics in n variables (m > 3).
BigRational sixth_moment_bound(int n);

struct TailReport {
  double gamma = 0.0;
  double epsilon = 0.0;  ///< gamma^n
  double empirical = 0.0;  ///< fraction of the family with |S| >= epsilon
  double lower = 0.0;
  double upper = 1.0;
  bool exhaustive = false;
  std::optional<std::uint64_t> seed;

  bool sandwiched() const { return lower <= empirical && empirical <= upper; }
};

/// Bounds on Prob(|S| >= gamma^n) for uniform f in Z_m^2[n]:
///   lower = max(0, (2^-n - gamma^2n) / (1 - gamma^2n)),
///   upper = min(1, (2 gamma^2)^-n, (9n(n+1)/4) (2 gamma^2)^-3n),
/// the last term only for m > 3. Requires 0 < gamma <= 1.
TailReport tail_bounds(int n, int m, double gamma);

/// Counts members with |S| >= gamma^n (to within 1e-12) and attaches tail_bounds.
TailReport empirical_tail(const FamilySpec& spec, double gamma, const SweepOptions& options = {});

/// |S| of every member (as a multiset); shared by several tail evaluations.
std::vector<double> family_norms(const FamilySpec& spec, const SweepOptions& options = {});
TailReport tail_from_norms(const FamilySpec& spec, const std::vector<double>& norms, double gamma);

nlohmann::json to_json(const MomentReport& report);
nlohmann::json to_json(const TailReport& report);
nlohmann::json rational_to_json(const BigRational& q);

}  // namespace qes
