#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qes/polynomial.hpp"
#include "qes/sum_engine.hpp"

namespace qes {

/// (q/2)^floor((n+1)/2), the conjectured maximum of |S| over Z_m^2[n].
double conjectured_bound(int n, int m);
/// (q/2)^(floor((n+1)/2) + 1), the conjectured ceiling for sub-maximal values.
double gap_bound(int n, int m);

/// c(x1x2 + x3x4 + ... + x_{n-1}x_n) for even n, c(x1x2 + ... + x_{n-2}x_{n-1} + x_n)
/// for odd n, with c = floor((m+1)/4).
QuadPoly canonical_extremal(int n, int m);

/// Every polynomial c(+-x_i x_j +- ...) over all pairings (plus one +-c x_k for
/// odd n) and sign patterns. Intended for n <= 10.
std::vector<QuadPoly> conjecture_forms(int n, int m);

/// Canonical forms of conjecture_forms(n, m), sorted by coefficient key, deduplicated.
std::vector<QuadPoly> conjecture_orbits(int n, int m);

struct SharpnessResult {
  bool ok = false;
  double norm = 0.0;
  double expected = 0.0;
};

inline constexpr int kMaxSharpnessVariables = 24;

/// |S(canonical_extremal(n, m))| via eval_gray against conjectured_bound, 1e-9.
SharpnessResult verify_sharpness(int n, int m);

inline constexpr double kDistinctTolerance = 1e-9;
inline constexpr std::size_t kWitnessCap = 10'000;

/// Largest and second-largest distinct |S| values (merged at 1e-9) with the
/// canonical polynomials attaining each.
struct TopTwo {
  struct Level {
    double value = 0.0;
    std::map<std::vector<int>, QuadPoly> witnesses;  ///< keyed by coefficient_key
    bool truncated = false;
  };

  std::optional<Level> top;
  std::optional<Level> runner_up;
  bool canonicalize = true;
  std::uint64_t evaluated = 0;

  void add(const QuadPoly& f, const SumValue& v);
  void merge(TopTwo other);
  void observe(Level level);

 private:
  static void absorb(Level& into, Level&& from);
};

struct SearchReport {
  FamilySpec spec;
  double max_norm = 0.0;
  std::vector<QuadPoly> max_witnesses;
  bool max_witnesses_truncated = false;
  std::optional<double> second_norm;
  std::vector<QuadPoly> second_witnesses;
  double conjectured = 0.0;
  double gap_bound = 0.0;
  bool exhaustive = false;
  bool symmetry_reduced = false;
  std::optional<std::uint64_t> seed;
  std::uint64_t evaluated = 0;
};

/// Scans the family for the two largest distinct |S| values. With
/// use_symmetry, only canonical members (is_canonical) are evaluated.
SearchReport search(const FamilySpec& spec, bool use_symmetry, const SweepOptions& options = {});

/// second_norm <= gap_bound + 1e-9. Throws std::invalid_argument on a sampled report.
bool verify_gap(const SearchReport& report);

struct WitnessComparison {
  bool equal = false;
  std::vector<QuadPoly> missing;  ///< conjectured orbits not found among the witnesses
  std::vector<QuadPoly> extra;    ///< witnesses outside the conjectured orbits
};

WitnessComparison compare_with_conjecture(const SearchReport& report);

nlohmann::json to_json(const SearchReport& report);
/// Columns: n,m,max,conjectured,second,gap_bound,exhaustive
std::string search_csv_header();
std::string search_csv_row(const SearchReport& report);

}  // namespace qes
