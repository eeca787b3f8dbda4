#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qes {

/// f(x) = sum_{i<j} a_ij x_i x_j + sum_k b_k x_k over Z_m, evaluated on x in {-1,1}^n.
///
/// Variables are 0-based in the API and 1-based in the JSON schema. Coefficients
/// are stored reduced to [0, m); zero quadratic coefficients are not stored.
class QuadPoly {
 public:
  using QuadraticMap = std::map<std::pair<int, int>, int>;

  QuadPoly(int n, int m);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }

  /// Order of i and j does not matter; i == j is rejected.
  int quadratic(int i, int j) const;
  QuadPoly& set_quadratic(int i, int j, std::int64_t value);
  int linear(int i) const;
  QuadPoly& set_linear(int i, std::int64_t value);

  /// Keys satisfy first < second.
  const QuadraticMap& quadratic_terms() const noexcept { return a_; }
  const std::vector<int>& linear_terms() const noexcept { return b_; }

  bool is_homogeneous() const;
  bool is_linear() const { return a_.empty(); }

  /// f(x) mod m, where bit i of `negative_mask` set means x_i = -1.
  int evaluate(std::uint64_t negative_mask) const;

  /// Dense coefficients: a_ij for i<j in row-major order, then b_1..b_n.
  std::vector<int> coefficient_key() const;
  static QuadPoly from_coefficient_key(int n, int m, const std::vector<int>& key);

  bool operator==(const QuadPoly&) const = default;

 private:
  void check_index(int i) const;
  int reduce(std::int64_t v) const;

  int n_;
  int m_;
  QuadraticMap a_;
  std::vector<int> b_;
};

/// Thrown for malformed polynomial input.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// {"n": int, "m": int, "a": {"i,j": int}, "b": [int]} with 1-based i < j.
QuadPoly parse_poly(std::string_view text);
QuadPoly poly_from_json(const nlohmann::json& j);
nlohmann::json poly_to_json(const QuadPoly& f);
/// Canonical text: keys sorted, no whitespace.
std::string serialize(const QuadPoly& f);

struct PolyGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  ///< 0-based, first < second, sorted

  /// Connected components as sorted vertex lists, ordered by smallest vertex.
  std::vector<std::vector<int>> components() const;
  /// Independent DFS check, used to cross-check forest_distance.
  bool has_cycle() const;
};

PolyGraph graph_of(const QuadPoly& f);

/// Circuit rank |E| - n + #components: the fewest edge deletions leaving a forest.
int forest_distance(const PolyGraph& g);

/// Smallest coefficient_key() representative of f's orbit under variable
/// permutations, sign flips x_i -> -x_i, and global negation f -> -f. Keys
/// compare lexicographically with 0 ranked above m - 1, so -x2x3 on three
/// variables becomes x1x2.
/// Cost grows as n! 2^(n+1); intended for n <= 8.
QuadPoly canonical_form(const QuadPoly& f);
/// Same as canonical_form(f) == f, but exits on the first smaller image.
bool is_canonical(const QuadPoly& f);

// ---------------------------------------------------------------------------
// Families

enum class FamilyKind { all_quadratic, homogeneous, linear_only, explicit_list, random_sample };

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from_string(std::string_view s);

struct FamilySpec {
  FamilyKind kind = FamilyKind::all_quadratic;
  int n = 1;
  int m = 3;
  std::vector<QuadPoly> members;  ///< explicit_list only
  std::uint64_t count = 0;        ///< random_sample only
  std::uint64_t seed = 0;         ///< random_sample only

  static FamilySpec all_quadratic(int n, int m) { return {FamilyKind::all_quadratic, n, m, {}, 0, 0}; }
  static FamilySpec homogeneous(int n, int m) { return {FamilyKind::homogeneous, n, m, {}, 0, 0}; }
  static FamilySpec linear_only(int n, int m) { return {FamilyKind::linear_only, n, m, {}, 0, 0}; }
  static FamilySpec random_sample(int n, int m, std::uint64_t count, std::uint64_t seed) {
    return {FamilyKind::random_sample, n, m, {}, count, seed};
  }
  static FamilySpec explicit_list(std::vector<QuadPoly> polys);

  bool exhaustive() const { return kind != FamilyKind::random_sample; }
};

/// Number of members, or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> family_size(const FamilySpec& spec);

/// The index-th member. Exhaustive kinds use little-endian odometer order over
/// the family's coefficient slots; random_sample draws uniform coefficients
/// from a stream determined by (seed, index) alone.
QuadPoly family_member(const FamilySpec& spec, std::uint64_t index);

nlohmann::json family_to_json(const FamilySpec& spec);

/// SplitMix64 step; used to derive per-sample streams.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace qes
