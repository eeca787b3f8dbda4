#include "qes/polynomial.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "qes/cyclotomic.hpp"

namespace qes {

QuadPoly::QuadPoly(int n, int m) : n_(n), m_(m) {
  if (n < 1 || n > 63) throw std::invalid_argument("variable count must be in [1, 63]");
  require_odd_modulus(m);
  b_.assign(static_cast<std::size_t>(n), 0);
}

void QuadPoly::check_index(int i) const {
  if (i < 0 || i >= n_) {
    throw std::out_of_range("variable index " + std::to_string(i) + " out of range for n=" + std::to_string(n_));
  }
}

int QuadPoly::reduce(std::int64_t v) const {
  auto r = v % m_;
  if (r < 0) r += m_;
  return static_cast<int>(r);
}

int QuadPoly::quadratic(int i, int j) const {
  check_index(i);
  check_index(j);
  if (i == j) throw std::invalid_argument("no diagonal quadratic terms");
  if (i > j) std::swap(i, j);
  auto it = a_.find({i, j});
  return it == a_.end() ? 0 : it->second;
}

QuadPoly& QuadPoly::set_quadratic(int i, int j, std::int64_t value) {
  check_index(i);
  check_index(j);
  if (i == j) throw std::invalid_argument("no diagonal quadratic terms");
  if (i > j) std::swap(i, j);
  const int v = reduce(value);
  if (v == 0) {
    a_.erase({i, j});
  } else {
    a_[{i, j}] = v;
  }
  return *this;
}

int QuadPoly::linear(int i) const {
  check_index(i);
  return b_[static_cast<std::size_t>(i)];
}

QuadPoly& QuadPoly::set_linear(int i, std::int64_t value) {
  check_index(i);
  b_[static_cast<std::size_t>(i)] = reduce(value);
  return *this;
}

bool QuadPoly::is_homogeneous() const {
  return std::all_of(b_.begin(), b_.end(), [](int v) { return v == 0; });
}

int QuadPoly::evaluate(std::uint64_t negative_mask) const {
  auto sign = [negative_mask](int i) { return (negative_mask >> i) & 1U ? -1 : 1; };
  std::int64_t acc = 0;
  for (const auto& [ij, v] : a_) acc += sign(ij.first) * sign(ij.second) * v;
  for (int i = 0; i < n_; ++i) acc += sign(i) * b_[static_cast<std::size_t>(i)];
  return reduce(acc);
}

std::vector<int> QuadPoly::coefficient_key() const {
  std::vector<int> key;
  key.reserve(static_cast<std::size_t>(n_ * (n_ - 1) / 2 + n_));
  auto it = a_.begin();
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (it != a_.end() && it->first == std::pair{i, j}) {
        key.push_back(it->second);
        ++it;
      } else {
        key.push_back(0);
      }
    }
  }
  key.insert(key.end(), b_.begin(), b_.end());
  return key;
}

QuadPoly QuadPoly::from_coefficient_key(int n, int m, const std::vector<int>& key) {
  QuadPoly f(n, m);
  if (key.size() != static_cast<std::size_t>(n * (n - 1) / 2 + n)) {
    throw std::invalid_argument("coefficient key has the wrong length");
  }
  std::size_t pos = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) f.set_quadratic(i, j, key[pos++]);
  }
  for (int i = 0; i < n; ++i) f.set_linear(i, key[pos++]);
  return f;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::int64_t require_int(const nlohmann::json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ParseError(what + " must be an integer");
  return j.get<std::int64_t>();
}

int parse_index(std::string_view s, const std::string& key) {
  int v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) throw ParseError("bad quadratic key \"" + key + "\"");
  return v;
}

}  // namespace

QuadPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("polynomial must be a JSON object");
  for (const char* field : {"n", "m", "b"}) {
    if (!j.contains(field)) throw ParseError(std::string("missing field \"") + field + "\"");
  }
  const auto n = require_int(j.at("n"), "n");
  const auto m = require_int(j.at("m"), "m");
  if (n < 1 || n > 63) throw ParseError("n must be in [1, 63]");
  if (m < 3 || m % 2 == 0) throw ParseError("m must be odd and >= 3, got " + std::to_string(m));
  QuadPoly f(static_cast<int>(n), static_cast<int>(m));

  const auto& b = j.at("b");
  if (!b.is_array() || b.size() != static_cast<std::size_t>(n)) {
    throw ParseError("b must be an array of length n");
  }
  for (std::size_t k = 0; k < b.size(); ++k) {
    f.set_linear(static_cast<int>(k), require_int(b[k], "b[" + std::to_string(k) + "]"));
  }

  if (j.contains("a")) {
    const auto& a = j.at("a");
    if (!a.is_object()) throw ParseError("a must be an object keyed by \"i,j\"");
    for (const auto& [key, value] : a.items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos) {
        throw ParseError("bad quadratic key \"" + key + "\" (diagonal or malformed terms are not allowed)");
      }
      const int i = parse_index(std::string_view(key).substr(0, comma), key);
      const int jj = parse_index(std::string_view(key).substr(comma + 1), key);
      if (i < 1 || jj < 1 || i > n || jj > n) throw ParseError("quadratic index out of range in \"" + key + "\"");
      if (i >= jj) throw ParseError("quadratic key \"" + key + "\" must satisfy i < j");
      f.set_quadratic(i - 1, jj - 1, require_int(value, "a[" + key + "]"));
    }
  }
  return f;
}

QuadPoly parse_poly(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed polynomial JSON: ") + e.what());
  }
  return poly_from_json(j);
}

nlohmann::json poly_to_json(const QuadPoly& f) {
  nlohmann::json a = nlohmann::json::object();
  for (const auto& [ij, v] : f.quadratic_terms()) {
    a[std::to_string(ij.first + 1) + "," + std::to_string(ij.second + 1)] = v;
  }
  return {{"n", f.n()}, {"m", f.m()}, {"a", a}, {"b", f.linear_terms()}};
}

std::string serialize(const QuadPoly& f) { return poly_to_json(f).dump(); }

// ---------------------------------------------------------------------------
// Graph

PolyGraph graph_of(const QuadPoly& f) {
  PolyGraph g;
  g.n = f.n();
  for (const auto& [ij, v] : f.quadratic_terms()) g.edges.push_back(ij);
  return g;
}

std::vector<std::vector<int>> PolyGraph::components() const {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [u, v] : edges) parent[find(u)] = find(v);
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, verts] : groups) out.push_back(std::move(verts));
  std::sort(out.begin(), out.end());
  return out;
}

bool PolyGraph::has_cycle() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> parent(static_cast<std::size_t>(n), -2);
  for (int root = 0; root < n; ++root) {
    if (parent[root] != -2) continue;
    parent[root] = -1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : adj[u]) {
        if (w == parent[u]) continue;
        if (parent[w] != -2) return true;
        parent[w] = u;
        stack.push_back(w);
      }
    }
  }
  return false;
}

int forest_distance(const PolyGraph& g) {
  return static_cast<int>(g.edges.size()) - g.n + static_cast<int>(g.components().size());
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

// Walks the orbit image keys in a fixed order and keeps the smallest. Keys
// compare like the sparse serialization: a zero entry ranks above every
// nonzero value, so nonzero coefficients move to the earliest pairs.
class OrbitScanner {
 public:
  explicit OrbitScanner(const QuadPoly& f) : n_(f.n()), m_(f.m()) {
    dense_.assign(static_cast<std::size_t>(n_ * n_), 0);
    for (const auto& [ij, v] : f.quadratic_terms()) {
      at(ij.first, ij.second) = v;
      at(ij.second, ij.first) = v;
    }
    b_ = f.linear_terms();
    best_ = f.coefficient_key();
    candidate_.resize(best_.size());
  }

  // Returns false if stop_early and a strictly smaller image was found.
  bool scan(bool stop_early) {
    std::vector<int> perm(static_cast<std::size_t>(n_));
    std::iota(perm.begin(), perm.end(), 0);
    const std::uint64_t sign_masks = std::uint64_t{1} << n_;
    do {
      for (int negate = 0; negate < 2; ++negate) {
        for (std::uint64_t s = 0; s < sign_masks; ++s) {
          if (try_image(perm, negate != 0, s) && stop_early) return false;
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
  }

  QuadPoly best() const { return QuadPoly::from_coefficient_key(n_, m_, best_); }

 private:
  int& at(int i, int j) { return dense_[static_cast<std::size_t>(i * n_ + j)]; }

  int image_value(int v, bool flip) const { return flip && v != 0 ? m_ - v : v; }

  int rank(int v) const { return v == 0 ? m_ : v; }

  // Writes the image key into candidate_ while comparing against best_.
  // Returns true if the image is strictly smaller (and best_ was replaced).
  bool try_image(const std::vector<int>& perm, bool negate, std::uint64_t s) {
    auto flipped = [&](int k) { return ((s >> k) & 1U) != 0; };
    int cmp = 0;
    std::size_t pos = 0;
    auto push = [&](int value) {
      candidate_[pos] = value;
      if (cmp == 0) {
        if (rank(value) < rank(best_[pos])) cmp = -1;
        else if (rank(value) > rank(best_[pos])) cmp = 1;
      }
      ++pos;
      return cmp <= 0;
    };
    for (int k = 0; k < n_; ++k) {
      for (int l = k + 1; l < n_; ++l) {
        const bool flip = negate != (flipped(k) != flipped(l));
        if (!push(image_value(at(perm[k], perm[l]), flip))) return false;
      }
    }
    for (int k = 0; k < n_; ++k) {
      const bool flip = negate != flipped(k);
      if (!push(image_value(b_[static_cast<std::size_t>(perm[k])], flip))) return false;
    }
    if (cmp < 0) {
      best_.swap(candidate_);
      candidate_.resize(best_.size());
      return true;
    }
    return false;
  }

  int n_;
  int m_;
  std::vector<int> dense_;
  std::vector<int> b_;
  std::vector<int> best_;
  std::vector<int> candidate_;
};

}  // namespace

QuadPoly canonical_form(const QuadPoly& f) {
  OrbitScanner scanner(f);
  scanner.scan(false);
  return scanner.best();
}

bool is_canonical(const QuadPoly& f) { return OrbitScanner(f).scan(true); }

// ---------------------------------------------------------------------------
// Families

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::all_quadratic:
      return "all-quadratic";
    case FamilyKind::homogeneous:
      return "homogeneous";
    case FamilyKind::linear_only:
      return "linear-only";
    case FamilyKind::explicit_list:
      return "explicit-list";
    case FamilyKind::random_sample:
      return "random-sample";
  }
  return "unknown";
}

FamilyKind family_kind_from_string(std::string_view s) {
  for (auto kind : {FamilyKind::all_quadratic, FamilyKind::homogeneous, FamilyKind::linear_only,
                    FamilyKind::explicit_list, FamilyKind::random_sample}) {
    if (to_string(kind) == s) return kind;
  }
  throw std::invalid_argument("unknown family kind \"" + std::string(s) + "\"");
}

FamilySpec FamilySpec::explicit_list(std::vector<QuadPoly> polys) {
  if (polys.empty()) throw std::invalid_argument("explicit family must be non-empty");
  const int n = polys.front().n();
  const int m = polys.front().m();
  for (const auto& f : polys) {
    if (f.n() != n || f.m() != m) throw std::invalid_argument("explicit family members must share n and m");
  }
  return {FamilyKind::explicit_list, n, m, std::move(polys), 0, 0};
}

namespace {

struct Slot {
  int i;
  int j;  // -1 for a linear slot
};

std::vector<Slot> family_slots(const FamilySpec& spec) {
  std::vector<Slot> slots;
  const bool quadratic = spec.kind == FamilyKind::all_quadratic || spec.kind == FamilyKind::homogeneous ||
                         spec.kind == FamilyKind::random_sample;
  const bool linear = spec.kind != FamilyKind::homogeneous;
  if (quadratic) {
    for (int i = 0; i < spec.n; ++i) {
      for (int j = i + 1; j < spec.n; ++j) slots.push_back({i, j});
    }
  }
  if (linear) {
    for (int i = 0; i < spec.n; ++i) slots.push_back({i, -1});
  }
  return slots;
}

}  // namespace

std::optional<std::uint64_t> family_size(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::explicit_list:
      return spec.members.size();
    case FamilyKind::random_sample:
      return spec.count;
    default:
      break;
  }
  const auto slots = family_slots(spec);
  std::uint64_t size = 1;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (size > UINT64_MAX / static_cast<std::uint64_t>(spec.m)) return std::nullopt;
    size *= static_cast<std::uint64_t>(spec.m);
  }
  return size;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

QuadPoly family_member(const FamilySpec& spec, std::uint64_t index) {
  if (spec.kind == FamilyKind::explicit_list) return spec.members.at(index);
  QuadPoly f(spec.n, spec.m);
  const auto slots = family_slots(spec);
  const auto m = static_cast<std::uint64_t>(spec.m);
  std::uint64_t state = spec.seed;
  state = splitmix64(state) ^ (index * 0xD1B54A32D192ED03ULL);
  for (const auto& slot : slots) {
    std::uint64_t digit = 0;
    if (spec.kind == FamilyKind::random_sample) {
      digit = splitmix64(state) % m;
    } else {
      digit = index % m;
      index /= m;
    }
    if (slot.j < 0) {
      f.set_linear(slot.i, static_cast<std::int64_t>(digit));
    } else {
      f.set_quadratic(slot.i, slot.j, static_cast<std::int64_t>(digit));
    }
  }
  return f;
}

nlohmann::json family_to_json(const FamilySpec& spec) {
  nlohmann::json j{{"kind", to_string(spec.kind)}, {"n", spec.n}, {"m", spec.m}};
  if (spec.kind == FamilyKind::random_sample) {
    j["count"] = spec.count;
    j["seed"] = spec.seed;
  }
  if (spec.kind == FamilyKind::explicit_list) j["size"] = spec.members.size();
  return j;
}

}  // namespace qes
