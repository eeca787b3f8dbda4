#include "qes/claims.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qes/cyclotomic.hpp"
#include "qes/extremal.hpp"
#include "qes/fourier.hpp"
#include "qes/legendre3.hpp"
#include "qes/moments.hpp"
#include "qes/polynomial.hpp"

namespace qes {

namespace {

int parse_int(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw std::invalid_argument("grid: bad integer '" + std::string(s) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// "a..b" or "a", comma separated. odd_only keeps odd values of ranges.
std::vector<int> parse_values(std::string_view s, bool odd_only) {
  std::vector<int> out;
  for (auto item : split(s, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(parse_int(item));
      continue;
    }
    const int lo = parse_int(item.substr(0, dots));
    const int hi = parse_int(item.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("grid: empty range '" + std::string(item) + "'");
    for (int v = lo; v <= hi; ++v) {
      if (!odd_only || v % 2 != 0) out.push_back(v);
    }
  }
  return out;
}

}  // namespace

std::vector<GridPoint> parse_grid(std::string_view text) {
  std::vector<GridPoint> grid;
  for (auto block : split(text, ';')) {
    const auto x = block.find('x');
    if (x == std::string_view::npos) throw std::invalid_argument("grid: expected <n values>x<m values>");
    const auto ns = parse_values(block.substr(0, x), false);
    const auto ms = parse_values(block.substr(x + 1), true);
    for (int n : ns) {
      if (n < 1) throw std::invalid_argument("grid: n must be >= 1");
      for (int m : ms) {
        require_odd_modulus(m);
        grid.push_back({n, m});
      }
    }
  }
  if (grid.empty()) throw std::invalid_argument("grid: no points");
  return grid;
}

const std::vector<ClaimInfo>& claim_catalog() {
  static const std::vector<ClaimInfo> catalog{
      {1, "m2", "exact second moment over all quadratics", true},
      {2, "m2-homogeneous", "exact second moment over homogeneous quadratics", true},
      {3, "m6", "sixth moment bound", true},
      {4, "sharpness", "canonical extremal polynomial attains the bound", true},
      {5, "maximality", "exhaustive maximum and witness orbits", true},
      {6, "gap", "second largest value below the gap bound", true},
      {7, "tree-bound", "Fourier coefficients of weighted trees", false},
      {8, "forest-certificate", "forest distance certificate and edge addition growth", false},
      {9, "transforms", "transform and evaluator equivalences", false},
      {10, "chebyshev", "Chebyshev identity and second maxima", false},
      {11, "legendre", "Legendre decomposition for m = 3", false},
      {12, "tail", "tail probability sandwich", true},
      {13, "spot-checks", "one and two variable value tables", false},
  };
  return catalog;
}

nlohmann::json to_json(const ClaimResult& result) {
  nlohmann::json j{{"number", result.number},   {"id", result.id},           {"title", result.title},
                   {"passed", result.passed},   {"failed", !result.passed},  {"details", result.details}};
  if (result.counterexample) j["counterexample"] = *result.counterexample;
  return j;
}

namespace {

constexpr double kTol = 1e-9;

std::vector<GridPoint> product(std::vector<int> ns, std::vector<int> ms) {
  std::vector<GridPoint> out;
  for (int n : ns) {
    for (int m : ms) out.push_back({n, m});
  }
  return out;
}

const std::vector<GridPoint>& default_grid(int number) {
  static const std::vector<GridPoint> m2 = product({1, 2, 3}, {3, 5, 7});
  static const std::vector<GridPoint> m2_full = [] {
    auto g = m2;
    g.push_back({4, 3});
    return g;
  }();
  static const std::vector<GridPoint> m6{{2, 5}, {2, 7}, {3, 5}};
  static const std::vector<GridPoint> sharp = [] {
    std::vector<int> ns;
    for (int n = 1; n <= kMaxSharpnessVariables; ++n) ns.push_back(n);
    return product(ns, {3, 5, 7, 9, 11, 13, 15});
  }();
  static const std::vector<GridPoint> exhaustive{{2, 3}, {2, 5}, {2, 7}, {3, 3}, {3, 5}, {4, 3}};
  static const std::vector<GridPoint> none;
  switch (number) {
    case 1:
    case 2:
      return m2_full;
    case 3:
      return m6;
    case 4:
      return sharp;
    case 5:
    case 6:
    case 12:
      return exhaustive;
    default:
      return none;
  }
}

QuadPoly random_poly(int n, int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(0, m - 1);
  QuadPoly f(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) f.set_quadratic(i, j, coeff(rng));
    f.set_linear(i, coeff(rng));
  }
  return f;
}

// Each vertex after the first joins an earlier one with probability p; labels
// are then shuffled. Weights are nonzero, linear terms uniform.
QuadPoly random_forest(int n, int m, double p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> weight(1, m - 1);
  std::uniform_int_distribution<int> coeff(0, m - 1);
  std::bernoulli_distribution join(p);
  std::vector<int> label(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) label[static_cast<std::size_t>(i)] = i;
  std::shuffle(label.begin(), label.end(), rng);
  QuadPoly f(n, m);
  for (int v = 1; v < n; ++v) {
    if (!join(rng)) continue;
    const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    f.set_quadratic(label[static_cast<std::size_t>(u)], label[static_cast<std::size_t>(v)], weight(rng));
  }
  for (int i = 0; i < n; ++i) f.set_linear(i, coeff(rng));
  return f;
}

// Adds a nonzero weight on a currently absent edge; returns false if the graph is complete.
bool add_random_edge(QuadPoly& f, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> absent;
  for (int i = 0; i < f.n(); ++i) {
    for (int j = i + 1; j < f.n(); ++j) {
      if (f.quadratic(i, j) == 0) absent.emplace_back(i, j);
    }
  }
  if (absent.empty()) return false;
  const auto [i, j] = absent[std::uniform_int_distribution<std::size_t>(0, absent.size() - 1)(rng)];
  f.set_quadratic(i, j, std::uniform_int_distribution<int>(1, f.m() - 1)(rng));
  return true;
}

std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> sigma(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = i;
  std::shuffle(sigma.begin(), sigma.end(), rng);
  return sigma;
}

std::vector<int> odd_moduli(int lo, int hi) {
  std::vector<int> out;
  for (int m = lo; m <= hi; m += 2) out.push_back(m);
  return out;
}

// Flags whether every S~ in a family is exactly zero.
struct ZeroCheck {
  bool all_zero = true;
  std::optional<QuadPoly> first_nonzero;

  void add(const QuadPoly& f, const SumValue& v) {
    if (all_zero && !v.unnormalized.is_zero()) {
      all_zero = false;
      first_nonzero = f;
    }
  }
  void merge(ZeroCheck other) {
    if (all_zero && !other.all_zero) *this = std::move(other);
  }
};

class ClaimRunner {
 public:
  explicit ClaimRunner(const ClaimConfig& config) : config_(config) {}

  ClaimResult run(const ClaimInfo& info) {
    ClaimResult result{info.number, info.id, info.title, true, nlohmann::json::object(), std::nullopt};
    switch (info.number) {
      case 1: second_moment(result, false); break;
      case 2: second_moment(result, true); break;
      case 3: sixth_moment(result); break;
      case 4: sharpness(result); break;
      case 5: maximality(result); break;
      case 6: gap(result); break;
      case 7: tree_bound(result); break;
      case 8: forest_certificate(result); break;
      case 9: transforms(result); break;
      case 10: chebyshev(result); break;
      case 11: legendre(result); break;
      case 12: tail(result); break;
      case 13: spot_checks(result); break;
      default: throw std::logic_error("unknown claim number");
    }
    if (info.uses_grid && config_.grid) result.details["grid_override"] = true;
    return result;
  }

 private:
  const std::vector<GridPoint>& grid(int number) const { return config_.grid ? *config_.grid : default_grid(number); }

  std::mt19937_64 rng(std::uint64_t salt) const {
    std::uint64_t state = config_.seed ^ (salt * 0x9e3779b97f4a7c15ULL);
    return std::mt19937_64(splitmix64(state));
  }

  static void fail(ClaimResult& r, nlohmann::json counterexample) {
    if (r.passed) r.counterexample = std::move(counterexample);
    r.passed = false;
  }

  const SearchReport& searched(const GridPoint& p) {
    auto key = std::make_pair(p.n, p.m);
    auto it = searches_.find(key);
    if (it == searches_.end()) {
      it = searches_.emplace(key, search(FamilySpec::all_quadratic(p.n, p.m), true, config_.sweep)).first;
    }
    return it->second;
  }

  const std::vector<double>& norms(const GridPoint& p) {
    auto key = std::make_pair(p.n, p.m);
    auto it = norms_.find(key);
    if (it == norms_.end()) {
      it = norms_.emplace(key, family_norms(FamilySpec::all_quadratic(p.n, p.m), config_.sweep)).first;
    }
    return it->second;
  }

  void second_moment(ClaimResult& r, bool homogeneous) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& p : grid(r.number)) {
      const auto spec = homogeneous ? FamilySpec::homogeneous(p.n, p.m) : FamilySpec::all_quadratic(p.n, p.m);
      const auto report = moment_exact(spec, 2, config_.sweep);
      auto entry = to_json(report);
      entry["matches"] = report.matches_prediction();
      if (!report.matches_prediction()) fail(r, {{"family", family_to_json(spec)}, {"moment", entry}});
      if (homogeneous && p.n % 2 == 1) {
        const auto zero = sweep_family(spec, ZeroCheck{}, config_.sweep);
        entry["all_sums_zero"] = zero.all_zero;
        if (!zero.all_zero) fail(r, poly_to_json(*zero.first_nonzero));
      }
      entries.push_back(std::move(entry));
    }
    r.details["entries"] = std::move(entries);
  }

  void sixth_moment(ClaimResult& r) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& p : grid(3)) {
      const auto spec = FamilySpec::all_quadratic(p.n, p.m);
      const auto report = moment_exact(spec, 6, config_.sweep);
      auto entry = to_json(report);
      if (!report.bound) {
        entry["skipped"] = "no bound for m = 3";
      } else {
        entry["within_bound"] = report.within_bound(1e-12);
        if (!report.within_bound(1e-12)) fail(r, {{"family", family_to_json(spec)}, {"moment", entry}});
      }
      entries.push_back(std::move(entry));
    }
    r.details["entries"] = std::move(entries);
  }

  void sharpness(ClaimResult& r) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& p : grid(4)) {
      const auto res = verify_sharpness(p.n, p.m);
      entries.push_back({{"n", p.n}, {"m", p.m}, {"norm", res.norm}, {"expected", res.expected}, {"ok", res.ok}});
      if (!res.ok) fail(r, poly_to_json(canonical_extremal(p.n, p.m)));
    }
    r.details["entries"] = std::move(entries);
  }

  void maximality(ClaimResult& r) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& p : grid(5)) {
      const auto& report = searched(p);
      const auto cmp = compare_with_conjecture(report);
      const bool max_ok = std::abs(report.max_norm - report.conjectured) <= kTol;
      nlohmann::json extra = nlohmann::json::array();
      for (const auto& f : cmp.extra) extra.push_back(poly_to_json(f));
      nlohmann::json missing = nlohmann::json::array();
      for (const auto& f : cmp.missing) missing.push_back(poly_to_json(f));
      entries.push_back({{"n", p.n},
                         {"m", p.m},
                         {"max_norm", report.max_norm},
                         {"conjectured", report.conjectured},
                         {"max_ok", max_ok},
                         {"witness_orbits", report.max_witnesses.size()},
                         {"witnesses_match", cmp.equal},
                         {"extra_witnesses", extra},
                         {"missing_witnesses", missing}});
      if (!max_ok) fail(r, poly_to_json(report.max_witnesses.front()));
      if (!cmp.equal) fail(r, cmp.extra.empty() ? poly_to_json(cmp.missing.front()) : poly_to_json(cmp.extra.front()));
    }
    r.details["entries"] = std::move(entries);
  }

  void gap(ClaimResult& r) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& p : grid(6)) {
      const auto& report = searched(p);
      const bool ok = verify_gap(report);
      entries.push_back({{"n", p.n},
                         {"m", p.m},
                         {"second_norm", report.second_norm ? nlohmann::json(*report.second_norm) : nlohmann::json()},
                         {"gap_bound", report.gap_bound},
                         {"ok", ok}});
      if (!ok) fail(r, poly_to_json(report.second_witnesses.front()));
    }
    r.details["entries"] = std::move(entries);
  }

  void tail(ClaimResult& r) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& p : grid(12)) {
      const auto spec = FamilySpec::all_quadratic(p.n, p.m);
      const auto& list = norms(p);
      for (int k = 0; k <= 5; ++k) {
        const double gamma = (15 + k) / 20.0;
        const auto report = tail_from_norms(spec, list, gamma);
        auto entry = to_json(report);
        entry["n"] = p.n;
        entry["m"] = p.m;
        entry["sandwiched"] = report.sandwiched();
        if (!report.sandwiched()) fail(r, entry);
        entries.push_back(std::move(entry));
      }
    }
    r.details["entries"] = std::move(entries);
  }

  void tree_bound(ClaimResult& r) {
    auto gen = rng(7);
    const int moduli[] = {3, 5, 7, 9};
    double worst_ratio = 0.0;
    double worst_mismatch = 0.0;
    for (int t = 0; t < 200; ++t) {
      const int n = std::uniform_int_distribution<int>(1, 14)(gen);
      const int m = moduli[std::uniform_int_distribution<int>(0, 3)(gen)];
      const auto f = random_forest(n, m, 1.0, gen);
      const auto tree = spectrum_tree(f);
      const auto naive = spectrum_naive(f);
      const double bound = std::pow(root_params(m).q / 2.0, n - 1);
      double mismatch = 0.0;
      for (std::size_t s = 0; s < tree.table.size(); ++s) mismatch = std::max(mismatch, std::abs(tree.table[s] - naive.table[s]));
      const double top = std::max(tree.max_abs(), naive.max_abs());
      worst_ratio = std::max(worst_ratio, top / bound);
      worst_mismatch = std::max(worst_mismatch, mismatch);
      if (top > bound + kTol || mismatch > kTol) {
        fail(r, {{"polynomial", poly_to_json(f)}, {"max_abs", top}, {"bound", bound}, {"mismatch", mismatch}});
      }
    }
    r.details = {{"trees", 200}, {"worst_ratio_to_bound", worst_ratio}, {"worst_mismatch", worst_mismatch},
                 {"seed", config_.seed}};
  }

  void forest_certificate(ClaimResult& r) {
    auto gen = rng(8);
    const int moduli[] = {3, 5, 7, 9};
    int accepted = 0;
    int attempts = 0;
    int with_cycles = 0;
    double worst_ratio = 0.0;
    while (accepted < 500 && attempts < 100000) {
      ++attempts;
      const int n = std::uniform_int_distribution<int>(2, 14)(gen);
      const int m = moduli[std::uniform_int_distribution<int>(0, 3)(gen)];
      auto f = random_forest(n, m, 0.85, gen);
      const double threshold = (n - 2) * std::log2(2.0 / root_params(m).q);
      const int extra = std::uniform_int_distribution<int>(0, std::max(0, static_cast<int>(threshold)))(gen);
      for (int e = 0; e < extra; ++e) add_random_edge(f, gen);
      const auto cert = forest_bound_certificate(f);
      if (!cert.applicable) continue;
      ++accepted;
      if (cert.k > 0) ++with_cycles;
      const double norm = eval_gray(f).norm;
      worst_ratio = std::max(worst_ratio, norm / cert.certified());
      if (norm > cert.certified() + kTol) {
        fail(r, {{"polynomial", poly_to_json(f)}, {"norm", norm}, {"certified", cert.certified()}, {"k", cert.k}});
      }
    }
    if (accepted < 500) fail(r, {{"reason", "too few applicable samples"}, {"accepted", accepted}});

    double worst_growth = 0.0;
    for (int t = 0; t < 200; ++t) {
      const int n = std::uniform_int_distribution<int>(2, 12)(gen);
      const int m = moduli[std::uniform_int_distribution<int>(0, 3)(gen)];
      const auto f = random_forest(n, m, 0.7, gen);
      auto g = f;
      if (!add_random_edge(g, gen)) continue;
      const double before = spectrum_fwht(f).max_abs();
      const double after = spectrum_fwht(g).max_abs();
      worst_growth = std::max(worst_growth, after / before);
      if (after > std::numbers::sqrt2 * before + kTol) {
        fail(r, {{"forest", poly_to_json(f)}, {"with_edge", poly_to_json(g)}, {"before", before}, {"after", after}});
      }
    }
    r.details = {{"certificates", accepted},      {"attempts", attempts},
                 {"with_cycles", with_cycles},    {"worst_ratio_to_certified", worst_ratio},
                 {"edge_pairs", 200},             {"worst_growth", worst_growth},
                 {"seed", config_.seed}};
  }

  void transforms(ClaimResult& r) {
    auto gen = rng(9);
    auto random_modulus = [&gen] { return 2 * std::uniform_int_distribution<int>(1, 7)(gen) + 1; };
    double worst_fwht = 0.0;
    double worst_parseval = 0.0;
    for (int t = 0; t < 100; ++t) {
      const auto f = random_poly(std::uniform_int_distribution<int>(1, 12)(gen), random_modulus(), gen);
      const auto fast = spectrum_fwht(f);
      const auto slow = spectrum_naive(f);
      double diff = 0.0;
      for (std::size_t s = 0; s < fast.table.size(); ++s) diff = std::max(diff, std::abs(fast.table[s] - slow.table[s]));
      const double parseval = std::abs(fast.parseval_sum() - 1.0);
      worst_fwht = std::max(worst_fwht, diff);
      worst_parseval = std::max(worst_parseval, parseval);
      if (diff > kTol || parseval > kTol) {
        fail(r, {{"polynomial", poly_to_json(f)}, {"fwht_diff", diff}, {"parseval_error", parseval}});
      }
    }
    int exact_mismatches = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto f = random_poly(std::uniform_int_distribution<int>(1, 12)(gen), random_modulus(), gen);
      if (!(eval_gray(f).unnormalized == eval_naive(f).unnormalized)) {
        ++exact_mismatches;
        fail(r, {{"polynomial", poly_to_json(f)}, {"reason", "eval_gray differs from eval_naive"}});
      }
    }
    r.details = {{"spectra", 100},
                 {"worst_fwht_diff", worst_fwht},
                 {"worst_parseval_error", worst_parseval},
                 {"exact_evaluations", 1000},
                 {"exact_mismatches", exact_mismatches},
                 {"seed", config_.seed}};
  }

  void chebyshev(ClaimResult& r) {
    auto gen = rng(10);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const double theta = angle(gen);
      for (int k = 0; k <= 32; ++k) {
        const double err = std::abs(chebyshev_q(k, 2.0 * std::cos(theta)) - 2.0 * std::cos(k * theta));
        worst = std::max(worst, err);
        if (err > 1e-12) fail(r, {{"k", k}, {"theta", theta}, {"error", err}});
      }
    }
    double worst_param = 0.0;
    for (int m = 3; m <= 99; m += 2) {
      // Largest and second largest distinct values of |w^y - w^-y| and |w^y + w^-y|.
      std::vector<double> minus;
      std::vector<double> plus;
      for (int y = 0; y < m; ++y) {
        minus.push_back(std::abs(root_of_unity(m, y) - root_of_unity(m, -y)));
        plus.push_back(std::abs(root_of_unity(m, y) + root_of_unity(m, -y)));
      }
      auto second = [](std::vector<double> v) {
        std::sort(v.begin(), v.end(), std::greater<>());
        for (double x : v) {
          if (x < v.front() - kTol) return x;
        }
        return v.front();
      };
      const auto params = root_params(m);
      const double r_err = std::abs(second(minus) - params.r);
      const double s_err = std::abs(second(plus) - params.s);
      const double r_cheb = std::abs(chebyshev_q(3, params.q) - params.r);
      const double s_cheb = std::abs(chebyshev_q(2, params.q) - params.s);
      worst_param = std::max({worst_param, r_err, s_err, r_cheb, s_cheb});
      if (std::max({r_err, s_err, r_cheb, s_cheb}) > kTol) {
        fail(r, {{"m", m}, {"r_error", r_err}, {"s_error", s_err}, {"r_vs_Q3", r_cheb}, {"s_vs_Q2", s_cheb}});
      }
    }
    r.details = {{"worst_identity_error", worst}, {"worst_parameter_error", worst_param}, {"seed", config_.seed}};
  }

  void legendre(ClaimResult& r) {
    const bool identity = legendre_identity_check();
    if (!identity) fail(r, {{"reason", "Legendre identity failed"}});
    auto gen = rng(11);
    double worst = 0.0;
    int applicable = 0;
    int checked_pairings = 0;
    for (int n : {2, 3, 4, 5, 6}) {
      for (int t = 0; t < 100; ++t) {
        const auto f = random_poly(n, 3, gen);
        const auto d = decompose_m3(f, random_permutation(n, gen));
        const double err = recombination_error(f, d);
        const bool exact = recombination_exact(f, d);
        worst = std::max(worst, err);
        if (err > kTol || !exact) fail(r, {{"polynomial", poly_to_json(f)}, {"error", err}, {"exact", exact}});
        for (const auto& sigma : all_pairings(n)) {
          ++checked_pairings;
          const auto check = n % 2 == 0 ? verify_theorem_a(f, sigma) : verify_theorem_a_odd(f, sigma);
          if (!check.applicable) continue;
          ++applicable;
          if (!check.holds) fail(r, {{"polynomial", poly_to_json(f)}, {"norm", check.norm}, {"bound", check.bound}});
        }
      }
    }
    r.details = {{"identity_exact", identity},
                 {"worst_recombination_error", worst},
                 {"pairings_checked", checked_pairings},
                 {"applicable_cases", applicable},
                 {"seed", config_.seed}};
  }

  void spot_checks(ClaimResult& r) {
    // n = 1: every a other than +-c stays below (q/2)^9.
    double worst_margin = -1.0;
    for (int m = 3; m <= 99; m += 2) {
      const auto params = root_params(m);
      const double bound = std::pow(params.q / 2.0, 9);
      for (int a = 0; a < m; ++a) {
        if (a == params.c || a == m - params.c) continue;
        QuadPoly f(1, m);
        f.set_linear(0, a);
        const double norm = eval_gray(f).norm;
        worst_margin = std::max(worst_margin, norm - bound);
        if (norm > bound + kTol) fail(r, {{"polynomial", poly_to_json(f)}, {"norm", norm}, {"bound", bound}});
      }
    }
    // n = 2: +-c xy at q/2, +-c x +- c y at (q/2)^2, everything else below (q/2)^5.
    nlohmann::json entries = nlohmann::json::array();
    for (int m : odd_moduli(3, 15)) {
      const auto params = root_params(m);
      const double half_q = params.q / 2.0;
      QuadPoly top(2, m);
      top.set_quadratic(0, 1, params.c);
      QuadPoly sub(2, m);
      sub.set_linear(0, params.c).set_linear(1, params.c);
      const auto top_key = canonical_form(top).coefficient_key();
      const auto sub_key = canonical_form(sub).coefficient_key();
      double rest = 0.0;
      const auto spec = FamilySpec::all_quadratic(2, m);
      const auto size = *family_size(spec);
      for (std::uint64_t i = 0; i < size; ++i) {
        const auto f = family_member(spec, i);
        const double norm = eval_gray(f).norm;
        const auto key = canonical_form(f).coefficient_key();
        double expected = -1.0;
        if (key == top_key) expected = half_q;
        if (key == sub_key) expected = half_q * half_q;
        if (expected >= 0.0) {
          if (std::abs(norm - expected) > kTol) fail(r, {{"polynomial", poly_to_json(f)}, {"norm", norm}, {"expected", expected}});
        } else {
          rest = std::max(rest, norm);
          if (norm >= std::pow(half_q, 5) + kTol) {
            fail(r, {{"polynomial", poly_to_json(f)}, {"norm", norm}, {"bound", std::pow(half_q, 5)}});
          }
        }
      }
      entries.push_back({{"m", m}, {"max_other", rest}, {"bound_other", std::pow(half_q, 5)}});
    }
    r.details = {{"n1_worst_margin", worst_margin}, {"n2", std::move(entries)}};
  }

  const ClaimConfig& config_;
  std::map<std::pair<int, int>, SearchReport> searches_;
  std::map<std::pair<int, int>, std::vector<double>> norms_;
};

const ClaimInfo& find_claim(std::string_view id) {
  for (const auto& info : claim_catalog()) {
    if (info.id == id || std::to_string(info.number) == id) return info;
  }
  throw std::invalid_argument("unknown claim '" + std::string(id) + "'");
}

}  // namespace

ClaimResult run_claim(std::string_view id, const ClaimConfig& config) {
  ClaimRunner runner(config);
  return runner.run(find_claim(id));
}

std::vector<ClaimResult> run_all_claims(const ClaimConfig& config) {
  ClaimRunner runner(config);
  std::vector<ClaimResult> results;
  for (const auto& info : claim_catalog()) results.push_back(runner.run(info));
  return results;
}

}  // namespace qes
