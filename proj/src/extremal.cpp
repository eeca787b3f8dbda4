#include "qes/extremal.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "qes/cyclotomic.hpp"

namespace qes {

double conjectured_bound(int n, int m) { return std::pow(root_params(m).q / 2.0, (n + 1) / 2); }

double gap_bound(int n, int m) { return std::pow(root_params(m).q / 2.0, (n + 1) / 2 + 1); }

QuadPoly canonical_extremal(int n, int m) {
  const int c = root_params(m).c;
  QuadPoly f(n, m);
  for (int i = 0; i + 1 < n; i += 2) f.set_quadratic(i, i + 1, c);
  if (n % 2 == 1) f.set_linear(n - 1, c);
  return f;
}

namespace {

// Calls visit(pairs) for every perfect matching of `vertices`.
void for_each_matching(std::vector<int> vertices, std::vector<std::pair<int, int>>& pairs,
                       const std::function<void(const std::vector<std::pair<int, int>>&)>& visit) {
  if (vertices.empty()) {
    visit(pairs);
    return;
  }
  const int first = vertices.front();
  for (std::size_t k = 1; k < vertices.size(); ++k) {
    std::vector<int> rest;
    for (std::size_t t = 1; t < vertices.size(); ++t) {
      if (t != k) rest.push_back(vertices[t]);
    }
    pairs.emplace_back(first, vertices[k]);
    for_each_matching(std::move(rest), pairs, visit);
    pairs.pop_back();
  }
}

}  // namespace

std::vector<QuadPoly> conjecture_forms(int n, int m) {
  const int c = root_params(m).c;
  std::vector<QuadPoly> out;
  auto emit = [&](const std::vector<std::pair<int, int>>& pairs, int lone) {
    const int terms = static_cast<int>(pairs.size()) + (lone >= 0 ? 1 : 0);
    for (std::uint32_t signs = 0; signs < (1U << terms); ++signs) {
      QuadPoly f(n, m);
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        f.set_quadratic(pairs[k].first, pairs[k].second, (signs >> k) & 1U ? -c : c);
      }
      if (lone >= 0) f.set_linear(lone, (signs >> pairs.size()) & 1U ? -c : c);
      out.push_back(std::move(f));
    }
  };
  std::vector<std::pair<int, int>> scratch;
  if (n % 2 == 0) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    for_each_matching(all, scratch, [&](const auto& pairs) { emit(pairs, -1); });
  } else {
    for (int lone = 0; lone < n; ++lone) {
      std::vector<int> rest;
      for (int i = 0; i < n; ++i) {
        if (i != lone) rest.push_back(i);
      }
      for_each_matching(rest, scratch, [&](const auto& pairs) { emit(pairs, lone); });
    }
  }
  return out;
}

std::vector<QuadPoly> conjecture_orbits(int n, int m) {
  std::map<std::vector<int>, QuadPoly> unique;
  for (const auto& f : conjecture_forms(n, m)) {
    auto canon = canonical_form(f);
    unique.emplace(canon.coefficient_key(), std::move(canon));
  }
  std::vector<QuadPoly> out;
  for (auto& [key, f] : unique) out.push_back(std::move(f));
  return out;
}

SharpnessResult verify_sharpness(int n, int m) {
  if (n < 1 || n > kMaxSharpnessVariables) {
    throw std::invalid_argument("verify_sharpness: n must be in [1, " + std::to_string(kMaxSharpnessVariables) + "]");
  }
  SharpnessResult result;
  result.norm = eval_gray(canonical_extremal(n, m)).norm;
  result.expected = conjectured_bound(n, m);
  result.ok = std::abs(result.norm - result.expected) <= 1e-9;
  return result;
}

// ---------------------------------------------------------------------------

void TopTwo::absorb(Level& into, Level&& from) {
  into.value = std::max(into.value, from.value);
  into.truncated = into.truncated || from.truncated;
  for (auto& [key, f] : from.witnesses) {
    if (into.witnesses.size() >= kWitnessCap && !into.witnesses.contains(key)) {
      into.truncated = true;
      continue;
    }
    into.witnesses.emplace(key, std::move(f));
  }
}

void TopTwo::observe(Level level) {
  if (!top) {
    top = std::move(level);
    return;
  }
  if (level.value > top->value + kDistinctTolerance) {
    runner_up = std::move(top);
    top = std::move(level);
    return;
  }
  if (level.value >= top->value - kDistinctTolerance) {
    absorb(*top, std::move(level));
    return;
  }
  if (!runner_up || level.value > runner_up->value + kDistinctTolerance) {
    runner_up = std::move(level);
  } else if (level.value >= runner_up->value - kDistinctTolerance) {
    absorb(*runner_up, std::move(level));
  }
}

void TopTwo::add(const QuadPoly& f, const SumValue& v) {
  ++evaluated;
  // Skip the canonicalization for values that cannot make the top two.
  if (top && runner_up && v.norm < runner_up->value - kDistinctTolerance) return;
  Level level{v.norm, {}, false};
  QuadPoly witness = canonicalize ? canonical_form(f) : f;
  level.witnesses.emplace(witness.coefficient_key(), std::move(witness));
  observe(std::move(level));
}

void TopTwo::merge(TopTwo other) {
  evaluated += other.evaluated;
  if (other.top) observe(std::move(*other.top));
  if (other.runner_up) observe(std::move(*other.runner_up));
}

SearchReport search(const FamilySpec& spec, bool use_symmetry, const SweepOptions& options) {
  TopTwo prototype;
  prototype.canonicalize = !use_symmetry;
  SweepOptions opts = options;
  if (use_symmetry) opts.filter = [](const QuadPoly& f) { return is_canonical(f); };
  auto found = sweep_family(spec, prototype, opts);

  SearchReport report;
  report.spec = spec;
  report.conjectured = conjectured_bound(spec.n, spec.m);
  report.gap_bound = gap_bound(spec.n, spec.m);
  report.exhaustive = spec.exhaustive();
  report.symmetry_reduced = use_symmetry;
  report.evaluated = found.evaluated;
  if (!spec.exhaustive()) report.seed = spec.seed;
  if (found.top) {
    report.max_norm = found.top->value;
    report.max_witnesses_truncated = found.top->truncated;
    for (auto& [key, f] : found.top->witnesses) report.max_witnesses.push_back(std::move(f));
  }
  if (found.runner_up) {
    report.second_norm = found.runner_up->value;
    for (auto& [key, f] : found.runner_up->witnesses) report.second_witnesses.push_back(std::move(f));
  }
  return report;
}

bool verify_gap(const SearchReport& report) {
  if (!report.exhaustive) throw std::invalid_argument("verify_gap needs an exhaustive search report");
  return !report.second_norm || *report.second_norm <= report.gap_bound + kDistinctTolerance;
}

WitnessComparison compare_with_conjecture(const SearchReport& report) {
  std::map<std::vector<int>, QuadPoly> expected;
  for (auto& f : conjecture_orbits(report.spec.n, report.spec.m)) expected.emplace(f.coefficient_key(), f);
  std::map<std::vector<int>, QuadPoly> found;
  for (const auto& f : report.max_witnesses) found.emplace(f.coefficient_key(), f);

  WitnessComparison out;
  for (const auto& [key, f] : expected) {
    if (!found.contains(key)) out.missing.push_back(f);
  }
  for (const auto& [key, f] : found) {
    if (!expected.contains(key)) out.extra.push_back(f);
  }
  out.equal = out.missing.empty() && out.extra.empty();
  return out;
}

nlohmann::json to_json(const SearchReport& report) {
  auto polys = [](const std::vector<QuadPoly>& list) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : list) arr.push_back(poly_to_json(f));
    return arr;
  };
  nlohmann::json j{{"family", family_to_json(report.spec)},
                   {"max_norm", report.max_norm},
                   {"max_witnesses", polys(report.max_witnesses)},
                   {"max_witnesses_truncated", report.max_witnesses_truncated},
                   {"conjectured", report.conjectured},
                   {"gap_bound", report.gap_bound},
                   {"exhaustive", report.exhaustive},
                   {"symmetry_reduced", report.symmetry_reduced},
                   {"evaluated", report.evaluated}};
  j["second_norm"] = report.second_norm ? nlohmann::json(*report.second_norm) : nlohmann::json(nullptr);
  j["second_witnesses"] = polys(report.second_witnesses);
  if (report.seed) j["seed"] = *report.seed;
  return j;
}

std::string search_csv_header() { return "n,m,max,conjectured,second,gap_bound,exhaustive"; }

std::string search_csv_row(const SearchReport& report) {
  char buf[256];
  char second[64] = "";
  if (report.second_norm) std::snprintf(second, sizeof second, "%.17g", *report.second_norm);
  std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%s,%.17g,%s", report.spec.n, report.spec.m, report.max_norm,
                report.conjectured, second, report.gap_bound, report.exhaustive ? "true" : "false");
  return buf;
}

}  // namespace qes
