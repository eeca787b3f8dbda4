#include "qes/sum_engine.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

namespace qes {

std::complex<double> SumValue::normalized() const { return unnormalized.value() / std::ldexp(1.0, n); }

namespace {

void check_guard(const QuadPoly& f) {
  if (f.n() > kMaxEvalVariables) {
    throw GuardError("n=" + std::to_string(f.n()) + " exceeds the evaluation guard of " +
                     std::to_string(kMaxEvalVariables) + " variables; use a random-sample family instead");
  }
}

SumValue make_value(const QuadPoly& f, const std::vector<std::int64_t>& counts) {
  CycInt s(f.m(), counts);
  const double norm = s.abs() / std::ldexp(1.0, f.n());
  return SumValue{std::move(s), f.n(), norm};
}

}  // namespace

SumValue eval_naive(const QuadPoly& f) {
  check_guard(f);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(f.m()), 0);
  const std::uint64_t points = std::uint64_t{1} << f.n();
  for (std::uint64_t mask = 0; mask < points; ++mask) {
    const int sign = std::popcount(mask) % 2 == 0 ? 1 : -1;
    counts[static_cast<std::size_t>(f.evaluate(mask))] += sign;
  }
  return make_value(f, counts);
}

std::vector<std::int64_t> gray_histogram(const QuadPoly& f) {
  check_guard(f);
  const int n = f.n();
  const int m = f.m();
  auto mod = [m](int v) { return ((v % m) + m) % m; };

  std::vector<std::vector<std::pair<int, int>>> neighbours(static_cast<std::size_t>(n));
  std::vector<int> field(f.linear_terms());
  int value = 0;
  for (const auto& [ij, a] : f.quadratic_terms()) {
    neighbours[ij.first].emplace_back(ij.second, a);
    neighbours[ij.second].emplace_back(ij.first, a);
    field[ij.first] = mod(field[ij.first] + a);
    field[ij.second] = mod(field[ij.second] + a);
    value += a;
  }
  for (int b : f.linear_terms()) value += b;
  value = mod(value);

  // Start at x = (1,...,1), where x_1...x_n = 1.
  std::vector<int> x(static_cast<std::size_t>(n), 1);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(m), 0);
  std::int64_t sign = 1;
  counts[static_cast<std::size_t>(value)] += 1;

  const std::uint64_t points = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < points; ++step) {
    const auto i = static_cast<std::size_t>(std::countr_zero(step));
    // Flipping x_i changes f by -2 x_i h_i and each neighbour field by -2 x_i a_ij.
    const int twice_field = (2 * field[i]) % m;
    value = x[i] > 0 ? value - twice_field : value + twice_field;
    if (value < 0) value += m;
    if (value >= m) value -= m;
    for (const auto& [j, a] : neighbours[i]) {
      int& h = field[static_cast<std::size_t>(j)];
      h = x[i] > 0 ? h - (2 * a) % m : h + (2 * a) % m;
      if (h < 0) h += m;
      if (h >= m) h -= m;
    }
    x[i] = -x[i];
    sign = -sign;
    counts[static_cast<std::size_t>(value)] += sign;
  }
  return counts;
}

SumValue eval_gray(const QuadPoly& f) { return make_value(f, gray_histogram(f)); }

unsigned default_thread_count() {
  if (const char* env = std::getenv("QES_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::uint64_t checked_family_size(const FamilySpec& spec, std::uint64_t budget) {
  const auto size = family_size(spec);
  if (!size || *size > budget) {
    throw BudgetExceeded("family " + to_string(spec.kind) + " (n=" + std::to_string(spec.n) +
                         ", m=" + std::to_string(spec.m) + ") exceeds the evaluation budget of " +
                         std::to_string(budget) + "; use a random-sample family instead");
  }
  return *size;
}

void MaxNormCollector::add(const QuadPoly& f, const SumValue& v) {
  ++visited;
  if (v.norm > max_norm) {
    max_norm = v.norm;
    argmax = f;
  }
}

void MaxNormCollector::merge(MaxNormCollector other) {
  visited += other.visited;
  if (other.max_norm > max_norm) {
    max_norm = other.max_norm;
    argmax = std::move(other.argmax);
  }
}

}  // namespace qes
