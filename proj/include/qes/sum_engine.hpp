#pragma once

#include <algorithm>
#include <complex>
#include <concepts>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qes/cyclotomic.hpp"
#include "qes/polynomial.hpp"

namespace qes {

/// S~(f) = sum_{x in {-1,1}^n} x_1...x_n w^f(x) exactly, and |S| = |S~| / 2^n.
struct SumValue {
  CycInt unnormalized;
  int n;
  double norm;

  /// S(f) as a complex number.
  std::complex<double> normalized() const;
};

/// Thrown when n exceeds an evaluation guard.
class GuardError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an exhaustive family exceeds the sweep budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxEvalVariables = 30;

/// Direct evaluation, recomputing f(x) at every point.
SumValue eval_naive(const QuadPoly& f);

/// Gray-code walk: each step flips one x_i and updates f(x) mod m and the
/// local fields h_j = sum_k a_jk x_k + b_j incrementally.
SumValue eval_gray(const QuadPoly& f);

/// Exponent histogram of the signed sum: counts[e] = sum of x_1...x_n over x with f(x) = e.
std::vector<std::int64_t> gray_histogram(const QuadPoly& f);

/// QES_THREADS if set and positive, else hardware concurrency (at least 1).
unsigned default_thread_count();

struct SweepOptions {
  std::uint64_t budget = 200'000'000;
  unsigned threads = 0;  ///< 0 = default_thread_count()
  /// Members failing the filter are skipped without evaluation.
  std::function<bool(const QuadPoly&)> filter;
};

/// A sweep reduction. Workers get copies of the prototype; merge must be
/// associative and commutative so the result does not depend on partitioning.
template <class C>
concept SumCollector = std::copy_constructible<C> && requires(C c, C other, const QuadPoly& f, const SumValue& v) {
  c.add(f, v);
  c.merge(std::move(other));
};

/// Throws BudgetExceeded unless the family fits the budget (random samples are
/// bounded by their count, which is checked the same way).
std::uint64_t checked_family_size(const FamilySpec& spec, std::uint64_t budget);

/// Visits every family member exactly once and feeds (f, eval_gray(f)) to the collector.
template <SumCollector Collector>
Collector sweep_family(const FamilySpec& spec, const Collector& prototype, const SweepOptions& options = {}) {
  const std::uint64_t size = checked_family_size(spec, options.budget);
  unsigned threads = options.threads == 0 ? default_thread_count() : options.threads;
  threads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, size / 64 + 1)));

  auto run = [&](std::uint64_t begin, std::uint64_t end, Collector& out) {
    for (std::uint64_t index = begin; index < end; ++index) {
      const QuadPoly f = family_member(spec, index);
      if (options.filter && !options.filter(f)) continue;
      out.add(f, eval_gray(f));
    }
  };

  if (threads == 1) {
    Collector out(prototype);
    run(0, size, out);
    return out;
  }

  std::vector<Collector> partial(threads, prototype);
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = size * t / threads;
      const std::uint64_t end = size * (t + 1) / threads;
      workers.emplace_back([&, t, begin, end] {
        try {
          run(begin, end, partial[t]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Collector out(std::move(partial.front()));
  for (unsigned t = 1; t < threads; ++t) out.merge(std::move(partial[t]));
  return out;
}

/// Tracks the largest |S| seen and one polynomial attaining it.
struct MaxNormCollector {
  double max_norm = -1.0;
  std::optional<QuadPoly> argmax;
  std::uint64_t visited = 0;

  void add(const QuadPoly& f, const SumValue& v);
  void merge(MaxNormCollector other);
};

}  // namespace qes
