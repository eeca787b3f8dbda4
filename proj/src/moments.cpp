#include "qes/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qes {

MomentAccumulator::MomentAccumulator(int modulus, int order) : m(modulus), half_order(order / 2), numerator(modulus) {
  if (order <= 0 || order % 2 != 0) throw std::invalid_argument("moment order must be a positive even integer");
}

void MomentAccumulator::add(const QuadPoly&, const SumValue& v) {
  const CycInt square = v.unnormalized * v.unnormalized.conj();
  CycInt power = square;
  for (int k = 1; k < half_order; ++k) power *= square;
  numerator += power;
  ++members;
}

void MomentAccumulator::merge(MomentAccumulator other) {
  numerator += other.numerator;
  members += other.members;
}

BigRational sixth_moment_bound(int n) {
  // (9n(n-1) + (9n+1) 2^(2-2n)) / 4 * 2^(-3n)
  const BigInt two_pow_2n = BigInt(1) << (2 * n);
  const BigRational head = BigRational(9 * n * (n - 1)) + BigRational(BigInt(9 * n + 1) * 4, two_pow_2n);
  return head / 4 / BigRational(BigInt(1) << (3 * n));
}

bool MomentReport::within_bound(double slack) const {
  return !bound || value_float <= bound->convert_to<double>() + slack;
}

MomentReport moment_exact(const FamilySpec& spec, int order, const SweepOptions& options) {
  if (order != 2 && order != 4 && order != 6) throw std::invalid_argument("moment order must be 2, 4 or 6");
  if (!spec.exhaustive()) throw std::invalid_argument("exact moments need an exhaustive family");
  const auto acc = sweep_family(spec, MomentAccumulator(spec.m, order), options);

  const auto numerator = acc.numerator.as_integer();
  if (!numerator) {
    throw std::logic_error("moment numerator did not reduce to a rational integer (arithmetic bug)");
  }
  MomentReport report;
  report.spec = spec;
  report.order = order;
  report.family_size = acc.members;
  const BigInt denominator = BigInt(acc.members) << (order * spec.n);
  report.value = BigRational(*numerator, denominator);
  report.value_float = report.value.convert_to<double>();

  const BigInt two_pow_n = BigInt(1) << spec.n;
  if (order == 2 && spec.kind == FamilyKind::all_quadratic) {
    report.predicted = BigRational(1, two_pow_n);
  } else if (order == 2 && spec.kind == FamilyKind::homogeneous) {
    report.predicted = BigRational(spec.n % 2 == 0 ? 2 : 0, two_pow_n);
  } else if (order == 6 && spec.kind == FamilyKind::all_quadratic && spec.m > 3) {
    report.bound = sixth_moment_bound(spec.n);
  }
  return report;
}

TailReport tail_bounds(int n, int m, double gamma) {
  require_odd_modulus(m);
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
  TailReport report;
  report.gamma = gamma;
  report.epsilon = std::pow(gamma, n);
  const double g2n = std::pow(gamma, 2 * n);
  report.lower = g2n >= 1.0 ? 0.0 : std::max(0.0, (std::ldexp(1.0, -n) - g2n) / (1.0 - g2n));
  const double t = 2.0 * gamma * gamma;
  double upper = std::min(1.0, std::pow(t, -n));
  if (m > 3) upper = std::min(upper, 9.0 * n * (n + 1) / 4.0 * std::pow(t, -3 * n));
  report.upper = upper;
  return report;
}

namespace {

struct NormList {
  std::vector<double> norms;
  void add(const QuadPoly&, const SumValue& v) { norms.push_back(v.norm); }
  void merge(NormList other) { norms.insert(norms.end(), other.norms.begin(), other.norms.end()); }
};

}  // namespace

std::vector<double> family_norms(const FamilySpec& spec, const SweepOptions& options) {
  return sweep_family(spec, NormList{}, options).norms;
}

TailReport tail_from_norms(const FamilySpec& spec, const std::vector<double>& norms, double gamma) {
  TailReport report = tail_bounds(spec.n, spec.m, gamma);
  std::size_t hits = 0;
  for (double v : norms) {
    if (v >= report.epsilon - 1e-12) ++hits;
  }
  report.empirical = norms.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(norms.size());
  report.exhaustive = spec.exhaustive();
  if (!spec.exhaustive()) report.seed = spec.seed;
  return report;
}

TailReport empirical_tail(const FamilySpec& spec, double gamma, const SweepOptions& options) {
  return tail_from_norms(spec, family_norms(spec, options), gamma);
}

nlohmann::json rational_to_json(const BigRational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  return {{"exact", num.str() + "/" + den.str()},
          {"numerator", num.str()},
          {"denominator", den.str()},
          {"value", q.convert_to<double>()}};
}

nlohmann::json to_json(const MomentReport& report) {
  nlohmann::json j{{"family", family_to_json(report.spec)},
                   {"order", report.order},
                   {"family_size", report.family_size},
                   {"value", rational_to_json(report.value)}};
  if (report.predicted) {
    j["predicted"] = rational_to_json(*report.predicted);
    j["matches_prediction"] = report.matches_prediction();
  }
  if (report.bound) {
    j["bound"] = rational_to_json(*report.bound);
    j["within_bound"] = report.within_bound();
  }
  return j;
}

nlohmann::json to_json(const TailReport& report) {
  nlohmann::json j{{"gamma", report.gamma},       {"epsilon", report.epsilon},
                   {"empirical", report.empirical}, {"lower", report.lower},
                   {"upper", report.upper},       {"exhaustive", report.exhaustive},
                   {"sandwiched", report.sandwiched()}};
  if (report.seed) j["seed"] = *report.seed;
  return j;
}

}  // namespace qes
