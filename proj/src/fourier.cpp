#include "qes/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "qes/cyclotomic.hpp"

namespace qes {

Complex lambda_factor(int m, std::int64_t a) { return (root_of_unity(m, a) - root_of_unity(m, -a)) / 2.0; }

Complex mu_factor(int m, std::int64_t a) { return (root_of_unity(m, a) + root_of_unity(m, -a)) / 2.0; }

double Spectrum::max_abs() const {
  double best = 0.0;
  for (const auto& c : table) best = std::max(best, std::abs(c));
  return best;
}

double Spectrum::parseval_sum() const {
  double sum = 0.0;
  for (const auto& c : table) sum += std::norm(c);
  return sum;
}

void Spectrum::write_csv(std::ostream& out) const {
  out << "mask,re,im,abs\n";
  char line[128];
  for (std::size_t s = 0; s < table.size(); ++s) {
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g\n", s, table[s].real(), table[s].imag(),
                  std::abs(table[s]));
    out << line;
  }
}

namespace {

void check_guard(const QuadPoly& f, int limit, const char* what) {
  if (f.n() > limit) {
    throw std::invalid_argument(std::string(what) + ": n=" + std::to_string(f.n()) + " exceeds the limit of " +
                                std::to_string(limit));
  }
}

// values[y] = w^f(y), bit i of y set meaning y_i = -1.
std::vector<Complex> exponential_values(const QuadPoly& f) {
  std::vector<Complex> roots(static_cast<std::size_t>(f.m()));
  for (int k = 0; k < f.m(); ++k) roots[static_cast<std::size_t>(k)] = root_of_unity(f.m(), k);
  std::vector<Complex> values(std::size_t{1} << f.n());
  for (std::size_t y = 0; y < values.size(); ++y) values[y] = roots[static_cast<std::size_t>(f.evaluate(y))];
  return values;
}

}  // namespace

Spectrum spectrum_naive(const QuadPoly& f) {
  check_guard(f, kMaxNaiveSpectrumVariables, "spectrum_naive");
  const auto values = exponential_values(f);
  const double scale = std::ldexp(1.0, -f.n());
  Spectrum out{f.n(), f.m(), std::vector<Complex>(values.size())};
  for (std::size_t s = 0; s < values.size(); ++s) {
    Complex acc{0.0, 0.0};
    for (std::size_t y = 0; y < values.size(); ++y) {
      if (std::popcount(s & y) % 2 == 0) {
        acc += values[y];
      } else {
        acc -= values[y];
      }
    }
    out.table[s] = acc * scale;
  }
  return out;
}

Spectrum spectrum_fwht(const QuadPoly& f) {
  check_guard(f, kMaxFwhtVariables, "spectrum_fwht");
  auto data = exponential_values(f);
  const std::size_t size = data.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t k = block; k < block + half; ++k) {
        const Complex u = data[k];
        const Complex v = data[k + half];
        data[k] = u + v;
        data[k + half] = u - v;
      }
    }
  }
  const double scale = std::ldexp(1.0, -f.n());
  for (auto& c : data) c *= scale;
  return Spectrum{f.n(), f.m(), std::move(data)};
}

namespace {

struct RootedForest {
  std::vector<std::vector<int>> order;  // per component, BFS order from its root
  std::vector<int> parent;
  std::vector<int> parent_weight;
};

RootedForest root_forest(const QuadPoly& f) {
  const auto graph = graph_of(f);
  if (forest_distance(graph) != 0) {
    throw std::invalid_argument("coeff_tree: G(f) contains a cycle; use spectrum_fwht");
  }
  const auto n = static_cast<std::size_t>(f.n());
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (const auto& [ij, a] : f.quadratic_terms()) {
    adj[ij.first].emplace_back(ij.second, a);
    adj[ij.second].emplace_back(ij.first, a);
  }
  RootedForest forest{{}, std::vector<int>(n, -1), std::vector<int>(n, 0)};
  std::vector<bool> seen(n, false);
  for (const auto& component : graph.components()) {
    std::vector<int> order{component.front()};
    seen[component.front()] = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const int u = order[head];
      for (const auto& [w, a] : adj[u]) {
        if (seen[w]) continue;
        seen[w] = true;
        forest.parent[w] = u;
        forest.parent_weight[w] = a;
        order.push_back(w);
      }
    }
    forest.order.push_back(std::move(order));
  }
  return forest;
}

Complex strip_leaves(const QuadPoly& f, const RootedForest& forest, std::uint64_t subset) {
  const int m = f.m();
  const auto n = static_cast<std::size_t>(f.n());
  std::vector<Complex> even(n);
  std::vector<Complex> odd(n);
  for (std::size_t v = 0; v < n; ++v) {
    even[v] = mu_factor(m, f.linear_terms()[v]);
    odd[v] = lambda_factor(m, f.linear_terms()[v]);
  }
  auto in_subset = [subset](int v) { return ((subset >> v) & 1U) != 0; };

  Complex product{1.0, 0.0};
  for (const auto& order : forest.order) {
    for (std::size_t k = order.size(); k-- > 1;) {
      const int leaf = order[k];
      const int up = forest.parent[leaf];
      const int weight = forest.parent_weight[leaf];
      const Complex mu = mu_factor(m, weight);
      const Complex lambda = lambda_factor(m, weight);
      const Complex e0 = in_subset(leaf) ? mu * odd[leaf] : mu * even[leaf];
      const Complex e1 = in_subset(leaf) ? lambda * even[leaf] : lambda * odd[leaf];
      const Complex a0 = even[up];
      const Complex a1 = odd[up];
      even[up] = a0 * e0 + a1 * e1;
      odd[up] = a0 * e1 + a1 * e0;
    }
    const int root = order.front();
    product *= in_subset(root) ? odd[root] : even[root];
  }
  return product;
}

}  // namespace

Complex coeff_tree(const QuadPoly& f, std::uint64_t subset) {
  if (subset >> f.n() != 0) throw std::invalid_argument("coeff_tree: subset has bits beyond n");
  return strip_leaves(f, root_forest(f), subset);
}

Spectrum spectrum_tree(const QuadPoly& f) {
  check_guard(f, kMaxFwhtVariables, "spectrum_tree");
  const auto forest = root_forest(f);
  Spectrum out{f.n(), f.m(), std::vector<Complex>(std::size_t{1} << f.n())};
  for (std::size_t s = 0; s < out.table.size(); ++s) out.table[s] = strip_leaves(f, forest, s);
  return out;
}

ForestCertificate forest_bound_certificate(const QuadPoly& f) {
  const auto params = root_params(f.m());
  const double half_q = params.q / 2.0;
  ForestCertificate cert;
  cert.k = forest_distance(graph_of(f));
  cert.threshold = (f.n() - 2) * std::log2(2.0 / params.q);
  cert.applicable = cert.k == 0 || cert.k <= cert.threshold;
  cert.bound = std::pow(2.0, cert.k / 2.0) * std::pow(half_q, f.n() - 1);
  cert.conjectured = std::pow(half_q, (f.n() + 1) / 2);
  return cert;
}

}  // namespace qes
