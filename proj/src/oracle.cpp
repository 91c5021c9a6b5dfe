#include "gapratio/oracle.hpp"

#include <algorithm>

#include "gapratio/error.hpp"

namespace gapratio {
namespace {

void check_vertices(const Graph& g, std::span<const Index> set) {
  for (Index v : set) {
    if (v >= g.size()) {
      throw Error(Errc::invalid_sample, "vertex " + std::to_string(v) + " is outside [0, " +
                                            std::to_string(g.size()) + ")");
    }
  }
}

// Calls fn(subset) for every k-subset of [0, n) in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<Index> c(k);
  for (std::size_t t = 0; t < k; ++t) c[t] = t;
  while (true) {
    fn(std::span<const Index>(c));
    std::size_t t = k;
    while (t > 0 && c[t - 1] == n - k + t - 1) --t;
    if (t == 0) return;
    ++c[t - 1];
    for (std::size_t s = t; s < k; ++s) c[s] = c[s - 1] + 1;
  }
}

void check_guard(std::size_t n, std::size_t k, std::uint64_t guard) {
  const std::uint64_t total = binomial(n, k);
  if (total > guard) {
    throw Error(Errc::guard_exceeded, "C(" + std::to_string(n) + ", " + std::to_string(k) +
                                          ") = " + std::to_string(total) +
                                          " subsets exceeds the enumeration guard " +
                                          std::to_string(guard));
  }
}

}  // namespace

OracleResult optimal_gap_ratio(const FiniteMetric& m, std::size_t k, const SearchOptions& options) {
  auto found = exhaustive_subset_search(m, k, kOracleGuard, options);
  return {Sample(found.best, m.size()),
          found.best_report,
          found.min_cover,
          std::move(found.min_cover_subset),
          found.max_pack,
          std::move(found.max_pack_subset),
          found.examined};
}

bool is_independent_dominating(const Graph& g, std::span<const Index> set) {
  check_vertices(g, set);
  std::vector<bool> in(g.size(), false);
  for (Index v : set) in[v] = true;
  for (Index v : set) {
    for (Index w : g.neighbors(v)) {
      if (in[w]) return false;
    }
  }
  for (Index v = 0; v < g.size(); ++v) {
    if (in[v]) continue;
    const auto nb = g.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](Index w) { return in[w]; })) return false;
  }
  return true;
}

bool is_efficient_dominating(const Graph& g, std::span<const Index> set) {
  check_vertices(g, set);
  std::vector<bool> in(g.size(), false);
  for (Index v : set) in[v] = true;
  for (Index v = 0; v < g.size(); ++v) {
    std::size_t hits = in[v] ? 1 : 0;
    for (Index w : g.neighbors(v)) hits += in[w] ? 1 : 0;
    if (hits != 1) return false;
  }
  return true;
}

FiniteMetric genmet_reduce(const Graph& g) {
  const std::size_t n = g.size();
  if (n < 2) throw Error(Errc::invalid_graph, "reduction needs at least two vertices");
  std::vector<double> dist(n * n, 0.0);
  for (Index u = 0; u < n; ++u) {
    for (Index v = 0; v < n; ++v) {
      if (u != v) dist[u * n + v] = g.adjacent(u, v) ? 1.0 : 2.0;
    }
  }
  // Weights in {1, 2} always satisfy the triangle inequality.
  return FiniteMetric::from_matrix(n, std::move(dist), MetricSource::graph, false);
}

FiniteMetric two_clique_metric(std::size_t n, std::size_t m, double eps, double cross) {
  if (n < 2 || m < 2) throw Error(Errc::invalid_argument, "both cliques need at least two vertices");
  if (!(eps > 0.0)) throw Error(Errc::invalid_argument, "eps must be positive");
  const std::size_t total = n + m;
  std::vector<double> dist(total * total, 0.0);
  for (Index a = 0; a < total; ++a) {
    for (Index b = 0; b < total; ++b) {
      if (a == b) continue;
      const bool a_big = a < n;
      const bool b_big = b < n;
      dist[a * total + b] = a_big && b_big ? 1.0 : (!a_big && !b_big ? eps / 2.0 : cross);
    }
  }
  return FiniteMetric::from_matrix(total, std::move(dist));
}

Certificate check_genmet_equivalence(const Graph& g, std::size_t k, std::uint64_t guard) {
  const std::size_t n = g.size();
  if (k < 2 || k >= n) {
    throw Error(Errc::invalid_argument, "genmet certificate needs 2 <= k < n");
  }
  check_guard(n, k, guard);
  const FiniteMetric m = genmet_reduce(g);
  Certificate cert;
  const Ratio one{1, 1};
  for_each_subset(n, k, [&](std::span<const Index> d) {
    ++cert.subsets_examined;
    const bool ids = is_independent_dominating(g, d);
    const bool unit = gap_ratio(m, d, EvalMode::exact).exact_ratio() == one;
    if (ids && !cert.left) {
      cert.left = true;
      cert.left_witness.emplace(d.begin(), d.end());
    }
    if (unit && !cert.right) {
      cert.right = true;
      cert.right_witness.emplace(d.begin(), d.end());
    }
  });
  cert.agree = cert.left == cert.right;
  return cert;
}

Certificate check_eds_equivalence(const Graph& g, std::size_t k, std::uint64_t guard) {
  const std::size_t n = g.size();
  if (k < 2 || k > n) {
    throw Error(Errc::invalid_argument, "efficient-domination certificate needs 2 <= k <= n");
  }
  check_guard(n, k, guard);
  const FiniteMetric m = build_graph_metric(g);
  Certificate cert;
  cert.agree = true;
  for_each_subset(n, k, [&](std::span<const Index> d) {
    ++cert.subsets_examined;
    const bool eds = is_efficient_dominating(g, d);
    const GapReport rep = gap_ratio(m, d, EvalMode::exact);
    // r = 3/2 <=> closest pair at distance 3 (pair2x = 6); R = 1 <=> cover2x = 2.
    const bool profile = rep.pair2x == 6 && rep.cover2x == 2;
    if (eds && !cert.left) {
      cert.left = true;
      cert.left_witness.emplace(d.begin(), d.end());
    }
    if (profile && !cert.right) {
      cert.right = true;
      cert.right_witness.emplace(d.begin(), d.end());
    }
    if (eds != profile && cert.agree) {
      cert.agree = false;
      cert.counterexample.emplace(d.begin(), d.end());
    }
  });
  return cert;
}

}  // namespace gapratio
