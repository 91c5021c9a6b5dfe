#pragma once

// Exhaustive optimal-gap oracle and executable forms of the graph reductions
// (independent domination <-> gap ratio 1 on the {1,2}-metric; efficient
// domination <-> the r = 3/2, R = 1 profile on the shortest-path metric).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gapratio/metric.hpp"
#include "gapratio/subset_search.hpp"

namespace gapratio {

inline constexpr std::uint64_t kOracleGuard = 10'000'000;

struct OracleResult {
  Sample best_sample;
  GapReport best_report;   // GR_OPT = best_report.gap_ratio
  double R_opt;            // min over k-subsets of the covering radius
  std::vector<Index> R_opt_witness;
  double r_opt;            // max over k-subsets of the packing radius
  std::vector<Index> r_opt_witness;
  std::uint64_t subsets_examined;
};

/// Exhaustive minimum of the gap ratio over all k-subsets, 2 <= k <= n.
/// R_opt and r_opt come from different optimizers in general, so GR_OPT need
/// not equal R_opt / r_opt.
OracleResult optimal_gap_ratio(const FiniteMetric& m, std::size_t k,
                               const SearchOptions& options = {});

bool is_independent_dominating(const Graph& g, std::span<const Index> set);

/// Every closed neighbourhood N[v] meets the set exactly once.
bool is_efficient_dominating(const Graph& g, std::span<const Index> set);

/// Complete metric on V: 1 for edges of g, 2 for non-edges. n >= 2.
FiniteMetric genmet_reduce(const Graph& g);

/// Disjoint cliques K_n (unit edges) and K_m (edges eps/2) with every cross
/// distance `cross`. Sampling all of K_n plus one vertex of K_m gives gap
/// ratio eps, so discrete spaces have no positive lower bound.
FiniteMetric two_clique_metric(std::size_t n, std::size_t m, double eps, double cross = 10.0);

struct Certificate {
  bool left = false;                       // combinatorial side holds for some k-set
  bool right = false;                      // metric side holds for some k-set
  bool agree = false;                      // left == right, and (eds) per-set agreement
  std::optional<std::vector<Index>> left_witness;
  std::optional<std::vector<Index>> right_witness;
  std::optional<std::vector<Index>> counterexample;  // a set where the sides disagree
  std::uint64_t subsets_examined = 0;
};

/// Exists an independent dominating set of size k  <=>  exists a k-subset of
/// genmet_reduce(g) with gap ratio exactly 1. Requires 2 <= k < n. Exact
/// arithmetic throughout.
Certificate check_genmet_equivalence(const Graph& g, std::size_t k,
                                     std::uint64_t guard = kOracleGuard);

/// For every k-set D of a connected graph: D is efficient dominating  <=>
/// on the shortest-path metric r_D = 3/2 and R_D = 1 (gap ratio 2/3).
/// Requires 2 <= k <= n.
Certificate check_eds_equivalence(const Graph& g, std::size_t k,
                                  std::uint64_t guard = kOracleGuard);

}  // namespace gapratio
