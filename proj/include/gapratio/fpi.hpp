#pragma once

// Farthest-point insertion: start from a diameter pair, then repeatedly add
// the site farthest from the current sample.

#include <cstddef>
#include <vector>

#include "gapratio/metric.hpp"

namespace gapratio {

struct FpiStep {
  std::size_t size;  // |S| after this step
  Index chosen;
  double R_before;   // distance of `chosen` to the previous sample (= its covering radius)
  double r_after;
  double R_after;
};

struct FpiTrace {
  /// steps[0] records the diameter pair (R_before is the diameter, the
  /// covering radius of the singleton {q1}); one further step per insertion.
  std::vector<FpiStep> steps;
  GapReport final;
};

struct FpiResult {
  Sample sample;                // sorted
  std::vector<Index> order;     // insertion order, q1 first
  FpiTrace trace;
};

/// Requires 2 <= k <= n. Ties resolve to the smallest index, both for the
/// diameter pair and for every argmax. O(n^2) for the diameter plus O(nk).
FpiResult farthest_point_insertion(const FiniteMetric& m, std::size_t k,
                                   EvalMode mode = EvalMode::automatic);

/// Worst-case ratio GR_FPI / GR_OPT given the optimum alpha = GR_OPT:
/// 2/alpha for alpha >= 2/3, 4/(2 - alpha) below.
double fpi_ratio_bound(double alpha);

/// Approximation ratio of FPI on the unit square for k samples:
/// 27^(1/4) sqrt(k) / (3^(1/4) sqrt(k) - sqrt(2)). Decreases to sqrt(3).
double rho(std::size_t k);

}  // namespace gapratio
