#pragma once

// Exhaustive search over all k-subsets of a finite metric, in lexicographic
// order. Shared by the coreset selection step and the optimal-gap oracle.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gapratio/metric.hpp"

namespace gapratio {

struct SearchOptions {
  std::uint64_t guard = 0;  // 0: use the caller's default cap on C(n, k)
  bool force = false;       // ignore the cap
  unsigned threads = 1;
  EvalMode mode = EvalMode::automatic;
};

struct SubsetSearchResult {
  std::vector<Index> best;        // first subset (lexicographic) with minimum gap ratio
  GapReport best_report;
  double min_cover = 0.0;         // min over subsets of the covering radius
  std::vector<Index> min_cover_subset;
  double max_pack = 0.0;          // max over subsets of the packing radius
  std::vector<Index> max_pack_subset;
  std::uint64_t examined = 0;
};

/// Requires 2 <= k <= n. Throws Errc::guard_exceeded when C(n, k) exceeds the
/// effective guard and `force` is unset. Work is split over the first index;
/// partial results are merged in index order, so the output does not depend
/// on the thread count.
SubsetSearchResult exhaustive_subset_search(const FiniteMetric& m, std::size_t k,
                                            std::uint64_t default_guard,
                                            const SearchOptions& options);

}  // namespace gapratio
