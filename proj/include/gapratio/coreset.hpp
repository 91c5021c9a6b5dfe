#pragma once

// Grid coresets for Euclidean point sets and the static (1+eps)-approximate
// sampler built on them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gapratio/fpi.hpp"
#include "gapratio/metric.hpp"
#include "gapratio/subset_search.hpp"

namespace gapratio {

/// Enumeration cap on C(|coreset|, k) for best_k_subset unless forced.
inline constexpr std::uint64_t kCoresetSearchGuard = 50'000'000;

/// Constant c in the regression bound |cells| <= c * k * ceil(1/eps1)^d.
/// A ball of radius R_OPT meets at most (2 R_OPT / cell + 2)^d cells and
/// 2 R_OPT / cell <= 4 sqrt(d) / eps1, which for d <= 2 stays under 64 cells
/// per ceil(1/eps1)^d. Measured ratios are far lower (see test_coreset.cpp).
inline constexpr double kCellBoundConstant = 64.0;

struct EpsParams {
  double eps = 0.0;
  double eps1 = 0.0;  // eps / (3 + 2 eps)
  double eps2 = 0.0;  // cell side: eps1 R_P1 / (2 sqrt d)
  std::size_t dim = 0;
  double cover_radius_fpi = 0.0;  // R_P1
};

/// Requires 0 < eps < 1/2, R_P1 > 0, d >= 1.
EpsParams static_params(double eps, double cover_radius_fpi, std::size_t dim);

/// c * k * ceil(1/eps1)^d, saturating at SIZE_MAX.
std::size_t cell_count_bound(std::size_t k, double eps1, std::size_t dim,
                             double c = kCellBoundConstant);

using CellKey = std::vector<std::int64_t>;

/// Axis-aligned grid of half-open cells [origin + i*side, origin + (i+1)*side)
/// with one representative site per nonempty cell.
struct GridCoreset {
  std::vector<double> origin;
  double cell_side = 0.0;
  std::map<CellKey, Index> cells;  // key -> representative site

  std::size_t size() const noexcept { return cells.size(); }
  /// Representatives in increasing site order.
  std::vector<Index> representatives() const;
};

CellKey cell_of(std::span<const double> point, std::span<const double> origin, double side);

/// Grid anchored at the coordinate-wise minimum of the cloud. Without a seed
/// each cell keeps its lowest-index site; with a seed the representative is a
/// uniform draw among the cell's sites (cells visited in key order).
GridCoreset build_grid_coreset(const PointCloud& cloud, double cell_side,
                               std::optional<std::uint64_t> seed = std::nullopt);

struct BestSubset {
  Sample sample;
  GapReport report;
  std::uint64_t examined;
};

/// Lexicographically first k-subset minimizing the gap ratio, with r and R
/// both measured inside `coreset_metric`.
BestSubset best_k_subset(const FiniteMetric& coreset_metric, std::size_t k,
                         const SearchOptions& options = {});

struct ApproxResult {
  Sample sample;              // indices into the input cloud
  GapReport report;           // measured over the whole cloud
  GapReport coreset_report;   // measured inside the coreset
  EpsParams params;
  GridCoreset grid;
  FpiResult fpi;
  std::uint64_t examined = 0;
};

/// FPI for R_P1, grid coreset with side eps2, exhaustive best k-subset over
/// the coreset, then a gap report of the chosen sample over the full cloud.
/// Throws Errc::coreset_too_small when the grid keeps fewer than k sites.
ApproxResult approx_sample(const PointCloud& cloud, std::size_t k, double eps,
                           std::optional<std::uint64_t> seed = std::nullopt,
                           const SearchOptions& options = {});

/// Same, reusing a metric already built over `cloud`.
ApproxResult approx_sample(const PointCloud& cloud, const FiniteMetric& metric, std::size_t k,
                           double eps, std::optional<std::uint64_t> seed = std::nullopt,
                           const SearchOptions& options = {});

}  // namespace gapratio
