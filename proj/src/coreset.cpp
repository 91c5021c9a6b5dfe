#include "gapratio/coreset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gapratio/error.hpp"

namespace gapratio {

EpsParams static_params(double eps, double cover_radius_fpi, std::size_t dim) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw Error(Errc::invalid_argument, "epsilon must lie in (0, 1/2)");
  }
  if (!(cover_radius_fpi > 0.0) || !std::isfinite(cover_radius_fpi)) {
    throw Error(Errc::invalid_argument, "the FPI covering radius must be positive");
  }
  if (dim == 0) throw Error(Errc::invalid_argument, "dimension must be at least 1");
  EpsParams p;
  p.eps = eps;
  p.eps1 = eps / (3.0 + 2.0 * eps);
  p.eps2 = p.eps1 * cover_radius_fpi / (2.0 * std::sqrt(static_cast<double>(dim)));
  p.dim = dim;
  p.cover_radius_fpi = cover_radius_fpi;
  return p;
}

std::size_t cell_count_bound(std::size_t k, double eps1, std::size_t dim, double c) {
  const double per_axis = std::ceil(1.0 / eps1);
  const double bound = c * static_cast<double>(k) * std::pow(per_axis, static_cast<double>(dim));
  if (!(bound < static_cast<double>(std::numeric_limits<std::size_t>::max()))) {
    return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(bound);
}

std::vector<Index> GridCoreset::representatives() const {
  std::vector<Index> reps;
  reps.reserve(cells.size());
  for (const auto& [key, site] : cells) reps.push_back(site);
  std::sort(reps.begin(), reps.end());
  return reps;
}

CellKey cell_of(std::span<const double> point, std::span<const double> origin, double side) {
  CellKey key(point.size());
  for (std::size_t a = 0; a < point.size(); ++a) {
    key[a] = static_cast<std::int64_t>(std::floor((point[a] - origin[a]) / side));
  }
  return key;
}

GridCoreset build_grid_coreset(const PointCloud& cloud, double cell_side,
                               std::optional<std::uint64_t> seed) {
  if (cloud.empty()) throw Error(Errc::empty_input, "point cloud is empty");
  if (!(cell_side > 0.0) || !std::isfinite(cell_side)) {
    throw Error(Errc::invalid_argument, "cell side must be positive and finite");
  }
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dim();
  GridCoreset grid;
  grid.cell_side = cell_side;
  grid.origin.resize(d);
  for (std::size_t a = 0; a < d; ++a) {
    const auto axis = cloud.axes().subspan(a * n, n);
    grid.origin[a] = *std::min_element(axis.begin(), axis.end());
  }

  std::map<CellKey, std::vector<Index>> members;
  std::vector<double> p(d);
  for (Index i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) p[a] = cloud.coord(i, a);
    members[cell_of(p, grid.origin, cell_side)].push_back(i);
  }

  std::optional<std::mt19937_64> rng;
  if (seed) rng.emplace(*seed);
  for (auto& [key, sites] : members) {
    Index rep = sites.front();
    if (rng) {
      std::uniform_int_distribution<std::size_t> pick(0, sites.size() - 1);
      rep = sites[pick(*rng)];
    }
    grid.cells.emplace(key, rep);
  }
  return grid;
}

BestSubset best_k_subset(const FiniteMetric& coreset_metric, std::size_t k,
                         const SearchOptions& options) {
  if (k > coreset_metric.size()) {
    throw Error(Errc::coreset_too_small, "coreset has " + std::to_string(coreset_metric.size()) +
                                             " sites, fewer than k = " + std::to_string(k));
  }
  auto found = exhaustive_subset_search(coreset_metric, k, kCoresetSearchGuard, options);
  return {Sample(found.best, coreset_metric.size()), found.best_report, found.examined};
}

ApproxResult approx_sample(const PointCloud& cloud, std::size_t k, double eps,
                           std::optional<std::uint64_t> seed, const SearchOptions& options) {
  if (cloud.empty()) throw Error(Errc::empty_input, "point cloud is empty");
  return approx_sample(cloud, build_euclidean(cloud), k, eps, seed, options);
}

ApproxResult approx_sample(const PointCloud& cloud, const FiniteMetric& metric, std::size_t k,
                           double eps, std::optional<std::uint64_t> seed,
                           const SearchOptions& options) {
  const std::size_t n = cloud.size();
  if (metric.size() != n) {
    throw Error(Errc::dimension_mismatch, "metric and point cloud sizes differ");
  }
  if (k < 2 || k > n) {
    throw Error(Errc::invalid_argument,
                "k must satisfy 2 <= k <= n (k = " + std::to_string(k) + ", n = " + std::to_string(n) + ")");
  }
  if (!(eps > 0.0 && eps < 0.5)) {
    throw Error(Errc::invalid_argument, "epsilon must lie in (0, 1/2)");
  }

  FpiResult fpi = farthest_point_insertion(metric, k, options.mode);
  const double cover_fpi = fpi.trace.final.R;

  if (cover_fpi == 0.0) {
    // k == n: the whole cloud is the only k-subset.
    GridCoreset grid;
    grid.origin.assign(cloud.dim(), 0.0);
    ApproxResult out{fpi.sample, fpi.trace.final, fpi.trace.final, EpsParams{}, std::move(grid),
                     fpi, 1};
    out.params.eps = eps;
    out.params.eps1 = eps / (3.0 + 2.0 * eps);
    out.params.dim = cloud.dim();
    return out;
  }

  const EpsParams params = static_params(eps, cover_fpi, cloud.dim());
  GridCoreset grid = build_grid_coreset(cloud, params.eps2, seed);
  const std::vector<Index> reps = grid.representatives();
  if (reps.size() < k) {
    throw Error(Errc::coreset_too_small,
                "grid coreset kept " + std::to_string(reps.size()) + " sites, fewer than k = " +
                    std::to_string(k) + "; use a smaller epsilon");
  }

  const FiniteMetric coreset_metric = metric.restricted(reps);
  BestSubset best = best_k_subset(coreset_metric, k, options);

  std::vector<Index> chosen;
  chosen.reserve(k);
  for (Index local : best.sample.indices()) chosen.push_back(reps[local]);
  Sample sample(chosen, n);
  GapReport full = gap_ratio(metric, sample, options.mode);

  // Report coreset witnesses in input indices.
  GapReport in_coreset = best.report;
  in_coreset.closest_pair = {reps[in_coreset.closest_pair.first], reps[in_coreset.closest_pair.second]};
  in_coreset.farthest_site = reps[in_coreset.farthest_site];

  return {std::move(sample), full, in_coreset, params, std::move(grid), std::move(fpi),
          best.examined};
}

}  // namespace gapratio
