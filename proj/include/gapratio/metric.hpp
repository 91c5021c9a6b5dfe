#pragma once

// Finite metric spaces and exact evaluation of the minimum gap (packing
// radius), maximum gap (covering radius) and gap ratio of a sample.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gapratio {

using Index = std::size_t;

/// Points in R^d, stored axis-major (all x coordinates, then all y, ...).
///
/// Ingestion drops exact duplicates, keeping the first occurrence, so every
/// pair of stored points has positive distance.
class PointCloud {
 public:
  PointCloud() = default;

  /// Throws Errc::dimension_mismatch on ragged or zero-length rows and
  /// Errc::non_finite on NaN/inf coordinates. An empty `rows` gives an empty
  /// cloud.
  static PointCloud from_rows(const std::vector<std::vector<double>>& rows,
                              std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return n_ == 0; }

  double coord(Index i, std::size_t axis) const { return axes_[axis * n_ + i]; }
  std::vector<double> point(Index i) const;
  std::span<const double> axes() const noexcept { return axes_; }

  /// Input row each stored point came from.
  std::span<const Index> source_rows() const noexcept { return source_rows_; }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::size_t duplicates_removed() const noexcept { return duplicates_removed_; }

  /// Sub-cloud in the given order. No deduplication is needed since the
  /// parent is already duplicate-free.
  PointCloud subset(std::span<const Index> indices) const;

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> axes_;
  std::vector<Index> source_rows_;
  std::vector<std::string> labels_;
  std::size_t duplicates_removed_ = 0;
};

struct Edge {
  Index u;
  Index v;
  double weight = 1.0;
};

/// Simple undirected graph. Connectivity is not required here; it is checked
/// by build_graph_metric, since the reduction certifiers also take
/// disconnected graphs.
class Graph {
 public:
  /// Throws Errc::invalid_graph on out-of-range ids, self-loops, parallel
  /// edges or nonpositive weights.
  Graph(std::size_t n, std::vector<Edge> edges, bool weighted = false);

  std::size_t size() const noexcept { return n_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  bool weighted() const noexcept { return weighted_; }
  bool adjacent(Index u, Index v) const;
  std::span<const Index> neighbors(Index v) const { return neighbors_[v]; }
  bool connected() const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  bool weighted_;
  std::vector<std::vector<Index>> neighbors_;
};

enum class MetricSource { euclidean, graph, explicit_matrix };

const char* to_string(MetricSource source) noexcept;

/// Dense symmetric distance matrix over n sites.
///
/// When every distance is a half-integer, an integer matrix holding twice the
/// distances is kept alongside; gap evaluation can then run in exact integer
/// arithmetic. Unweighted graph metrics always qualify.
class FiniteMetric {
 public:
  /// Validates shape, symmetry, zero diagonal, positivity off the diagonal
  /// and (when `audit_triangle`) the triangle inequality within 1e-9
  /// relative. Throws Errc::not_a_metric.
  static FiniteMetric from_matrix(std::size_t n, std::vector<double> dist,
                                  MetricSource source = MetricSource::explicit_matrix,
                                  bool audit_triangle = true);

  std::size_t size() const noexcept { return n_; }
  MetricSource source() const noexcept { return source_; }

  double operator()(Index i, Index j) const { return dist_[i * n_ + j]; }
  std::span<const double> row(Index i) const { return {dist_.data() + i * n_, n_}; }
  std::span<const double> matrix() const noexcept { return dist_; }

  bool has_exact() const noexcept { return !exact2x_.empty(); }
  std::int64_t exact2x(Index i, Index j) const { return exact2x_[i * n_ + j]; }
  std::span<const std::int64_t> exact_row(Index i) const {
    return {exact2x_.data() + i * n_, n_};
  }

  /// Induced metric on `sites` (in the given order).
  FiniteMetric restricted(std::span<const Index> sites) const;

  /// Largest triangle-inequality violation d(i,j) - d(i,m) - d(m,j); <= 0 for
  /// a metric. O(n^3).
  double worst_triangle_violation() const;

 private:
  friend FiniteMetric build_euclidean(const PointCloud& cloud);
  friend FiniteMetric build_graph_metric(const Graph& g);

  FiniteMetric(std::size_t n, std::vector<double> dist, MetricSource source);
  void detect_exact();

  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<std::int64_t> exact2x_;
  MetricSource source_ = MetricSource::explicit_matrix;
};

FiniteMetric build_euclidean(const PointCloud& cloud);

/// All-pairs shortest paths: BFS per source for unweighted graphs, Dijkstra
/// otherwise. Throws Errc::disconnected_graph naming an unreachable pair.
FiniteMetric build_graph_metric(const Graph& g);

/// A validated sample: distinct site indices in increasing order, k >= 2.
class Sample {
 public:
  /// Sorts; throws Errc::invalid_sample on duplicates, out-of-range indices or
  /// fewer than two sites.
  Sample(std::vector<Index> indices, std::size_t n_sites);

  std::span<const Index> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  operator std::span<const Index>() const noexcept { return indices_; }

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  std::vector<Index> indices_;
};

/// Which arithmetic gap evaluation uses. `automatic` takes the exact integer
/// path whenever the metric carries one.
enum class EvalMode { automatic, exact, floating };

/// A nonnegative rational num/den with den > 0, compared exactly.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept;
  friend bool operator==(const Ratio& a, const Ratio& b) noexcept {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

struct MinGap {
  double r;
  std::pair<Index, Index> closest_pair;
  std::optional<std::int64_t> pair2x;  // exact: twice the closest distance, = 4r
};

struct MaxGap {
  double R;
  Index farthest_site;
  std::optional<std::int64_t> cover2x;  // exact: twice the covering radius, = 2R
};

struct GapReport {
  double r = 0.0;
  double R = 0.0;
  double gap_ratio = 0.0;
  std::pair<Index, Index> closest_pair{0, 0};
  Index farthest_site = 0;
  bool exact = false;
  std::int64_t pair2x = 0;   // valid when exact
  std::int64_t cover2x = 0;  // valid when exact

  /// R/r = 2 * cover2x / pair2x. Only meaningful when `exact`.
  Ratio exact_ratio() const noexcept { return {2 * cover2x, pair2x}; }
};

/// Half the smallest pairwise distance in the sample. Ties go to the
/// lexicographically smallest pair.
MinGap min_gap(const FiniteMetric& m, std::span<const Index> sample,
               EvalMode mode = EvalMode::automatic);

/// max over all sites q of min over sampled p of d(q, p). Ties go to the
/// smallest site index. Accepts single-site samples.
MaxGap max_gap(const FiniteMetric& m, std::span<const Index> sample,
               EvalMode mode = EvalMode::automatic);

GapReport gap_ratio(const FiniteMetric& m, std::span<const Index> sample,
                    EvalMode mode = EvalMode::automatic);

struct Diameter {
  Index i;
  Index j;
  double dist;
};

/// Farthest pair, lexicographically smallest (i < j) among ties.
Diameter diameter(const FiniteMetric& m);

/// Number of k-subsets of n items, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

}  // namespace gapratio
