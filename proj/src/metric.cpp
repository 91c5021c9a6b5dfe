#include "gapratio/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "gapratio/error.hpp"
#include "gapratio/kernels.hpp"

namespace gapratio {

// ---------------------------------------------------------------------------
// PointCloud

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows,
                                 std::vector<std::string> labels) {
  PointCloud cloud;
  if (rows.empty()) return cloud;
  if (!labels.empty() && labels.size() != rows.size()) {
    throw Error(Errc::invalid_argument, "label count does not match point count");
  }
  const std::size_t dim = rows.front().size();
  if (dim == 0) throw Error(Errc::dimension_mismatch, "points must have at least one coordinate");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw Error(Errc::dimension_mismatch, "point " + std::to_string(i) + " has " +
                                                std::to_string(rows[i].size()) +
                                                " coordinates, expected " + std::to_string(dim));
    }
    for (double c : rows[i]) {
      if (!std::isfinite(c)) {
        throw Error(Errc::non_finite, "point " + std::to_string(i) + " has a non-finite coordinate");
      }
    }
  }

  // Stable sort groups equal rows with the earliest occurrence first.
  std::vector<Index> order(rows.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return rows[a] < rows[b]; });
  std::vector<bool> keep(rows.size(), true);
  for (std::size_t t = 1; t < order.size(); ++t) {
    if (rows[order[t]] == rows[order[t - 1]]) keep[order[t]] = false;
  }

  for (Index i = 0; i < rows.size(); ++i) {
    if (keep[i]) {
      cloud.source_rows_.push_back(i);
    } else {
      ++cloud.duplicates_removed_;
    }
  }
  cloud.n_ = cloud.source_rows_.size();
  cloud.dim_ = dim;
  cloud.axes_.resize(cloud.n_ * dim);
  for (Index i = 0; i < cloud.n_; ++i) {
    const auto& row = rows[cloud.source_rows_[i]];
    for (std::size_t a = 0; a < dim; ++a) cloud.axes_[a * cloud.n_ + i] = row[a];
  }
  if (!labels.empty()) {
    for (Index src : cloud.source_rows_) cloud.labels_.push_back(std::move(labels[src]));
  }
  return cloud;
}

std::vector<double> PointCloud::point(Index i) const {
  std::vector<double> p(dim_);
  for (std::size_t a = 0; a < dim_; ++a) p[a] = coord(i, a);
  return p;
}

PointCloud PointCloud::subset(std::span<const Index> indices) const {
  PointCloud out;
  out.n_ = indices.size();
  out.dim_ = dim_;
  out.axes_.resize(out.n_ * dim_);
  for (Index t = 0; t < indices.size(); ++t) {
    for (std::size_t a = 0; a < dim_; ++a) out.axes_[a * out.n_ + t] = coord(indices[t], a);
    out.source_rows_.push_back(source_rows_[indices[t]]);
    if (!labels_.empty()) out.labels_.push_back(labels_[indices[t]]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::size_t n, std::vector<Edge> edges, bool weighted)
    : n_(n), edges_(std::move(edges)), weighted_(weighted), neighbors_(n) {
  std::vector<std::pair<Index, Index>> keys;
  keys.reserve(edges_.size());
  for (auto& e : edges_) {
    if (e.u >= n_ || e.v >= n_) {
      throw Error(Errc::invalid_graph, "edge (" + std::to_string(e.u) + ", " +
                                           std::to_string(e.v) + ") has a vertex outside [0, " +
                                           std::to_string(n_) + ")");
    }
    if (e.u == e.v) throw Error(Errc::invalid_graph, "self-loop at vertex " + std::to_string(e.u));
    if (!weighted_) e.weight = 1.0;
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(Errc::invalid_graph, "edge (" + std::to_string(e.u) + ", " +
                                           std::to_string(e.v) + ") has a nonpositive weight");
    }
    keys.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }
  std::sort(keys.begin(), keys.end());
  if (auto dup = std::adjacent_find(keys.begin(), keys.end()); dup != keys.end()) {
    throw Error(Errc::invalid_graph, "parallel edge (" + std::to_string(dup->first) + ", " +
                                         std::to_string(dup->second) + ")");
  }
  for (const auto& e : edges_) {
    neighbors_[e.u].push_back(e.v);
    neighbors_[e.v].push_back(e.u);
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

bool Graph::adjacent(Index u, Index v) const {
  return std::binary_search(neighbors_[u].begin(), neighbors_[u].end(), v);
}

bool Graph::connected() const {
  if (n_ <= 1) return true;
  std::vector<bool> seen(n_, false);
  std::vector<Index> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (Index w : neighbors_[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n_;
}

// ---------------------------------------------------------------------------
// FiniteMetric

const char* to_string(MetricSource source) noexcept {
  switch (source) {
    case MetricSource::euclidean: return "euclidean";
    case MetricSource::graph: return "graph";
    case MetricSource::explicit_matrix: return "explicit";
  }
  return "unknown";
}

FiniteMetric::FiniteMetric(std::size_t n, std::vector<double> dist, MetricSource source)
    : n_(n), dist_(std::move(dist)), source_(source) {}

void FiniteMetric::detect_exact() {
  constexpr double kMaxExact = 9007199254740992.0;  // 2^53
  std::vector<std::int64_t> twice(dist_.size());
  for (std::size_t t = 0; t < dist_.size(); ++t) {
    const double v = 2.0 * dist_[t];
    if (v != std::floor(v) || v >= kMaxExact) return;
    twice[t] = static_cast<std::int64_t>(v);
  }
  exact2x_ = std::move(twice);
}

FiniteMetric FiniteMetric::from_matrix(std::size_t n, std::vector<double> dist,
                                       MetricSource source, bool audit_triangle) {
  if (n == 0) throw Error(Errc::empty_input, "metric has no sites");
  if (dist.size() != n * n) {
    throw Error(Errc::not_a_metric, "distance matrix has " + std::to_string(dist.size()) +
                                        " entries, expected " + std::to_string(n * n));
  }
  for (Index i = 0; i < n; ++i) {
    if (dist[i * n + i] != 0.0) {
      throw Error(Errc::not_a_metric, "nonzero diagonal at site " + std::to_string(i));
    }
    for (Index j = i + 1; j < n; ++j) {
      const double a = dist[i * n + j];
      if (a != dist[j * n + i]) {
        throw Error(Errc::not_a_metric,
                    "asymmetric entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (!(a > 0.0) || !std::isfinite(a)) {
        throw Error(Errc::not_a_metric, "distance (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ") is not positive and finite");
      }
    }
  }
  FiniteMetric m(n, std::move(dist), source);
  if (audit_triangle && m.worst_triangle_violation() > 0.0) {
    throw Error(Errc::not_a_metric, "triangle inequality violated");
  }
  m.detect_exact();
  return m;
}

double FiniteMetric::worst_triangle_violation() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n_; ++i) {
    for (Index j = i + 1; j < n_; ++j) {
      const double dij = (*this)(i, j);
      const double tol = 1e-9 * std::max(1.0, dij);
      for (Index m = 0; m < n_; ++m) {
        if (m == i || m == j) continue;
        worst = std::max(worst, dij - (*this)(i, m) - (*this)(m, j) - tol);
      }
    }
  }
  return n_ < 3 ? 0.0 : worst;
}

FiniteMetric FiniteMetric::restricted(std::span<const Index> sites) const {
  const std::size_t k = sites.size();
  std::vector<double> sub(k * k);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) sub[a * k + b] = (*this)(sites[a], sites[b]);
  }
  FiniteMetric out(k, std::move(sub), source_);
  if (has_exact()) {
    out.exact2x_.resize(k * k);
    for (Index a = 0; a < k; ++a) {
      for (Index b = 0; b < k; ++b) out.exact2x_[a * k + b] = exact2x(sites[a], sites[b]);
    }
  }
  return out;
}

FiniteMetric build_euclidean(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  if (n == 0) throw Error(Errc::empty_input, "point cloud is empty");
  const std::size_t d = cloud.dim();
  const auto& k = kernels::active();
  std::vector<double> dist(n * n);
  std::vector<double> query(d);
  for (Index i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) query[a] = cloud.coord(i, a);
    k.l2_to_point(cloud.axes().data(), n, d, query.data(), dist.data() + i * n);
  }
  FiniteMetric m(n, std::move(dist), MetricSource::euclidean);
  m.detect_exact();
  return m;
}

FiniteMetric build_graph_metric(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) throw Error(Errc::empty_input, "graph has no vertices");
  std::vector<double> dist(n * n, std::numeric_limits<double>::infinity());

  if (!g.weighted()) {
    std::vector<Index> queue(n);
    for (Index s = 0; s < n; ++s) {
      double* row = dist.data() + s * n;
      row[s] = 0.0;
      std::size_t head = 0;
      std::size_t tail = 0;
      queue[tail++] = s;
      while (head < tail) {
        const Index v = queue[head++];
        for (Index w : g.neighbors(v)) {
          if (std::isinf(row[w])) {
            row[w] = row[v] + 1.0;
            queue[tail++] = w;
          }
        }
      }
    }
  } else {
    std::vector<std::vector<std::pair<Index, double>>> adj(n);
    for (const auto& e : g.edges()) {
      adj[e.u].emplace_back(e.v, e.weight);
      adj[e.v].emplace_back(e.u, e.weight);
    }
    using Item = std::pair<double, Index>;
    for (Index s = 0; s < n; ++s) {
      double* row = dist.data() + s * n;
      row[s] = 0.0;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      heap.emplace(0.0, s);
      while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (d > row[v]) continue;
        for (const auto& [w, wt] : adj[v]) {
          if (d + wt < row[w]) {
            row[w] = d + wt;
            heap.emplace(row[w], w);
          }
        }
      }
    }
  }

  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::isinf(dist[i * n + j])) {
        throw Error(Errc::disconnected_graph, "graph is disconnected: no path between " +
                                                  std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
  // Dijkstra sums can differ in the last bit between directions; keep the
  // matrix exactly symmetric.
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) dist[j * n + i] = dist[i * n + j];
  }
  FiniteMetric m(n, std::move(dist), MetricSource::graph);
  m.detect_exact();
  return m;
}

// ---------------------------------------------------------------------------
// Samples and gaps

Sample::Sample(std::vector<Index> indices, std::size_t n_sites) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (indices_.size() < 2) {
    throw Error(Errc::invalid_sample, "a sample needs at least two sites");
  }
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw Error(Errc::invalid_sample, "sample contains duplicate indices");
  }
  if (indices_.back() >= n_sites) {
    throw Error(Errc::invalid_sample, "sample index " + std::to_string(indices_.back()) +
                                          " is outside [0, " + std::to_string(n_sites) + ")");
  }
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept {
  const __int128 lhs = static_cast<__int128>(a.num) * b.den;
  const __int128 rhs = static_cast<__int128>(b.num) * a.den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace {

void check_sample(const FiniteMetric& m, std::span<const Index> sample, std::size_t min_size) {
  if (sample.size() < min_size) {
    throw Error(Errc::invalid_sample, min_size == 1 ? "sample is empty"
                                                    : "a sample needs at least two sites");
  }
  for (std::size_t a = 0; a < sample.size(); ++a) {
    if (sample[a] >= m.size()) {
      throw Error(Errc::invalid_sample, "sample index " + std::to_string(sample[a]) +
                                            " is outside [0, " + std::to_string(m.size()) + ")");
    }
  }
  if (sample.size() <= 32) {
    for (std::size_t a = 0; a < sample.size(); ++a) {
      for (std::size_t b = a + 1; b < sample.size(); ++b) {
        if (sample[a] == sample[b]) {
          throw Error(Errc::invalid_sample, "sample contains duplicate indices");
        }
      }
    }
  } else {
    std::vector<Index> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(Errc::invalid_sample, "sample contains duplicate indices");
    }
  }
}

bool use_exact(const FiniteMetric& m, EvalMode mode) {
  switch (mode) {
    case EvalMode::automatic: return m.has_exact();
    case EvalMode::floating: return false;
    case EvalMode::exact:
      if (!m.has_exact()) {
        throw Error(Errc::invalid_argument, "exact evaluation requested but the metric has "
                                            "non-half-integer distances");
      }
      return true;
  }
  return false;
}

std::pair<Index, Index> ordered(Index a, Index b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

MinGap min_gap(const FiniteMetric& m, std::span<const Index> sample, EvalMode mode) {
  check_sample(m, sample, 2);
  const bool exact = use_exact(m, mode);
  // Scan pairs in lexicographic order of (smaller, larger) site index so that
  // strict improvement leaves the lexicographically smallest minimizer.
  std::vector<Index> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  std::pair<Index, Index> best{sorted[0], sorted[1]};
  if (exact) {
    std::int64_t best2x = m.exact2x(best.first, best.second);
    for (std::size_t a = 0; a < sorted.size(); ++a) {
      const auto row = m.exact_row(sorted[a]);
      for (std::size_t b = a + 1; b < sorted.size(); ++b) {
        if (row[sorted[b]] < best2x) {
          best2x = row[sorted[b]];
          best = {sorted[a], sorted[b]};
        }
      }
    }
    return {static_cast<double>(best2x) / 4.0, best, best2x};
  }
  double best_d = m(best.first, best.second);
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    const auto row = m.row(sorted[a]);
    for (std::size_t b = a + 1; b < sorted.size(); ++b) {
      if (row[sorted[b]] < best_d) {
        best_d = row[sorted[b]];
        best = {sorted[a], sorted[b]};
      }
    }
  }
  return {best_d / 2.0, ordered(best.first, best.second), std::nullopt};
}

MaxGap max_gap(const FiniteMetric& m, std::span<const Index> sample, EvalMode mode) {
  check_sample(m, sample, 1);
  const std::size_t n = m.size();
  if (use_exact(m, mode)) {
    std::vector<std::int64_t> acc(m.exact_row(sample[0]).begin(), m.exact_row(sample[0]).end());
    for (std::size_t t = 1; t < sample.size(); ++t) {
      const auto row = m.exact_row(sample[t]);
      for (Index j = 0; j < n; ++j) acc[j] = std::min(acc[j], row[j]);
    }
    const auto it = std::max_element(acc.begin(), acc.end());  // first maximum
    return {static_cast<double>(*it) / 2.0, static_cast<Index>(it - acc.begin()), *it};
  }
  const auto& k = kernels::active();
  std::vector<double> acc(m.row(sample[0]).begin(), m.row(sample[0]).end());
  for (std::size_t t = 1; t < sample.size(); ++t) k.min_assign(acc.data(), m.row(sample[t]).data(), n);
  const auto best = k.max_loc(acc.data(), n);
  return {best.value, best.index, std::nullopt};
}

GapReport gap_ratio(const FiniteMetric& m, std::span<const Index> sample, EvalMode mode) {
  const MinGap lo = min_gap(m, sample, mode);
  const MaxGap hi = max_gap(m, sample, mode);
  GapReport rep;
  rep.r = lo.r;
  rep.R = hi.R;
  rep.gap_ratio = hi.R / lo.r;
  rep.closest_pair = lo.closest_pair;
  rep.farthest_site = hi.farthest_site;
  rep.exact = lo.pair2x.has_value();
  if (rep.exact) {
    rep.pair2x = *lo.pair2x;
    rep.cover2x = *hi.cover2x;
  }
  return rep;
}

Diameter diameter(const FiniteMetric& m) {
  const std::size_t n = m.size();
  if (n < 2) throw Error(Errc::invalid_argument, "diameter needs at least two sites");
  const auto& k = kernels::active();
  Diameter best{0, 1, m(0, 1)};
  for (Index i = 0; i + 1 < n; ++i) {
    const auto row = m.row(i);
    const auto loc = k.max_loc(row.data() + i + 1, n - i - 1);
    if (loc.value > best.dist) best = {i, i + 1 + loc.index, loc.value};
  }
  return best;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    result = result * (n - i) / (i + 1);
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace gapratio
