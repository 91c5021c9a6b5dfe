#include "gapratio/stream.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gapratio/error.hpp"

namespace gapratio {
namespace {

double l2(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double diff = a[t] - b[t];
    acc = acc + diff * diff;
  }
  return std::sqrt(acc);
}

std::int64_t floor_half(std::int64_t v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

}  // namespace

StreamParams stream_params(double eps, std::size_t dim) {
  if (!(eps > 0.0 && eps < 0.125)) {
    throw Error(Errc::invalid_argument, "streaming epsilon must lie in (0, 1/8)");
  }
  if (dim == 0) throw Error(Errc::invalid_argument, "dimension must be at least 1");
  StreamParams p;
  p.eps = eps;
  p.eps1 = eps / (2.0 + eps);
  p.eps3 = p.eps1 / (4.0 * (3.0 + 2.0 * p.eps1));
  p.dim = dim;
  return p;
}

StreamState::StreamState(std::size_t k, double eps, std::size_t dim)
    : k_(k), params_(stream_params(eps, dim)) {
  if (k < 2) throw Error(Errc::invalid_argument, "streaming needs k >= 2");
}

void StreamState::ingest(std::span<const double> x) {
  if (x.size() != params_.dim) {
    throw Error(Errc::dimension_mismatch, "stream point " + std::to_string(seen_) + " has " +
                                              std::to_string(x.size()) + " coordinates, expected " +
                                              std::to_string(params_.dim));
  }
  for (double c : x) {
    if (!std::isfinite(c)) {
      throw Error(Errc::non_finite, "stream point " + std::to_string(seen_) +
                                        " has a non-finite coordinate");
    }
  }
  StreamPoint p{seen_++, std::vector<double>(x.begin(), x.end())};

  if (!initialized_) {
    const bool repeat = std::any_of(centers_.begin(), centers_.end(),
                                    [&](const StreamPoint& c) { return c.coords == p.coords; });
    if (!repeat) centers_.push_back(std::move(p));
    if (centers_.size() == k_) start();
    return;
  }

  insert_cell(p);
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& c : centers_) nearest = std::min(nearest, l2(c.coords, p.coords));
  if (nearest > 2.0 * radius_) {
    centers_.push_back(std::move(p));
    if (centers_.size() > k_) double_radius();
  }
}

void StreamState::start() {
  radius_ = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < centers_.size(); ++a) {
    for (std::size_t b = a + 1; b < centers_.size(); ++b) {
      radius_ = std::min(radius_, l2(centers_[a].coords, centers_[b].coords));
    }
  }
  cell_side_ = params_.eps3 * radius_ / (2.0 * std::sqrt(static_cast<double>(params_.dim)));
  origin_ = centers_.front().coords;
  initialized_ = true;
  // Every point seen so far is a center or a repeat of one.
  for (const auto& c : centers_) insert_cell(c);
}

void StreamState::insert_cell(const StreamPoint& p) {
  cells_.try_emplace(cell_of(p.coords, origin_, cell_side_), p);
  peak_cells_ = std::max(peak_cells_, cells_.size());
}

void StreamState::double_radius() {
  while (centers_.size() > k_) {
    radius_ *= 2.0;
    cell_side_ *= 2.0;
    ++phases_;

    // Children are visited in key order, so each parent keeps the
    // representative of its lexicographically smallest nonempty child.
    std::map<CellKey, StreamPoint> merged;
    for (auto& [key, rep] : cells_) {
      CellKey parent(key.size());
      for (std::size_t a = 0; a < key.size(); ++a) parent[a] = floor_half(key[a]);
      merged.try_emplace(std::move(parent), std::move(rep));
    }
    cells_ = std::move(merged);

    std::vector<StreamPoint> kept;
    for (auto& z : centers_) {
      const bool far = std::all_of(kept.begin(), kept.end(), [&](const StreamPoint& c) {
        return l2(c.coords, z.coords) > radius_;
      });
      if (far) kept.push_back(std::move(z));
    }
    centers_ = std::move(kept);
  }
}

StreamState stream_init(std::span<const std::vector<double>> first_points, std::size_t k,
                        double eps) {
  if (first_points.empty()) throw Error(Errc::empty_input, "stream prefix is empty");
  StreamState state(k, eps, first_points.front().size());
  for (const auto& p : first_points) state.ingest(p);
  if (!state.initialized()) {
    throw Error(Errc::invalid_argument, "stream prefix holds fewer than k = " + std::to_string(k) +
                                            " distinct points");
  }
  return state;
}

StreamResult stream_finalize(const StreamState& state, std::size_t k, const SearchOptions& options) {
  if (!state.initialized()) {
    throw Error(Errc::coreset_too_small,
                "stream ended before k = " + std::to_string(state.k()) + " distinct points arrived");
  }
  std::vector<const StreamPoint*> reps;
  for (const auto& [key, rep] : state.cells()) reps.push_back(&rep);
  std::sort(reps.begin(), reps.end(),
            [](const StreamPoint* a, const StreamPoint* b) { return a->position < b->position; });
  if (reps.size() < k) {
    throw Error(Errc::coreset_too_small, "streaming coreset kept " + std::to_string(reps.size()) +
                                             " sites, fewer than k = " + std::to_string(k));
  }

  std::vector<std::vector<double>> rows;
  std::vector<Index> positions;
  for (const auto* r : reps) {
    rows.push_back(r->coords);
    positions.push_back(r->position);
  }
  const FiniteMetric metric = build_euclidean(PointCloud::from_rows(rows));
  BestSubset best = best_k_subset(metric, k, options);

  std::vector<Index> chosen;
  for (Index local : best.sample.indices()) chosen.push_back(positions[local]);
  GapReport report = best.report;
  report.closest_pair = {positions[report.closest_pair.first], positions[report.closest_pair.second]};
  report.farthest_site = positions[report.farthest_site];
  return {Sample(chosen, state.points_seen()), report, std::move(positions), best.examined};
}

}  // namespace gapratio
