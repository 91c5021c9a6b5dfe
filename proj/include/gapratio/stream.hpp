#pragma once

// One-pass streaming coreset: the doubling k-center algorithm maintains at
// most k centers and a radius threshold; a grid whose cell side tracks the
// threshold keeps one representative per nonempty cell.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "gapratio/coreset.hpp"
#include "gapratio/metric.hpp"
#include "gapratio/subset_search.hpp"

namespace gapratio {

/// c in the stored-cell bound c * (k + 1) * ceil(1/eps1)^d for d <= 2. Seen
/// points lie within 2 R_thresh of at most k + 1 centers and the cell side is
/// eps3 R_thresh / (2 sqrt d) with 1/eps3 <= 12.5/eps1, so each ball meets at
/// most (100 sqrt(d) / eps1 + 2)^d cells.
inline constexpr double kStreamCellBoundConstant = 20100.0;

struct StreamParams {
  double eps = 0.0;
  double eps1 = 0.0;  // eps / (2 + eps)
  double eps3 = 0.0;  // eps1 / (4 (3 + 2 eps1))
  std::size_t dim = 0;
};

/// Requires 0 < eps < 1/8 and dim >= 1.
StreamParams stream_params(double eps, std::size_t dim);

struct StreamPoint {
  Index position;  // 0-based position in the stream, duplicates included
  std::vector<double> coords;
};

class StreamState {
 public:
  StreamState(std::size_t k, double eps, std::size_t dim);

  /// Feeds one point. Until k distinct points have arrived they only
  /// accumulate as centers; then the threshold, grid and doubling phases
  /// take over. Throws Errc::dimension_mismatch / Errc::non_finite.
  void ingest(std::span<const double> x);

  bool initialized() const noexcept { return initialized_; }
  const StreamParams& params() const noexcept { return params_; }
  std::size_t k() const noexcept { return k_; }

  std::span<const StreamPoint> centers() const noexcept { return centers_; }
  double radius() const noexcept { return radius_; }        // R_thresh
  double cell_side() const noexcept { return cell_side_; }
  std::span<const double> origin() const noexcept { return origin_; }
  const std::map<CellKey, StreamPoint>& cells() const noexcept { return cells_; }

  std::size_t points_seen() const noexcept { return seen_; }
  std::size_t phases() const noexcept { return phases_; }
  std::size_t peak_cells() const noexcept { return peak_cells_; }

 private:
  void start();
  void insert_cell(const StreamPoint& p);
  void double_radius();

  std::size_t k_;
  StreamParams params_;
  bool initialized_ = false;
  std::vector<StreamPoint> centers_;
  double radius_ = 0.0;
  double cell_side_ = 0.0;
  std::vector<double> origin_;
  std::map<CellKey, StreamPoint> cells_;
  std::size_t seen_ = 0;
  std::size_t phases_ = 0;
  std::size_t peak_cells_ = 0;
};

/// Builds a state and feeds `first_points`. Throws Errc::invalid_argument if
/// they hold fewer than k distinct points.
StreamState stream_init(std::span<const std::vector<double>> first_points, std::size_t k,
                        double eps);

struct StreamResult {
  Sample sample;                   // stream positions
  GapReport coreset_report;        // measured inside the final coreset; witnesses are positions
  std::vector<Index> coreset;      // representative positions, increasing
  std::uint64_t examined = 0;
};

/// Best k-subset over the final grid representatives.
StreamResult stream_finalize(const StreamState& state, std::size_t k,
                             const SearchOptions& options = {});

}  // namespace gapratio
