#pragma once

// Star discrepancy of planar samples, the gap-based discrepancy bound and the
// closed-form lower bounds on the gap ratio.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "gapratio/geometry2d.hpp"

namespace gapratio {

struct DiscrepancyReport {
  double d_star;
  double x;      // witness corner of the anchored box [0,x] x [0,y]
  double y;
  bool open;     // the supremum is approached by boxes [0,x) x [0,y)
  std::size_t n;
};

/// Exact star discrepancy over the candidate corners {x_i} u {1} times
/// {y_j} u {1}, with closed and open counts. O(n^3). Throws
/// Errc::empty_input or Errc::out_of_domain.
DiscrepancyReport star_discrepancy(std::span<const Vec2> sites);
DiscrepancyReport star_discrepancy(const PointCloud& cloud);

/// (x^2 + y^2) / (r^2 n) - xy
double bound_term_a(double x, double y, double r, std::size_t n) noexcept;
/// xy - (x^2 + y^2) / (4 R^2 n)
double bound_term_b(double x, double y, double R, std::size_t n) noexcept;

/// max of sup A over candidates whose count fraction is >= xy and sup B over
/// those whose count fraction is <= xy, clamped below at 0. Both closed and
/// open counts are considered. Throws Errc::invalid_argument if r <= 0 or
/// R <= 0.
double gap_based_discrepancy_bound(std::span<const Vec2> sites, double r, double R);

enum class BoundKind { graph, unit_square, path_connected };

std::optional<BoundKind> parse_bound_kind(std::string_view name) noexcept;
const char* to_string(BoundKind kind) noexcept;

/// 2/3 for graph metrics; 2/sqrt(3) - (2^{3/2} / 3^{3/4}) / sqrt(k) for k
/// samples of the unit square (k >= 2 required); 1 for path-connected spaces.
double analytic_bound(BoundKind kind, std::optional<std::size_t> k = std::nullopt);

}  // namespace gapratio
