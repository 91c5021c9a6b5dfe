#pragma once

// Planar support for the unit square: Delaunay triangulation, the covering
// radius of a sample over [0,1]^2 (largest empty circle) and the Delaunay
// angle audit.

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gapratio/metric.hpp"

namespace gapratio {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline constexpr double kPredicateTolerance = 1e-12;
inline constexpr Index kNoTriangle = std::numeric_limits<Index>::max();

/// Twice the signed area of (a, b, c); positive when counterclockwise.
double orient2d(Vec2 a, Vec2 b, Vec2 c) noexcept;

/// Positive when d lies inside the circle through counterclockwise a, b, c.
double incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) noexcept;

struct Triangulation {
  std::vector<Vec2> sites;
  std::vector<std::array<Index, 3>> triangles;   // counterclockwise
  std::vector<Vec2> circumcenters;
  std::vector<double> circumradii;
  // adjacency[t][i]: triangle across the edge opposite vertex i, or kNoTriangle
  // on the convex hull.
  std::vector<std::array<Index, 3>> adjacency;

  /// Each undirected edge once, as (smaller, larger).
  std::vector<std::pair<Index, Index>> edges() const;
};

/// Incremental Bowyer-Watson insertion in index order. Throws
/// Errc::degenerate_geometry for fewer than 3 sites or all sites collinear.
Triangulation delaunay(std::span<const Vec2> sites);
Triangulation delaunay(const PointCloud& cloud);

enum class CandidateKind { voronoi_vertex, boundary_intersection, corner };

const char* to_string(CandidateKind kind) noexcept;

struct CoveringRadius {
  double R;
  Vec2 witness;
  CandidateKind kind;
};

/// max over x in [0,1]^2 of the distance from x to the nearest site. Throws
/// Errc::empty_input or Errc::out_of_domain.
CoveringRadius covering_radius_unit_square(std::span<const Vec2> sites);
CoveringRadius covering_radius_unit_square(const PointCloud& cloud);

struct SquareGapReport {
  double r;
  double R;
  double gap_ratio;
  std::pair<Index, Index> closest_pair;
  Vec2 farthest_point;
  CandidateKind candidate_kind;
};

/// Needs at least two sites.
SquareGapReport gap_report_unit_square(std::span<const Vec2> sites);
SquareGapReport gap_report_unit_square(const PointCloud& cloud);

struct AngleViolation {
  Index triangle;
  double min_angle;
  double max_angle;
};

struct AngleAuditReport {
  double g;              // gap ratio of the sites over the unit square
  double r;
  double R;
  double theta_bound;    // asin(min(1, 1/g))
  std::size_t triangles; // total Delaunay triangles
  std::vector<Index> interior_triangles;
  std::optional<double> min_interior_angle;
  std::vector<AngleViolation> violations;
};

/// Triangles whose three vertices all lie at distance >= R from the boundary
/// of the square must have every angle in [theta, pi - 2 theta].
AngleAuditReport delaunay_angle_audit(std::span<const Vec2> sites);
AngleAuditReport delaunay_angle_audit(const PointCloud& cloud);

/// The three interior angles of triangle (a, b, c), in vertex order.
std::array<double, 3> triangle_angles(Vec2 a, Vec2 b, Vec2 c) noexcept;

std::vector<Vec2> to_vec2(const PointCloud& cloud);

}  // namespace gapratio
