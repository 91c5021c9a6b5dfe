#include "gapratio/measures.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gapratio/error.hpp"

namespace gapratio {
namespace {

void check_sites(std::span<const Vec2> sites) {
  if (sites.empty()) throw Error(Errc::empty_input, "no sites given");
  for (Index i = 0; i < sites.size(); ++i) {
    const Vec2 p = sites[i];
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
      throw Error(Errc::out_of_domain, "site " + std::to_string(i) + " lies outside [0,1]^2");
    }
  }
}

std::vector<double> axis_candidates(std::span<const Vec2> sites, bool use_x) {
  std::vector<double> v;
  v.reserve(sites.size() + 1);
  for (const Vec2& p : sites) v.push_back(use_x ? p.x : p.y);
  v.push_back(1.0);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Calls fn(x, y, closed_count, open_count) for every candidate corner.
template <typename Fn>
void for_each_corner(std::span<const Vec2> sites, Fn&& fn) {
  const auto xs = axis_candidates(sites, true);
  const auto ys = axis_candidates(sites, false);
  for (double x : xs) {
    for (double y : ys) {
      std::size_t closed = 0, open = 0;
      for (const Vec2& p : sites) {
        closed += (p.x <= x && p.y <= y) ? 1 : 0;
        open += (p.x < x && p.y < y) ? 1 : 0;
      }
      fn(x, y, closed, open);
    }
  }
}

}  // namespace

DiscrepancyReport star_discrepancy(std::span<const Vec2> sites) {
  check_sites(sites);
  const std::size_t n = sites.size();
  const double nd = static_cast<double>(n);
  DiscrepancyReport best{-1.0, 0.0, 0.0, false, n};
  for_each_corner(sites, [&](double x, double y, std::size_t closed, std::size_t open) {
    const double vol = x * y;
    // Closed boxes overshoot the volume; open limits undershoot it.
    const double over = static_cast<double>(closed) / nd - vol;
    const double under = vol - static_cast<double>(open) / nd;
    if (over > best.d_star) best = {over, x, y, false, n};
    if (under > best.d_star) best = {under, x, y, true, n};
  });
  best.d_star = std::max(best.d_star, 0.0);
  return best;
}

DiscrepancyReport star_discrepancy(const PointCloud& cloud) {
  const auto sites = to_vec2(cloud);
  return star_discrepancy(sites);
}

double bound_term_a(double x, double y, double r, std::size_t n) noexcept {
  return (x * x + y * y) / (r * r * static_cast<double>(n)) - x * y;
}

double bound_term_b(double x, double y, double R, std::size_t n) noexcept {
  return x * y - (x * x + y * y) / (4.0 * R * R * static_cast<double>(n));
}

double gap_based_discrepancy_bound(std::span<const Vec2> sites, double r, double R) {
  check_sites(sites);
  if (!(r > 0.0) || !(R > 0.0)) {
    throw Error(Errc::invalid_argument, "gap radii must be positive");
  }
  const std::size_t n = sites.size();
  const double nd = static_cast<double>(n);
  double best = 0.0;
  for_each_corner(sites, [&](double x, double y, std::size_t closed, std::size_t open) {
    const double vol = x * y;
    for (std::size_t count : {closed, open}) {
      const double frac = static_cast<double>(count) / nd;
      if (frac >= vol) best = std::max(best, bound_term_a(x, y, r, n));
      if (frac <= vol) best = std::max(best, bound_term_b(x, y, R, n));
    }
  });
  return best;
}

std::optional<BoundKind> parse_bound_kind(std::string_view name) noexcept {
  if (name == "graph") return BoundKind::graph;
  if (name == "unit-square" || name == "unit_square") return BoundKind::unit_square;
  if (name == "path-connected" || name == "path_connected") return BoundKind::path_connected;
  return std::nullopt;
}

const char* to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::graph: return "graph";
    case BoundKind::unit_square: return "unit-square";
    case BoundKind::path_connected: return "path-connected";
  }
  return "unknown";
}

double analytic_bound(BoundKind kind, std::optional<std::size_t> k) {
  switch (kind) {
    case BoundKind::graph:
      return 2.0 / 3.0;
    case BoundKind::path_connected:
      return 1.0;
    case BoundKind::unit_square: {
      if (!k) throw Error(Errc::invalid_argument, "the unit-square bound needs k");
      if (*k < 2) throw Error(Errc::invalid_argument, "the unit-square bound needs k >= 2");
      const double c = std::pow(2.0, 1.5) / std::pow(3.0, 0.75);
      return 2.0 / std::sqrt(3.0) - c / std::sqrt(static_cast<double>(*k));
    }
  }
  throw Error(Errc::invalid_argument, "unknown bound kind");
}

}  // namespace gapratio
