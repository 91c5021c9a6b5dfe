#include "gapratio/geometry2d.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "gapratio/error.hpp"

namespace gapratio {
namespace {

constexpr double kEps = kPredicateTolerance;

double dist(Vec2 a, Vec2 b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c) noexcept {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  return {a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
}

struct Seed {
  Index a, b, c;
};

std::optional<Seed> first_noncollinear(std::span<const Vec2> s) {
  if (s.size() < 3) return std::nullopt;
  Index b = 1;
  while (b < s.size() && s[b] == s[0]) ++b;
  for (Index c = b + 1; c < s.size(); ++c) {
    if (std::abs(orient2d(s[0], s[b], s[c])) > kEps) return Seed{0, b, c};
  }
  return std::nullopt;
}

// Bowyer-Watson over ghost triangles: every convex-hull edge carries a
// triangle whose third vertex is a symbolic point at infinity.
class Builder {
 public:
  explicit Builder(std::span<const Vec2> sites) : s_(sites), ghost_(sites.size()) {}

  Triangulation run() {
    const auto seed = first_noncollinear(s_);
    if (!seed) {
      throw Error(Errc::degenerate_geometry,
                  s_.size() < 3 ? "triangulation needs at least 3 sites" : "all sites are collinear");
    }
    Index a = seed->a, b = seed->b, c = seed->c;
    if (orient2d(s_[a], s_[b], s_[c]) < 0) std::swap(b, c);
    init(a, b, c);
    for (Index p = 0; p < s_.size(); ++p) {
      if (p != a && p != b && p != c) insert(p);
    }
    return collect();
  }

 private:
  struct Tri {
    std::array<Index, 3> v;
    std::array<Index, 3> nb;
    bool alive = true;
  };

  bool is_ghost(const Tri& t) const {
    return t.v[0] == ghost_ || t.v[1] == ghost_ || t.v[2] == ghost_;
  }

  bool conflict(const Tri& t, Vec2 p) const {
    if (!is_ghost(t)) return incircle(s_[t.v[0]], s_[t.v[1]], s_[t.v[2]], p) > kEps;
    const auto g = static_cast<std::size_t>(std::find(t.v.begin(), t.v.end(), ghost_) - t.v.begin());
    const Vec2 a = s_[t.v[(g + 1) % 3]];
    const Vec2 b = s_[t.v[(g + 2) % 3]];
    const double o = orient2d(a, b, p);
    if (o > kEps) return true;  // beyond this hull edge
    if (o < -kEps) return false;
    // On the hull line: only the open segment counts.
    return (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y) > 0.0 &&
           (p.x - b.x) * (a.x - b.x) + (p.y - b.y) * (a.y - b.y) > 0.0;
  }

  void init(Index a, Index b, Index c) {
    // Hull edges are stored as (u, w, ghost) with the outside on the right of
    // u -> w, matching the orientation of the real triangle across the edge.
    tris_.push_back({{a, b, c}, {}, true});
    tris_.push_back({{c, b, ghost_}, {}, true});
    tris_.push_back({{a, c, ghost_}, {}, true});
    tris_.push_back({{b, a, ghost_}, {}, true});
    std::map<std::pair<Index, Index>, std::pair<Index, int>> half;
    for (Index t = 0; t < tris_.size(); ++t) {
      for (int i = 0; i < 3; ++i) half[{tris_[t].v[(i + 1) % 3], tris_[t].v[(i + 2) % 3]}] = {t, i};
    }
    for (Index t = 0; t < tris_.size(); ++t) {
      for (int i = 0; i < 3; ++i) {
        tris_[t].nb[i] = half.at({tris_[t].v[(i + 2) % 3], tris_[t].v[(i + 1) % 3]}).first;
      }
    }
    last_real_ = 0;
  }

  Index locate(Vec2 p) const {
    Index t = last_real_;
    const std::size_t cap = 4 * tris_.size() + 16;
    for (std::size_t step = 0; step < cap; ++step) {
      const Tri& tri = tris_[t];
      if (is_ghost(tri)) return conflict(tri, p) ? t : kNoTriangle;
      Index next = kNoTriangle;
      for (int i = 0; i < 3; ++i) {
        if (orient2d(s_[tri.v[(i + 1) % 3]], s_[tri.v[(i + 2) % 3]], p) < -kEps) {
          next = tri.nb[i];
          break;
        }
      }
      if (next == kNoTriangle) return conflict(tri, p) ? t : kNoTriangle;
      t = next;
    }
    return kNoTriangle;
  }

  void insert(Index pi) {
    const Vec2 p = s_[pi];
    Index start = locate(p);
    if (start == kNoTriangle) {
      for (Index t = 0; t < tris_.size(); ++t) {
        if (tris_[t].alive && conflict(tris_[t], p)) {
          start = t;
          break;
        }
      }
    }
    if (start == kNoTriangle) {
      throw Error(Errc::degenerate_geometry,
                  "site " + std::to_string(pi) + " coincides with an earlier site");
    }

    std::vector<Index> cavity{start};
    in_cavity_.resize(tris_.size(), false);
    in_cavity_[start] = true;
    for (std::size_t q = 0; q < cavity.size(); ++q) {
      for (Index n : tris_[cavity[q]].nb) {
        if (!in_cavity_[n] && conflict(tris_[n], p)) {
          in_cavity_[n] = true;
          cavity.push_back(n);
        }
      }
    }

    starts_.assign(s_.size() + 1, kNoTriangle);
    ends_.assign(s_.size() + 1, kNoTriangle);
    std::vector<Index> created;
    for (Index t : cavity) {
      for (int i = 0; i < 3; ++i) {
        const Index outer = tris_[t].nb[i];
        if (in_cavity_[outer]) continue;
        const Index u = tris_[t].v[(i + 1) % 3];
        const Index w = tris_[t].v[(i + 2) % 3];
        const Index id = tris_.size();
        tris_.push_back({{u, w, pi}, {kNoTriangle, kNoTriangle, outer}, true});
        for (Index& back : tris_[outer].nb) {
          if (back == t) back = id;
        }
        starts_[u] = id;
        ends_[w] = id;
        created.push_back(id);
      }
    }
    for (Index id : created) {
      tris_[id].nb[0] = starts_[tris_[id].v[1]];
      tris_[id].nb[1] = ends_[tris_[id].v[0]];
      if (!is_ghost(tris_[id])) last_real_ = id;
    }
    for (Index t : cavity) {
      tris_[t].alive = false;
      in_cavity_[t] = false;
    }
    in_cavity_.resize(tris_.size(), false);
  }

  Triangulation collect() const {
    Triangulation out;
    out.sites.assign(s_.begin(), s_.end());
    std::vector<Index> remap(tris_.size(), kNoTriangle);
    for (Index t = 0; t < tris_.size(); ++t) {
      if (tris_[t].alive && !is_ghost(tris_[t])) {
        remap[t] = out.triangles.size();
        out.triangles.push_back(tris_[t].v);
      }
    }
    for (Index t = 0; t < tris_.size(); ++t) {
      if (remap[t] == kNoTriangle) continue;
      std::array<Index, 3> adj;
      for (int i = 0; i < 3; ++i) adj[i] = remap[tris_[t].nb[i]];
      out.adjacency.push_back(adj);
      const auto& v = tris_[t].v;
      const Vec2 cc = circumcenter(s_[v[0]], s_[v[1]], s_[v[2]]);
      out.circumcenters.push_back(cc);
      out.circumradii.push_back(dist(cc, s_[v[0]]));
    }
    return out;
  }

  std::span<const Vec2> s_;
  Index ghost_;
  std::vector<Tri> tris_;
  std::vector<bool> in_cavity_;
  std::vector<Index> starts_, ends_;
  Index last_real_ = 0;
};

void check_unit_square(std::span<const Vec2> sites) {
  if (sites.empty()) throw Error(Errc::empty_input, "no sites given");
  for (Index i = 0; i < sites.size(); ++i) {
    const Vec2 p = sites[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(Errc::non_finite, "site " + std::to_string(i) + " has a non-finite coordinate");
    }
    if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0) {
      throw Error(Errc::out_of_domain, "site " + std::to_string(i) + " lies outside [0,1]^2");
    }
  }
}

double nearest(std::span<const Vec2> sites, Vec2 x) noexcept {
  double best = INFINITY;
  for (const Vec2& p : sites) {
    const double dx = p.x - x.x;
    const double dy = p.y - x.y;
    best = std::min(best, dx * dx + dy * dy);
  }
  return std::sqrt(best);
}

double clamp_unit(double v) noexcept { return std::clamp(v, 0.0, 1.0); }

// Points where the perpendicular bisector of (u, v) crosses the boundary.
template <typename Fn>
void bisector_hits(Vec2 u, Vec2 v, Fn&& fn) {
  const Vec2 m{(u.x + v.x) / 2.0, (u.y + v.y) / 2.0};
  const Vec2 n{v.x - u.x, v.y - u.y};
  for (double side : {0.0, 1.0}) {
    if (n.y != 0.0) {
      const double y = m.y - (side - m.x) * n.x / n.y;
      if (y >= -kEps && y <= 1.0 + kEps) fn(Vec2{side, clamp_unit(y)});
    }
    if (n.x != 0.0) {
      const double x = m.x - (side - m.y) * n.y / n.x;
      if (x >= -kEps && x <= 1.0 + kEps) fn(Vec2{clamp_unit(x), side});
    }
  }
}

}  // namespace

double orient2d(Vec2 a, Vec2 b, Vec2 c) noexcept {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

double incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) noexcept {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
         clift * (adx * bdy - bdx * ady);
}

std::vector<std::pair<Index, Index>> Triangulation::edges() const {
  std::vector<std::pair<Index, Index>> out;
  for (const auto& t : triangles) {
    for (int i = 0; i < 3; ++i) {
      const Index a = t[i], b = t[(i + 1) % 3];
      out.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Vec2> to_vec2(const PointCloud& cloud) {
  if (!cloud.empty() && cloud.dim() != 2) {
    throw Error(Errc::dimension_mismatch,
                "planar operation needs 2-D points, got dimension " + std::to_string(cloud.dim()));
  }
  std::vector<Vec2> out(cloud.size());
  for (Index i = 0; i < cloud.size(); ++i) out[i] = {cloud.coord(i, 0), cloud.coord(i, 1)};
  return out;
}

Triangulation delaunay(std::span<const Vec2> sites) { return Builder(sites).run(); }

Triangulation delaunay(const PointCloud& cloud) {
  const auto sites = to_vec2(cloud);
  return delaunay(sites);
}

const char* to_string(CandidateKind kind) noexcept {
  switch (kind) {
    case CandidateKind::voronoi_vertex: return "voronoi-vertex";
    case CandidateKind::boundary_intersection: return "boundary-intersection";
    case CandidateKind::corner: return "corner";
  }
  return "unknown";
}

CoveringRadius covering_radius_unit_square(std::span<const Vec2> sites) {
  check_unit_square(sites);
  CoveringRadius best{-1.0, {}, CandidateKind::corner};
  auto offer = [&](Vec2 x, CandidateKind kind) {
    const double d = nearest(sites, x);
    if (d > best.R) best = {d, x, kind};
  };

  if (first_noncollinear(sites)) {
    const Triangulation tri = delaunay(sites);
    for (const Vec2& c : tri.circumcenters) {
      if (c.x >= -kEps && c.x <= 1.0 + kEps && c.y >= -kEps && c.y <= 1.0 + kEps) {
        offer({clamp_unit(c.x), clamp_unit(c.y)}, CandidateKind::voronoi_vertex);
      }
    }
    for (const auto& [u, v] : tri.edges()) {
      bisector_hits(sites[u], sites[v], [&](Vec2 x) { offer(x, CandidateKind::boundary_intersection); });
    }
  } else {
    // No Voronoi vertices; every Voronoi edge lies on some pairwise bisector.
    for (Index u = 0; u < sites.size(); ++u) {
      for (Index v = u + 1; v < sites.size(); ++v) {
        if (sites[u] == sites[v]) continue;
        bisector_hits(sites[u], sites[v], [&](Vec2 x) { offer(x, CandidateKind::boundary_intersection); });
      }
    }
  }
  for (Vec2 corner : {Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}, Vec2{0, 1}}) {
    offer(corner, CandidateKind::corner);
  }
  return best;
}

CoveringRadius covering_radius_unit_square(const PointCloud& cloud) {
  const auto sites = to_vec2(cloud);
  return covering_radius_unit_square(sites);
}

SquareGapReport gap_report_unit_square(std::span<const Vec2> sites) {
  check_unit_square(sites);
  if (sites.size() < 2) throw Error(Errc::invalid_sample, "gap ratio needs at least two sites");
  double closest = INFINITY;
  std::pair<Index, Index> pair{0, 1};
  for (Index i = 0; i < sites.size(); ++i) {
    for (Index j = i + 1; j < sites.size(); ++j) {
      const double d = dist(sites[i], sites[j]);
      if (d < closest) {
        closest = d;
        pair = {i, j};
      }
    }
  }
  if (closest == 0.0) {
    throw Error(Errc::invalid_sample, "sites " + std::to_string(pair.first) + " and " +
                                          std::to_string(pair.second) + " coincide");
  }
  const CoveringRadius cover = covering_radius_unit_square(sites);
  const double r = closest / 2.0;
  return {r, cover.R, cover.R / r, pair, cover.witness, cover.kind};
}

SquareGapReport gap_report_unit_square(const PointCloud& cloud) {
  const auto sites = to_vec2(cloud);
  return gap_report_unit_square(sites);
}

std::array<double, 3> triangle_angles(Vec2 a, Vec2 b, Vec2 c) noexcept {
  auto at = [](Vec2 o, Vec2 p, Vec2 q) {
    const double ux = p.x - o.x, uy = p.y - o.y;
    const double vx = q.x - o.x, vy = q.y - o.y;
    return std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
  };
  return {at(a, b, c), at(b, c, a), at(c, a, b)};
}

AngleAuditReport delaunay_angle_audit(std::span<const Vec2> sites) {
  const SquareGapReport gap = gap_report_unit_square(sites);
  const Triangulation tri = delaunay(sites);
  AngleAuditReport out;
  out.g = gap.gap_ratio;
  out.r = gap.r;
  out.R = gap.R;
  out.theta_bound = std::asin(std::min(1.0, 1.0 / out.g));
  out.triangles = tri.triangles.size();
  const double sin_floor = 1.0 / out.g - 1e-9;
  const double max_ceiling = std::numbers::pi - 2.0 * out.theta_bound + 1e-9;
  auto band = [](Vec2 p) { return std::min({p.x, 1.0 - p.x, p.y, 1.0 - p.y}); };
  for (Index t = 0; t < tri.triangles.size(); ++t) {
    const auto& v = tri.triangles[t];
    if (band(sites[v[0]]) < out.R || band(sites[v[1]]) < out.R || band(sites[v[2]]) < out.R) continue;
    out.interior_triangles.push_back(t);
    const auto ang = triangle_angles(sites[v[0]], sites[v[1]], sites[v[2]]);
    const double lo = *std::min_element(ang.begin(), ang.end());
    const double hi = *std::max_element(ang.begin(), ang.end());
    out.min_interior_angle = std::min(out.min_interior_angle.value_or(lo), lo);
    if (std::sin(lo) < sin_floor || hi > max_ceiling) out.violations.push_back({t, lo, hi});
  }
  return out;
}

AngleAuditReport delaunay_angle_audit(const PointCloud& cloud) {
  const auto sites = to_vec2(cloud);
  return delaunay_angle_audit(sites);
}

}  // namespace gapratio
