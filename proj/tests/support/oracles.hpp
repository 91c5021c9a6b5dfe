#pragma once

// Brute-force reference implementations used by the tests. They share no
// code with the library: distances, gaps and subset enumeration are all
// recomputed from scratch on plain nested vectors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;
using Rows = std::vector<std::vector<double>>;

inline Matrix euclidean(const Rows& pts) {
  const std::size_t n = pts.size();
  Matrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t a = 0; a < pts[i].size(); ++a) s += (pts[i][a] - pts[j][a]) * (pts[i][a] - pts[j][a]);
      d[i][j] = std::sqrt(s);
    }
  }
  return d;
}

/// Floyd-Warshall on an edge-mask graph over n <= 8 vertices; unit weights.
/// Unreachable pairs stay at a large sentinel.
inline std::vector<std::vector<int>> hop_distances(int n, std::uint32_t mask) {
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  int bit = 0;
  for (int i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int j = i + 1; j < n; ++j, ++bit) {
      if (mask >> bit & 1u) d[i][j] = d[j][i] = 1;
    }
  }
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
  return d;
}

inline bool connected(int n, std::uint32_t mask) {
  const auto d = hop_distances(n, mask);
  for (int j = 0; j < n; ++j)
    if (d[0][j] >= (1 << 20)) return false;
  return true;
}

/// (u, v) pairs of an edge mask, in the bit order used above.
inline std::vector<std::pair<int, int>> mask_edges(int n, std::uint32_t mask) {
  std::vector<std::pair<int, int>> e;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if (mask >> bit & 1u) e.emplace_back(i, j);
  return e;
}

struct Gap {
  double r;
  double R;
  double gr;
};

inline Gap gap(const Matrix& d, const std::vector<std::size_t>& s) {
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) closest = std::min(closest, d[s[a]][s[b]]);
  double cover = 0.0;
  for (std::size_t q = 0; q < d.size(); ++q) {
    double near = std::numeric_limits<double>::infinity();
    for (std::size_t p : s) near = std::min(near, d[q][p]);
    cover = std::max(cover, near);
  }
  return {closest / 2.0, cover, cover / (closest / 2.0)};
}

/// Covering radius of an arbitrary nonempty site set.
inline double cover(const Matrix& d, const std::vector<std::size_t>& s) {
  double c = 0.0;
  for (std::size_t q = 0; q < d.size(); ++q) {
    double near = std::numeric_limits<double>::infinity();
    for (std::size_t p : s) near = std::min(near, d[q][p]);
    c = std::max(c, near);
  }
  return c;
}

inline void subsets(std::size_t n, std::size_t k,
                    const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t next) {
    if (cur.size() == k) {
      fn(cur);
      return;
    }
    for (std::size_t i = next; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

struct Optimum {
  double gr = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best;
  double R_opt = std::numeric_limits<double>::infinity();
  double r_opt = 0.0;
};

inline Optimum optimum(const Matrix& d, std::size_t k) {
  Optimum o;
  subsets(d.size(), k, [&](const std::vector<std::size_t>& s) {
    const Gap g = gap(d, s);
    if (g.gr < o.gr) {
      o.gr = g.gr;
      o.best = s;
    }
    o.R_opt = std::min(o.R_opt, g.R);
    o.r_opt = std::max(o.r_opt, g.r);
  });
  return o;
}

inline Rows random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim, double lo = 0.0,
                          double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Rows pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& x : p) x = u(rng);
  return pts;
}

}  // namespace oracle
