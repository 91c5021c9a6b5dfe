#include <doctest.h>

#include <random>

#include "gapratio/error.hpp"
#include "gapratio/metric.hpp"
#include "support/oracles.hpp"

using namespace gapratio;

namespace {

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(n, e);
}

FiniteMetric line(std::initializer_list<double> xs) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x});
  return build_euclidean(PointCloud::from_rows(rows));
}

template <typename Fn>
Errc code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::io_error;
}

}  // namespace

TEST_CASE("point cloud ingestion") {
  const auto c = PointCloud::from_rows({{1, 2}, {3, 4}, {1, 2}, {5, 6}});
  CHECK(c.size() == 3);
  CHECK(c.dim() == 2);
  CHECK(c.duplicates_removed() == 1);
  CHECK(c.source_rows()[2] == 3);
  CHECK(c.coord(1, 1) == 4.0);
  CHECK(code_of([] { PointCloud::from_rows({{1, 2}, {3}}); }) == Errc::dimension_mismatch);
  CHECK(code_of([] { PointCloud::from_rows({{1, NAN}}); }) == Errc::non_finite);
  CHECK(PointCloud::from_rows({}).empty());
}

TEST_CASE("euclidean metric") {
  const auto m = build_euclidean(PointCloud::from_rows({{0, 0}, {3, 4}}));
  CHECK(m(0, 1) == 5.0);
  CHECK(m.source() == MetricSource::euclidean);

  const auto l = line({0, 1, 3});
  CHECK(l(0, 1) == 1.0);
  CHECK(l(0, 2) == 3.0);
  CHECK(l(1, 2) == 2.0);
  CHECK(l.has_exact());

  std::mt19937_64 rng(3);
  const auto pts = oracle::random_points(rng, 10, 3);
  const auto r = build_euclidean(PointCloud::from_rows(pts));
  CHECK(r.worst_triangle_violation() <= 1e-12);
  const auto d = oracle::euclidean(pts);
  for (Index i = 0; i < 10; ++i)
    for (Index j = 0; j < 10; ++j) CHECK(r(i, j) == doctest::Approx(d[i][j]).epsilon(1e-15));
  CHECK_FALSE(r.has_exact());
  CHECK(code_of([] { build_euclidean(PointCloud{}); }) == Errc::empty_input);
}

TEST_CASE("graph metric") {
  const Graph path(3, {{0, 1}, {1, 2}});
  const auto m = build_graph_metric(path);
  CHECK(m(0, 2) == 2.0);
  CHECK(m.exact2x(0, 2) == 4);

  CHECK(build_graph_metric(cycle(6))(0, 3) == 3.0);

  // Complete graph with {1,2} weights keeps every declared weight.
  std::vector<Edge> e;
  const double w[4][4] = {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}};
  for (Index i = 0; i < 4; ++i)
    for (Index j = i + 1; j < 4; ++j) e.push_back({i, j, w[i][j]});
  const auto k4 = build_graph_metric(Graph(4, e, true));
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) CHECK(k4(i, j) == w[i][j]);

  CHECK(code_of([] { build_graph_metric(Graph(4, {{0, 1}, {2, 3}})); }) == Errc::disconnected_graph);
  CHECK(code_of([] { Graph(3, {{0, 0}}); }) == Errc::invalid_graph);
  CHECK(code_of([] { Graph(3, {{0, 1}, {1, 0}}); }) == Errc::invalid_graph);
  CHECK(code_of([] { Graph(3, {{0, 5}}); }) == Errc::invalid_graph);
  CHECK(code_of([] { Graph(3, {{0, 1, -1.0}}, true); }) == Errc::invalid_graph);
}

TEST_CASE("weighted graph metric matches an independent shortest-path oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> wt(0.5, 4.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 9;
    std::vector<Edge> e;
    oracle::Matrix d(n, std::vector<double>(n, 1e300));
    for (Index i = 0; i < n; ++i) d[i][i] = 0;
    for (Index i = 0; i + 1 < n; ++i) {
      const double w = wt(rng);
      e.push_back({i, i + 1, w});
      d[i][i + 1] = d[i + 1][i] = w;
    }
    for (int extra = 0; extra < 8; ++extra) {
      const Index a = rng() % n, b = rng() % n;
      if (a == b || std::abs(static_cast<long>(a) - static_cast<long>(b)) == 1) continue;
      bool dup = false;
      for (const auto& x : e) dup |= (x.u == a && x.v == b) || (x.u == b && x.v == a);
      if (dup) continue;
      const double w = wt(rng);
      e.push_back({a, b, w});
      d[a][b] = d[b][a] = w;
    }
    for (Index m = 0; m < n; ++m)
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
    const auto met = build_graph_metric(Graph(n, e, true));
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) CHECK(met(i, j) == doctest::Approx(d[i][j]).epsilon(1e-12));
  }
}

TEST_CASE("explicit matrices are validated") {
  CHECK(code_of([] { FiniteMetric::from_matrix(2, {0, 1, 2, 0}); }) == Errc::not_a_metric);
  CHECK(code_of([] { FiniteMetric::from_matrix(2, {0, 0, 0, 0}); }) == Errc::not_a_metric);
  CHECK(code_of([] { FiniteMetric::from_matrix(3, {0, 1, 5, 1, 0, 1, 5, 1, 0}); }) == Errc::not_a_metric);
  const auto ok = FiniteMetric::from_matrix(3, {0, 1, 2, 1, 0, 1, 2, 1, 0});
  CHECK(ok.has_exact());
  CHECK(ok.exact2x(0, 2) == 4);
  const auto half = FiniteMetric::from_matrix(2, {0, 0.25, 0.25, 0});
  CHECK_FALSE(half.has_exact());
}

TEST_CASE("minimum gap") {
  const auto l = line({0, 1, 3});
  CHECK(min_gap(l, std::vector<Index>{0, 2}).r == 1.5);
  const auto all = min_gap(l, std::vector<Index>{0, 1, 2});
  CHECK(all.r == 0.5);
  CHECK(all.closest_pair == std::pair<Index, Index>{0, 1});

  const auto c6 = build_graph_metric(cycle(6));
  const auto g = min_gap(c6, std::vector<Index>{0, 3});
  CHECK(g.r == 1.5);
  REQUIRE(g.pair2x);
  CHECK(*g.pair2x == 6);
  CHECK(code_of([&] { min_gap(l, std::vector<Index>{1}); }) == Errc::invalid_sample);
}

TEST_CASE("maximum gap") {
  const auto ten = line({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  const auto g = max_gap(ten, std::vector<Index>{0, 9});
  CHECK(g.R == 4.0);
  CHECK(g.farthest_site == 4);
  CHECK(max_gap(ten, std::vector<Index>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}).R == 0.0);
  CHECK(max_gap(build_graph_metric(cycle(6)), std::vector<Index>{0, 3}).R == 1.0);
  CHECK(max_gap(ten, std::vector<Index>{3}).R == 6.0);
  CHECK(code_of([&] { max_gap(ten, std::vector<Index>{}); }) == Errc::invalid_sample);
}

TEST_CASE("gap ratio") {
  const auto c6 = build_graph_metric(cycle(6));
  const auto rep = gap_ratio(c6, std::vector<Index>{0, 3});
  CHECK(rep.exact);
  CHECK(rep.exact_ratio() == Ratio{2, 3});
  CHECK(rep.r == 1.5);
  CHECK(rep.R == 1.0);
  CHECK(rep.gap_ratio == doctest::Approx(2.0 / 3.0));

  // {1,2}-weighted C4 with diagonals 2; {a, c} is independent and dominating.
  const auto c4 = FiniteMetric::from_matrix(4, {0, 1, 2, 1, 1, 0, 1, 2, 2, 1, 0, 1, 1, 2, 1, 0});
  const auto c4r = gap_ratio(c4, std::vector<Index>{0, 2});
  CHECK(c4r.exact_ratio() == Ratio{1, 1});

  // K3 (unit) and K3 (weight 0.25), far apart: V[K3] plus one small vertex.
  std::vector<double> d(36, 0.0);
  for (Index a = 0; a < 6; ++a)
    for (Index b = 0; b < 6; ++b)
      if (a != b) d[a * 6 + b] = (a < 3 && b < 3) ? 1.0 : (a >= 3 && b >= 3 ? 0.25 : 10.0);
  const auto two = FiniteMetric::from_matrix(6, d);
  CHECK(gap_ratio(two, std::vector<Index>{0, 1, 2, 3}).gap_ratio == doctest::Approx(0.5));

  CHECK(code_of([&] { gap_ratio(c6, std::vector<Index>{0, 0}); }) == Errc::invalid_sample);
  CHECK(code_of([&] { gap_ratio(c6, std::vector<Index>{2}); }) == Errc::invalid_sample);
}

TEST_CASE("witnesses reproduce r and R; exact and float paths agree") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto pts = oracle::random_points(rng, 25, 2);
    const auto m = build_euclidean(PointCloud::from_rows(pts));
    const auto d = oracle::euclidean(pts);
    std::vector<Index> s;
    for (Index i = 0; i < 25; ++i)
      if (rng() % 4 == 0) s.push_back(i);
    if (s.size() < 2) continue;
    const auto rep = gap_ratio(m, s);
    CHECK(m(rep.closest_pair.first, rep.closest_pair.second) / 2.0 == rep.r);
    double near = INFINITY;
    for (Index p : s) near = std::min(near, m(rep.farthest_site, p));
    CHECK(near == rep.R);
    const auto g = oracle::gap(d, std::vector<std::size_t>(s.begin(), s.end()));
    CHECK(rep.r == doctest::Approx(g.r).epsilon(1e-14));
    CHECK(rep.R == doctest::Approx(g.R).epsilon(1e-14));
  }
  // Integer lattice: both paths exist.
  const auto m = line({0, 2, 3, 7, 8, 13});
  for (const std::vector<Index>& s : {std::vector<Index>{0, 3}, {1, 2, 5}, {0, 2, 4}}) {
    const auto e = gap_ratio(m, s, EvalMode::exact);
    const auto f = gap_ratio(m, s, EvalMode::floating);
    CHECK(e.exact);
    CHECK_FALSE(f.exact);
    CHECK(std::abs(e.gap_ratio - f.gap_ratio) <= 1e-12);
  }
}

TEST_CASE("exact ratio matches the graph oracle on small graphs") {
  // All connected graphs on 5 vertices, all samples.
  for (std::uint32_t mask = 0; mask < (1u << 10); ++mask) {
    if (!oracle::connected(5, mask)) continue;
    std::vector<Edge> e;
    for (auto [u, v] : oracle::mask_edges(5, mask)) e.push_back({Index(u), Index(v)});
    const auto m = build_graph_metric(Graph(5, e));
    const auto hop = oracle::hop_distances(5, mask);
    oracle::Matrix d(5, std::vector<double>(5));
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) d[i][j] = hop[i][j];
    for (std::size_t k = 2; k < 5; ++k) {
      oracle::subsets(5, k, [&](const std::vector<std::size_t>& s) {
        const auto rep = gap_ratio(m, std::vector<Index>(s.begin(), s.end()));
        const auto g = oracle::gap(d, s);
        CHECK(rep.r == g.r);
        CHECK(rep.R == g.R);
      });
    }
  }
}

TEST_CASE("diameter") {
  const auto ten = line({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  const auto d = diameter(ten);
  CHECK(d.i == 0);
  CHECK(d.j == 9);
  CHECK(d.dist == 9.0);
  const auto c6 = diameter(build_graph_metric(cycle(6)));
  CHECK(c6.i == 0);
  CHECK(c6.j == 3);
  CHECK(c6.dist == 3.0);
  const auto pair = diameter(line({2, 5}));
  CHECK(pair.dist == 3.0);
  CHECK(code_of([] { diameter(line({1})); }) == Errc::invalid_argument);
}

TEST_CASE("ratio ordering and binomial") {
  CHECK(Ratio{2, 3} < Ratio{1, 1});
  CHECK(Ratio{4, 6} == Ratio{2, 3});
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(200, 100) == UINT64_MAX);
}
