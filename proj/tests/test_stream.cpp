#include <doctest.h>

#include <cmath>
#include <random>

#include "gapratio/error.hpp"
#include "gapratio/oracle.hpp"
#include "gapratio/stream.hpp"
#include "support/oracles.hpp"

using namespace gapratio;

namespace {

double l2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<Index> center_positions(const StreamState& st) {
  std::vector<Index> out;
  for (const auto& c : st.centers()) out.push_back(c.position);
  return out;
}

}  // namespace

TEST_CASE("stream parameters") {
  const auto p = stream_params(0.1, 2);
  CHECK(p.eps1 == doctest::Approx(0.1 / 2.1));
  CHECK(p.eps3 == doctest::Approx(p.eps1 / (4.0 * (3.0 + 2.0 * p.eps1))));
  CHECK(p.eps3 < p.eps1 / 12.0);
  CHECK_THROWS_AS(stream_params(0.125, 2), Error);
  CHECK_THROWS_AS(stream_params(0.0, 2), Error);
  CHECK_THROWS_AS(StreamState(1, 0.1, 2), Error);
}

TEST_CASE("initialization skips repeats") {
  const std::vector<std::vector<double>> s{{0}, {10}, {0}, {3}};
  auto st = stream_init(std::span(s).first(2), 2, 0.1);
  CHECK(center_positions(st) == std::vector<Index>{0, 1});
  CHECK(st.radius() == 10.0);
  st.ingest(s[2]);
  st.ingest(s[3]);
  CHECK(center_positions(st) == std::vector<Index>{0, 1});
  CHECK(st.radius() == 10.0);
  CHECK(st.points_seen() == 4);

  StreamState late(2, 0.1, 1);
  late.ingest(std::vector<double>{4});
  late.ingest(std::vector<double>{4});
  CHECK_FALSE(late.initialized());
  late.ingest(std::vector<double>{6});
  CHECK(late.initialized());
  CHECK(center_positions(late) == std::vector<Index>{0, 2});

  const std::vector<std::vector<double>> dup{{1}, {1}};
  CHECK_THROWS_AS(stream_init(dup, 2, 0.1), Error);
  CHECK_THROWS_AS(stream_init(dup, 2, 0.125), Error);
}

TEST_CASE("a doubling phase") {
  StreamState st(2, 0.1, 1);
  for (double x : {0.0, 1.0, 10.0}) st.ingest(std::vector<double>{x});
  CHECK(st.radius() == 2.0);
  CHECK(st.phases() == 1);
  CHECK(center_positions(st) == std::vector<Index>{0, 2});
  const double side = st.cell_side();
  CHECK(side == doctest::Approx(st.params().eps3 * 2.0 / 2.0));

  const auto cells = st.cells().size();
  st.ingest(std::vector<double>{10.0});
  CHECK(st.points_seen() == 4);
  CHECK(st.cells().size() == cells);
  CHECK(center_positions(st) == std::vector<Index>{0, 2});
  CHECK(st.radius() == 2.0);
  CHECK_THROWS_AS(st.ingest(std::vector<double>{1.0, 2.0}), Error);
}

TEST_CASE("replayed invariants on random streams") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 2 + trial % 4;
    const auto pts = oracle::random_points(rng, 150, 2);
    StreamState st(k, 0.1, 2);
    double last_side = 0.0, last_radius = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      st.ingest(pts[i]);
      if (!st.initialized()) continue;
      const auto c = st.centers();
      CHECK(c.size() <= k);
      for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = a + 1; b < c.size(); ++b) CHECK(l2(c[a].coords, c[b].coords) >= st.radius());
      // Every seen point stays within 2 R_thresh of the centers.
      for (std::size_t j = 0; j <= i; ++j) {
        double near = INFINITY;
        for (const auto& z : c) near = std::min(near, l2(z.coords, pts[j]));
        CHECK(near <= 2.0 * st.radius() * (1 + 1e-12));
      }
      if (last_radius > 0.0) CHECK(st.cell_side() / last_side == doctest::Approx(st.radius() / last_radius));
      last_side = st.cell_side();
      last_radius = st.radius();
      for (const auto& [key, rep] : st.cells()) CHECK(cell_of(rep.coords, st.origin(), st.cell_side()) == key);
    }
  }
}

TEST_CASE("finalize against the oracle") {
  std::mt19937_64 rng(43);
  const auto pts = oracle::random_points(rng, 30, 2);
  StreamState st(3, 0.1, 2);
  for (const auto& p : pts) st.ingest(p);
  const auto res = stream_finalize(st, 3);
  const auto d = oracle::euclidean(pts);
  const auto opt = oracle::optimum(d, 3);
  const auto over_m = oracle::gap(d, std::vector<std::size_t>(res.sample.indices().begin(), res.sample.indices().end()));
  CHECK(over_m.gr <= 1.1 * opt.gr + 1e-9);

  // Replay gives the same answer.
  StreamState again(3, 0.1, 2);
  for (const auto& p : pts) again.ingest(p);
  CHECK(stream_finalize(again, 3).sample == res.sample);
}

TEST_CASE("one phase with one point per cell equals the static search") {
  // Well separated points on a line: no doubling and each point its own cell.
  std::vector<std::vector<double>> pts{{0}, {1}, {2.5}, {3.5}, {4.4}, {1.7}};
  StreamState st(3, 0.1, 1);
  for (const auto& p : pts) st.ingest(p);
  CHECK(st.phases() == 0);
  CHECK(st.cells().size() == pts.size());
  const auto res = stream_finalize(st, 3);
  const auto ref = oracle::optimum(oracle::euclidean(pts), 3);
  CHECK(std::vector<std::size_t>(res.sample.indices().begin(), res.sample.indices().end()) == ref.best);
  CHECK(res.coreset_report.gap_ratio == doctest::Approx(ref.gr));
}

TEST_CASE("coreset property of the final stream grid") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 2 + trial % 2;
    const double eps = 0.1;
    const auto pts = oracle::random_points(rng, 40, 2);
    StreamState st(k, eps, 2);
    for (const auto& p : pts) st.ingest(p);
    const auto res = stream_finalize(st, k);
    const auto d = oracle::euclidean(pts);
    oracle::Matrix ds(res.coreset.size(), std::vector<double>(res.coreset.size()));
    for (std::size_t a = 0; a < res.coreset.size(); ++a)
      for (std::size_t b = 0; b < res.coreset.size(); ++b) ds[a][b] = d[res.coreset[a]][res.coreset[b]];
    oracle::subsets(res.coreset.size(), k, [&](const std::vector<std::size_t>& local) {
      std::vector<std::size_t> global;
      for (auto i : local) global.push_back(res.coreset[i]);
      const double gm = oracle::gap(d, global).gr;
      const double gs = oracle::gap(ds, local).gr;
      CHECK((1.0 - st.params().eps1) * gm <= gs + 1e-12);
    });
    CHECK(st.peak_cells() <= cell_count_bound(k + 1, st.params().eps1, 2, kStreamCellBoundConstant));
  }
}

TEST_CASE("finalize needs k representatives") {
  StreamState st(3, 0.1, 1);
  st.ingest(std::vector<double>{0});
  st.ingest(std::vector<double>{1});
  CHECK_THROWS_AS(stream_finalize(st, 3), Error);
}
