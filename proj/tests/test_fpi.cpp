#include <doctest.h>

#include <cmath>
#include <random>

#include "gapratio/error.hpp"
#include "gapratio/fpi.hpp"
#include "gapratio/oracle.hpp"
#include "support/oracles.hpp"

using namespace gapratio;

namespace {

FiniteMetric line10() {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 10; ++i) rows.push_back({double(i)});
  return build_euclidean(PointCloud::from_rows(rows));
}

// Independent farthest-point insertion on a plain matrix.
std::vector<std::size_t> reference_fpi(const oracle::Matrix& d, std::size_t k) {
  const std::size_t n = d.size();
  std::size_t a = 0, b = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (d[i][j] > d[a][b]) a = i, b = j;
  std::vector<std::size_t> order{a, b};
  while (order.size() < k) {
    std::size_t best = 0;
    double far = -1.0;
    for (std::size_t q = 0; q < n; ++q) {
      double near = INFINITY;
      for (std::size_t p : order) near = std::min(near, d[q][p]);
      if (near > far) far = near, best = q;
    }
    order.push_back(best);
  }
  return order;
}

}  // namespace

TEST_CASE("farthest-point insertion on a line") {
  const auto m = line10();
  const auto f = farthest_point_insertion(m, 3);
  CHECK(f.order == std::vector<Index>{0, 9, 4});
  CHECK(f.sample == Sample({0, 4, 9}, 10));
  CHECK(f.trace.final.r == 2.0);
  CHECK(f.trace.final.R == 2.0);
  CHECK(f.trace.final.gap_ratio == 1.0);

  const auto all = farthest_point_insertion(m, 10);
  CHECK(all.trace.final.R == 0.0);
  CHECK(all.trace.final.gap_ratio == 0.0);

  CHECK_THROWS_AS(farthest_point_insertion(m, 1), Error);
  CHECK_THROWS_AS(farthest_point_insertion(m, 11), Error);
}

TEST_CASE("trace invariants and agreement with a reference implementation") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 5 + rng() % 60;
    const std::size_t dim = 1 + rng() % 3;
    const auto pts = oracle::random_points(rng, n, dim);
    const auto m = build_euclidean(PointCloud::from_rows(pts));
    const std::size_t k = 2 + rng() % (n - 1);
    const auto f = farthest_point_insertion(m, k);
    const auto d = oracle::euclidean(pts);
    const auto ref = reference_fpi(d, k);
    CHECK(std::vector<std::size_t>(f.order.begin(), f.order.end()) == ref);

    REQUIRE(f.trace.steps.size() == k - 1);
    for (std::size_t i = 0; i < f.trace.steps.size(); ++i) {
      const auto& st = f.trace.steps[i];
      std::vector<Index> prefix(f.order.begin(), f.order.begin() + static_cast<long>(st.size));
      const auto rep = gap_ratio(m, prefix);
      CHECK(rep.r == st.r_after);
      CHECK(rep.R == st.R_after);
      CHECK(st.r_after == st.R_before / 2.0);
      if (i > 0) CHECK(st.R_after <= f.trace.steps[i - 1].R_after);
      CHECK(rep.gap_ratio <= 2.0 + 1e-12);
    }
  }
}

TEST_CASE("scaling distances scales r and R and keeps the order") {
  std::mt19937_64 rng(4);
  const auto pts = oracle::random_points(rng, 30, 2);
  auto scaled = pts;
  for (auto& p : scaled)
    for (auto& x : p) x *= 8.0;
  const auto a = farthest_point_insertion(build_euclidean(PointCloud::from_rows(pts)), 6);
  const auto b = farthest_point_insertion(build_euclidean(PointCloud::from_rows(scaled)), 6);
  CHECK(a.order == b.order);
  CHECK(b.trace.final.R == doctest::Approx(8.0 * a.trace.final.R));
  CHECK(b.trace.final.gap_ratio == doctest::Approx(a.trace.final.gap_ratio));
}

TEST_CASE("fpi ratio bound") {
  CHECK(fpi_ratio_bound(1.0) == 2.0);
  CHECK(fpi_ratio_bound(2.0 / 3.0) == doctest::Approx(3.0));
  CHECK(fpi_ratio_bound(0.5) == doctest::Approx(8.0 / 3.0));
  CHECK(fpi_ratio_bound(1.5) == doctest::Approx(4.0 / 3.0));
  CHECK_THROWS_AS(fpi_ratio_bound(0.0), Error);
  CHECK_THROWS_AS(fpi_ratio_bound(-1.0), Error);
}

TEST_CASE("rho") {
  const double r100 = std::pow(27.0, 0.25) * 10.0 / (std::pow(3.0, 0.25) * 10.0 - std::sqrt(2.0));
  CHECK(rho(100) == doctest::Approx(r100).epsilon(1e-15));
  CHECK(rho(100) == doctest::Approx(1.9405797).epsilon(1e-7));
  CHECK(std::abs(rho(100'000'000) - std::sqrt(3.0)) < 1e-3);
  for (std::size_t k = 2; k < 10000; ++k) CHECK(rho(k + 1) < rho(k));
  CHECK_THROWS_AS(rho(1), Error);
}

TEST_CASE("fpi against the oracle on small connected graphs") {
  for (int n = 3; n <= 6; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      if (!oracle::connected(n, mask)) continue;
      std::vector<Edge> e;
      for (auto [u, v] : oracle::mask_edges(n, mask)) e.push_back({Index(u), Index(v)});
      const auto m = build_graph_metric(Graph(n, e));
      for (std::size_t k = 2; k <= std::min<std::size_t>(4, n); ++k) {
        const auto f = farthest_point_insertion(m, k);
        const auto opt = optimal_gap_ratio(m, k);
        const double alpha = opt.best_report.gap_ratio;
        const double gr = f.trace.final.gap_ratio;
        if (alpha > 0) {
          CHECK(gr <= fpi_ratio_bound(alpha) * alpha + 1e-9);
          CHECK(gr <= 3.0 * alpha + 1e-9);
        } else {
          CHECK(gr == 0.0);
        }
      }
    }
  }
}
