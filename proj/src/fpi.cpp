#include "gapratio/fpi.hpp"

#include <algorithm>
#include <cmath>

#include "gapratio/error.hpp"
#include "gapratio/kernels.hpp"

namespace gapratio {

FpiResult farthest_point_insertion(const FiniteMetric& m, std::size_t k, EvalMode mode) {
  const std::size_t n = m.size();
  if (k < 2 || k > n) {
    throw Error(Errc::invalid_argument,
                "k must satisfy 2 <= k <= n (k = " + std::to_string(k) + ", n = " + std::to_string(n) + ")");
  }
  const auto& kern = kernels::active();
  const Diameter diam = diameter(m);

  std::vector<Index> order{diam.i, diam.j};
  std::vector<double> to_sample(m.row(diam.i).begin(), m.row(diam.i).end());
  auto far = kern.min_assign_max_loc(to_sample.data(), m.row(diam.j).data(), n);

  FpiTrace trace;
  double r = diam.dist / 2.0;
  trace.steps.push_back({2, diam.j, diam.dist, r, far.value});

  while (order.size() < k) {
    const Index q = far.index;
    const double R_before = far.value;
    order.push_back(q);
    far = kern.min_assign_max_loc(to_sample.data(), m.row(q).data(), n);
    r = std::min(r, R_before / 2.0);
    trace.steps.push_back({order.size(), q, R_before, r, far.value});
  }

  Sample sample(order, n);
  trace.final = gap_ratio(m, sample, mode);
  return {std::move(sample), std::move(order), std::move(trace)};
}

double fpi_ratio_bound(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(Errc::invalid_argument, "alpha must be positive and finite");
  }
  if (alpha >= 1.0) return 2.0 / alpha;            // ratio <= 2
  if (alpha >= 2.0 / 3.0) return 2.0 / alpha;      // ratio <= 3
  return 4.0 / (2.0 - alpha);
}

double rho(std::size_t k) {
  if (k < 2) throw Error(Errc::invalid_argument, "rho(k) needs k >= 2");
  const double sk = std::sqrt(static_cast<double>(k));
  return std::pow(27.0, 0.25) * sk / (std::pow(3.0, 0.25) * sk - std::sqrt(2.0));
}

}  // namespace gapratio
