#include <cmath>

#include "gapratio/kernels.hpp"

namespace gapratio::kernels {
namespace {

void l2_to_point(const double* axes, std::size_t n, std::size_t dim, const double* query,
                 double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      const double diff = axes[a * n + j] - query[a];
      acc = acc + diff * diff;
    }
    out[j] = std::sqrt(acc);
  }
}

void min_assign(double* acc, const double* row, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) acc[j] = row[j] < acc[j] ? row[j] : acc[j];
}

void min_of(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out[j] = b[j] < a[j] ? b[j] : a[j];
}

MaxLoc max_loc(const double* values, std::size_t n) {
  MaxLoc best{values[0], 0};
  for (std::size_t j = 1; j < n; ++j) {
    if (values[j] > best.value) best = {values[j], j};
  }
  return best;
}

MaxLoc min_assign_max_loc(double* acc, const double* row, std::size_t n) {
  MaxLoc best{0.0, 0};
  for (std::size_t j = 0; j < n; ++j) {
    const double v = row[j] < acc[j] ? row[j] : acc[j];
    acc[j] = v;
    if (j == 0 || v > best.value) best = {v, j};
  }
  return best;
}

constexpr KernelTable kScalar{Isa::scalar, l2_to_point, min_assign, min_of, max_loc,
                              min_assign_max_loc};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

}  // namespace gapratio::kernels
