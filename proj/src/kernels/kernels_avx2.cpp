// Compiled with -mavx2 only. Never call into this file without checking
// avx2_kernels() != nullptr first.

#include <immintrin.h>

#include <cmath>

#include "gapratio/kernels.hpp"

namespace gapratio::kernels::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  const __m128d sw = _mm_unpackhi_pd(m, m);
  return _mm_cvtsd_f64(_mm_max_sd(m, sw));
}

std::size_t first_equal(const double* values, std::size_t n, double target) {
  const __m256d t = _mm256_set1_pd(target);
  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(values + j), t, _CMP_EQ_OQ));
    if (mask != 0) return j + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
  }
  for (; j < n; ++j) {
    if (values[j] == target) return j;
  }
  return n;
}

void l2_to_point(const double* axes, std::size_t n, std::size_t dim, const double* query,
                 double* out) {
  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t a = 0; a < dim; ++a) {
      const __m256d diff =
          _mm256_sub_pd(_mm256_loadu_pd(axes + a * n + j), _mm256_set1_pd(query[a]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
    }
    _mm256_storeu_pd(out + j, _mm256_sqrt_pd(acc));
  }
  for (; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      const double diff = axes[a * n + j] - query[a];
      acc = acc + diff * diff;
    }
    out[j] = std::sqrt(acc);
  }
}

// _mm256_min_pd(x, y) yields x < y ? x : y, the scalar reference's expression.
void min_assign(double* acc, const double* row, std::size_t n) {
  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    _mm256_storeu_pd(acc + j, _mm256_min_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(acc + j)));
  }
  for (; j < n; ++j) acc[j] = row[j] < acc[j] ? row[j] : acc[j];
}

void min_of(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    _mm256_storeu_pd(out + j, _mm256_min_pd(_mm256_loadu_pd(b + j), _mm256_loadu_pd(a + j)));
  }
  for (; j < n; ++j) out[j] = b[j] < a[j] ? b[j] : a[j];
}

MaxLoc max_loc(const double* values, std::size_t n) {
  if (n < kLanes) {
    MaxLoc best{values[0], 0};
    for (std::size_t j = 1; j < n; ++j) {
      if (values[j] > best.value) best = {values[j], j};
    }
    return best;
  }
  __m256d m = _mm256_loadu_pd(values);
  std::size_t j = kLanes;
  for (; j + kLanes <= n; j += kLanes) m = _mm256_max_pd(m, _mm256_loadu_pd(values + j));
  double best = hmax(m);
  for (; j < n; ++j) best = values[j] > best ? values[j] : best;
  return {best, first_equal(values, n, best)};
}

MaxLoc min_assign_max_loc(double* acc, const double* row, std::size_t n) {
  if (n < kLanes) {
    MaxLoc best{0.0, 0};
    for (std::size_t j = 0; j < n; ++j) {
      const double v = row[j] < acc[j] ? row[j] : acc[j];
      acc[j] = v;
      if (j == 0 || v > best.value) best = {v, j};
    }
    return best;
  }
  __m256d m = _mm256_min_pd(_mm256_loadu_pd(row), _mm256_loadu_pd(acc));
  _mm256_storeu_pd(acc, m);
  std::size_t j = kLanes;
  for (; j + kLanes <= n; j += kLanes) {
    const __m256d v = _mm256_min_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(acc + j));
    _mm256_storeu_pd(acc + j, v);
    m = _mm256_max_pd(m, v);
  }
  double best = hmax(m);
  for (; j < n; ++j) {
    const double v = row[j] < acc[j] ? row[j] : acc[j];
    acc[j] = v;
    best = v > best ? v : best;
  }
  return {best, first_equal(acc, n, best)};
}

}  // namespace

extern const KernelTable kTable{Isa::avx2, l2_to_point, min_assign, min_of, max_loc,
                                min_assign_max_loc};

}  // namespace gapratio::kernels::avx2
