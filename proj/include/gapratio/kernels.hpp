#pragma once

// Data-parallel inner loops shared by the metric, sampling and geometry code.
//
// Every kernel has a scalar reference implementation and, where the build and
// the CPU allow it, an AVX2 variant. The variants perform the same IEEE
// operations in the same order per output lane (no FMA contraction, no
// reassociation), so results are bit-identical across ISAs. The equivalence
// tests in tests/test_kernels.cpp hold them to that.

#include <cstddef>
#include <string_view>

namespace gapratio::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

struct MaxLoc {
  double value;
  std::size_t index;  // smallest index attaining `value`
};

struct KernelTable {
  Isa isa;

  // out[j] = sqrt(sum_a (axes[a * n + j] - query[a])^2), accumulated in axis order.
  // `axes` is axis-major: dim blocks of n coordinates.
  void (*l2_to_point)(const double* axes, std::size_t n, std::size_t dim, const double* query,
                      double* out);

  // acc[j] = min(acc[j], row[j])
  void (*min_assign)(double* acc, const double* row, std::size_t n);

  // out[j] = min(a[j], b[j])
  void (*min_of)(const double* a, const double* b, double* out, std::size_t n);

  // Maximum of values[0..n) with the smallest index among ties. n >= 1.
  MaxLoc (*max_loc)(const double* values, std::size_t n);

  // min_assign followed by max_loc over the updated acc, in one pass.
  MaxLoc (*min_assign_max_loc)(double* acc, const double* row, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

// nullptr when the variant was not compiled in or the CPU lacks the ISA.
const KernelTable* avx2_kernels() noexcept;

// The table used by the library. Chosen once from CPU features; `force_isa`
// overrides it (tests, benchmarking). Forcing an unavailable ISA is ignored
// and returns false.
const KernelTable& active() noexcept;
bool force_isa(Isa isa) noexcept;

}  // namespace gapratio::kernels
