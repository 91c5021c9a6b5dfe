#include <atomic>

#include "gapratio/kernels.hpp"

namespace gapratio::kernels {

#if defined(GAPRATIO_WITH_AVX2)
namespace avx2 {
extern const KernelTable kTable;
}
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(GAPRATIO_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* detect() noexcept {
  if (const KernelTable* t = avx2_kernels()) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() noexcept {
#if defined(GAPRATIO_WITH_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &avx2::kTable : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

bool force_isa(Isa isa) noexcept {
  const KernelTable* t = isa == Isa::avx2 ? avx2_kernels() : &scalar_kernels();
  if (t == nullptr) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace gapratio::kernels
