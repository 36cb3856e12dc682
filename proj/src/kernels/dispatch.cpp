#include <cstdlib>
#include <stdexcept>
#include <string>

#include "spinchain/kernels.hpp"

namespace spinchain::kernels {

namespace {

constexpr KernelTable kScalarTable{Isa::Scalar,      scalar::sturm_count4, scalar::rotation_sweep,
                                   scalar::dot,      scalar::axpy,         scalar::tridiag_matvec};

#if defined(SPINCHAIN_WITH_AVX2)
constexpr KernelTable kAvx2Table{Isa::Avx2, avx2::sturm_count4, avx2::rotation_sweep,
                                 avx2::dot, avx2::axpy,         avx2::tridiag_matvec};
#endif

const KernelTable& select() {
  const char* forced = std::getenv("SPINCHAIN_SIMD");
  if (forced != nullptr) {
    const std::string name(forced);
    if (name == "scalar") return kScalarTable;
    if (name == "avx2" && isa_available(Isa::Avx2)) return table(Isa::Avx2);
  }
  if (isa_available(Isa::Avx2)) return table(Isa::Avx2);
  return kScalarTable;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(SPINCHAIN_WITH_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
  }
#if defined(SPINCHAIN_WITH_AVX2)
  if (isa == Isa::Avx2) return kAvx2Table;
#endif
  return kScalarTable;
}

const KernelTable& active() {
  static const KernelTable& selected = select();
  return selected;
}

}  // namespace spinchain::kernels
