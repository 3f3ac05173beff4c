#include <stdexcept>
#include <string>

#include "simpairs/kernels.hpp"

namespace simpairs::kernels {

namespace {

bool cpu_supports(Kind kind) {
  switch (kind) {
    case Kind::Scalar:
      return true;
    case Kind::Avx2:
#if defined(SIMPAIRS_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Kind::Neon:
#if defined(SIMPAIRS_HAVE_NEON)
      return true;
#else
      return false;
#endif
    case Kind::Auto:
      return true;
  }
  return false;
}

}  // namespace

std::string_view name(Kind kind) {
  switch (kind) {
    case Kind::Auto: return "auto";
    case Kind::Scalar: return "scalar";
    case Kind::Avx2: return "avx2";
    case Kind::Neon: return "neon";
  }
  return "unknown";
}

std::vector<Kind> available() {
  std::vector<Kind> kinds{Kind::Scalar};
  for (Kind k : {Kind::Avx2, Kind::Neon}) {
    if (cpu_supports(k)) kinds.push_back(k);
  }
  return kinds;
}

Kind resolve(Kind requested) {
  if (requested == Kind::Auto) return available().back();
  if (!cpu_supports(requested)) {
    throw std::invalid_argument("dot kernel '" + std::string(name(requested)) + "' is not available on this CPU");
  }
  return requested;
}

DotFn dot_function(Kind kind) {
  switch (resolve(kind)) {
#if defined(SIMPAIRS_HAVE_AVX2)
    case Kind::Avx2: return &dot_avx2;
#endif
#if defined(SIMPAIRS_HAVE_NEON)
    case Kind::Neon: return &dot_neon;
#endif
    default: return &dot_scalar;
  }
}

}  // namespace simpairs::kernels
