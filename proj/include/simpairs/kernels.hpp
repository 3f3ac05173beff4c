#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace simpairs::kernels {

// All dot-product variants accumulate into four lanes, lane k taking the
// elements at indices = k (mod 4), and reduce as (l0 + l1) + (l2 + l3).
// With multiply and add left unfused, every variant returns the same bits
// as the scalar reference on every input.

enum class Kind { Auto, Scalar, Avx2, Neon };

std::string_view name(Kind kind);

using DotFn = double (*)(const double* a, const double* b, std::size_t n) noexcept;

double dot_scalar(const double* a, const double* b, std::size_t n) noexcept;
#if defined(__x86_64__) || defined(_M_X64)
double dot_avx2(const double* a, const double* b, std::size_t n) noexcept;
#endif
#if defined(__aarch64__)
double dot_neon(const double* a, const double* b, std::size_t n) noexcept;
#endif

/// Kinds compiled in and supported by the running CPU, scalar first.
std::vector<Kind> available();

/// Best available kind for `Auto`, otherwise `requested` if available.
/// Throws std::invalid_argument for an unavailable explicit request.
Kind resolve(Kind requested);

DotFn dot_function(Kind kind);

inline double dot(std::span<const double> a, std::span<const double> b, Kind kind = Kind::Auto) {
  return dot_function(kind)(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

}  // namespace simpairs::kernels
