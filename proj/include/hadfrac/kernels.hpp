#pragma once

// Data-parallel inner loops of the discrete operators.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2/FMA variant. The dispatching entry points pick the
// widest backend the CPU reports at first use; tests and the CLI can pin a
// backend explicitly. Vector variants reassociate sums, so they agree with
// the reference to a few ulps of sum|a_i*b_i|, not bitwise.

#include <cstddef>
#include <span>
#include <string_view>

namespace hadfrac::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b) noexcept;

/// True when the backend is compiled in and supported by this CPU.
bool backend_available(Backend b) noexcept;

/// Backend used by the dispatching entry points.
Backend active_backend() noexcept;

/// Throws DomainError if `b` is not available.
void set_backend(Backend b);

/// Picks the widest available backend.
void reset_backend() noexcept;

/// sum_i a[i] * b[i]; spans must have equal length.
double dot(std::span<const double> a, std::span<const double> b);

/// sum_i |a[i] - b[i]|; spans must have equal length.
double abs_diff_sum(std::span<const double> a, std::span<const double> b);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double abs_diff_sum(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double abs_diff_sum(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace avx2
#endif

}  // namespace hadfrac::kernels
