#include "hadfrac/errors.hpp"
#include "hadfrac/kernels.hpp"

#include <atomic>
#include <string>

namespace hadfrac::kernels {

namespace {

bool cpu_has_avx2() noexcept
{
#if defined(HADFRAC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend widest() noexcept { return cpu_has_avx2() ? Backend::avx2 : Backend::scalar; }

std::atomic<Backend>& current()
{
    static std::atomic<Backend> b{widest()};
    return b;
}

void check_lengths(std::size_t a, std::size_t b)
{
    if (a != b)
        throw DomainError("kernel operands differ in length: " + std::to_string(a) + " vs " +
                          std::to_string(b));
}

}  // namespace

std::string_view backend_name(Backend b) noexcept
{
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    }
    return "unknown";
}

bool backend_available(Backend b) noexcept
{
    return b == Backend::scalar || (b == Backend::avx2 && cpu_has_avx2());
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b)
{
    if (!backend_available(b))
        throw DomainError("kernel backend '" + std::string(backend_name(b)) + "' is not available on this CPU");
    current().store(b, std::memory_order_relaxed);
}

void reset_backend() noexcept { current().store(widest(), std::memory_order_relaxed); }

double dot(std::span<const double> a, std::span<const double> b)
{
    check_lengths(a.size(), b.size());
#ifdef HADFRAC_HAVE_AVX2
    if (active_backend() == Backend::avx2) return avx2::dot(a.data(), b.data(), a.size());
#endif
    return scalar::dot(a.data(), b.data(), a.size());
}

double abs_diff_sum(std::span<const double> a, std::span<const double> b)
{
    check_lengths(a.size(), b.size());
#ifdef HADFRAC_HAVE_AVX2
    if (active_backend() == Backend::avx2) return avx2::abs_diff_sum(a.data(), b.data(), a.size());
#endif
    return scalar::abs_diff_sum(a.data(), b.data(), a.size());
}

}  // namespace hadfrac::kernels
