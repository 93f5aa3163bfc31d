#include "hadfrac/kernels.hpp"

#include <cmath>

namespace hadfrac::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) noexcept
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double abs_diff_sum(const double* a, const double* b, std::size_t n) noexcept
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i] - b[i]);
    return s;
}

}  // namespace hadfrac::kernels::scalar
