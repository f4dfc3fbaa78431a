#pragma once

#include "nlsfem/simd/kernels.hpp"

#include <cmath>

namespace nlsfem::simd::detail {

/// |z|^rho from |z|^2. Integer exponents avoid pow so both variants agree closely.
static inline double modulus_power(double r2, double rho)
{
    if (rho == 0.0) return 1.0;
    if (rho == std::floor(rho) && rho <= 16.0) {
        const int half = static_cast<int>(rho) / 2;
        double out = 1.0;
        for (int i = 0; i < half; ++i) out *= r2;
        if (static_cast<int>(rho) % 2 == 1) out *= std::sqrt(r2);
        return out;
    }
    return std::pow(r2, 0.5 * rho);
}

const KernelTable& avx2_table();

} // namespace nlsfem::simd::detail
