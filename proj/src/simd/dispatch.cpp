#include "kernels_internal.hpp"

#include <cstdlib>
#include <string_view>

namespace nlsfem::simd {

bool cpu_supports_avx2()
{
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* avx2_kernels()
{
#if defined(NLSFEM_BUILD_AVX2)
    static const bool supported = cpu_supports_avx2();
    return supported ? &detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active_kernels()
{
    static const KernelTable& table = [] () -> const KernelTable& {
        const char* forced = std::getenv("NLSFEM_SIMD");
        if (forced != nullptr && std::string_view(forced) == "scalar") {
            return scalar_kernels();
        }
        if (const KernelTable* avx2 = avx2_kernels()) {
            return *avx2;
        }
        return scalar_kernels();
    }();
    return table;
}

} // namespace nlsfem::simd
