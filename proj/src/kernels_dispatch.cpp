#include <cstdlib>
#include <string_view>

#include "voltlab/kernels.hpp"

namespace voltlab::kernels {

#if defined(VOLTLAB_HAVE_AVX2)
const KernelTable& avx2_table_unchecked() noexcept;
#endif

const KernelTable* avx2_table() noexcept {
#if defined(VOLTLAB_HAVE_AVX2)
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    }();
    return supported ? &avx2_table_unchecked() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active_table() noexcept {
    static const KernelTable* table = [] {
        const char* env = std::getenv("VOLTLAB_KERNELS");
        if (env != nullptr && std::string_view(env) == "scalar") return &scalar_table();
        if (const KernelTable* t = avx2_table()) return t;
        return &scalar_table();
    }();
    return *table;
}

}  // namespace voltlab::kernels
