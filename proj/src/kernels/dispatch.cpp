#include "kernels_internal.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace shapesig::kernels {

namespace {

bool cpu_supports_avx2()
{
#if defined(SHAPESIG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelSet& detect()
{
    const KernelSet* vector_set = avx2();
    if (const char* env = std::getenv("SHAPESIG_SIMD")) {
        const std::string_view want(env);
        if (want == "scalar")
            return scalar();
        if (want == "avx2" && vector_set)
            return *vector_set;
    }
    return vector_set ? *vector_set : scalar();
}

std::atomic<const KernelSet*>& current()
{
    static std::atomic<const KernelSet*> set{&detect()};
    return set;
}

} // namespace

const KernelSet* avx2()
{
#if defined(SHAPESIG_HAVE_AVX2)
    static const bool supported = cpu_supports_avx2();
    return supported ? &detail::avx2_set() : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet& active()
{
    return *current().load(std::memory_order_acquire);
}

void select(const KernelSet& set)
{
    current().store(&set, std::memory_order_release);
}

} // namespace shapesig::kernels
