#include <cstdlib>
#include <cstring>

#include "qpgeom/kernels.hpp"

namespace qpgeom::kernels {

#ifndef QPGEOM_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

namespace {

const KernelTable& select() {
    if (const char* env = std::getenv("QPGEOM_SIMD"); env && std::strcmp(env, "scalar") == 0) return scalar_table();
#if defined(QPGEOM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return *avx2_table();
#endif
    return scalar_table();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace qpgeom::kernels
