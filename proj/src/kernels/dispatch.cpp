#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "spinecho/kernels.hpp"

namespace spinecho::kernels {

#ifdef SPINECHO_HAVE_AVX2
const Kernels* avx2_kernels_impl();
#endif

const Kernels* avx2_kernels() {
#ifdef SPINECHO_HAVE_AVX2
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return avx2_kernels_impl();
#endif
    return nullptr;
}

namespace {

const Kernels& resolve() {
    const char* env = std::getenv("ECHO_KERNEL");
    if (env && *env) {
        if (std::strcmp(env, "scalar") == 0) return scalar_kernels();
        if (std::strcmp(env, "avx2") == 0) {
            if (const Kernels* k = avx2_kernels()) return *k;
            std::fprintf(stderr,
                         "warning: ECHO_KERNEL=avx2 requested but unavailable; "
                         "using scalar kernels\n");
            return scalar_kernels();
        }
        std::fprintf(stderr, "warning: unknown ECHO_KERNEL '%s' ignored\n", env);
    }
    if (const Kernels* k = avx2_kernels()) return *k;
    return scalar_kernels();
}

}  // namespace

const Kernels& active_kernels() {
    static const Kernels& k = resolve();
    return k;
}

}  // namespace spinecho::kernels
