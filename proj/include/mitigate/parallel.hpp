#pragma once

#include <cstdint>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mitigate {

// Thread cap: MITIGATE_THREADS env var, else the OpenMP default.
inline int thread_cap() {
#ifdef _OPENMP
    if (const char* env = std::getenv("MITIGATE_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Index-parallel loop. Each body invocation owns its index; results must be
// written to per-index slots so serial and parallel execution agree exactly.
// The serial path is the reference implementation the tests compare against.
template <typename Body>
void for_each_index(std::int64_t count, bool parallel, Body&& body) {
    if (!parallel) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_cap())
    for (std::int64_t i = 0; i < count; ++i) body(i);
#else
    for (std::int64_t i = 0; i < count; ++i) body(i);
#endif
}

}  // namespace mitigate
