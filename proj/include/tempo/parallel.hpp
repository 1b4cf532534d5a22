#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tempo {

// Execution mode for the check kernels. Every kernel has a serial reference
// path; the parallel path must produce bit-identical results (witnesses are
// selected by smallest index, not by arrival order).
enum class ExecMode { Serial, Parallel };

inline ExecMode& global_exec_mode() {
    static ExecMode mode = ExecMode::Parallel;
    return mode;
}

inline int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Runs fn(i) for i in [0, n). No result aggregation.
template <typename Fn>
void parallel_for(std::size_t n, ExecMode mode, Fn&& fn) {
    if (mode == ExecMode::Serial) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < static_cast<long long>(n); ++i) fn(static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

// Finds the smallest index in [0, n) where pred(i) is true, or n if none.
// The serial path stops at the first hit; the parallel path reduces by min
// so both paths report the same index.
template <typename Pred>
std::size_t parallel_find_first(std::size_t n, ExecMode mode, Pred&& pred) {
    if (mode == ExecMode::Serial) {
        for (std::size_t i = 0; i < n; ++i)
            if (pred(i)) return i;
        return n;
    }
#ifdef _OPENMP
    long long best = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        if (i < best && pred(static_cast<std::size_t>(i))) best = i;
    }
    return static_cast<std::size_t>(best);
#else
    for (std::size_t i = 0; i < n; ++i)
        if (pred(i)) return i;
    return n;
#endif
}

// True iff pred(i) holds for all i in [0, n).
template <typename Pred>
bool parallel_all_of(std::size_t n, ExecMode mode, Pred&& pred) {
    return parallel_find_first(n, mode, [&](std::size_t i) { return !pred(i); }) == n;
}

}  // namespace tempo
