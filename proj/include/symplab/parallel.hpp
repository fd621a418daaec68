#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace symplab::exec {

/// Execution policy for grid kernels. The serial path is the reference
/// implementation; the OpenMP path must agree with it up to round-off
/// reordering. Reductions that are sensitive to summation order (grid
/// means, inner products) are kept serial everywhere so that results
/// are reproducible across thread counts.
enum class Mode { serial, openmp };

Mode default_mode() noexcept;
void set_default_mode(Mode m) noexcept;

template <class F>
void par_for(std::size_t n, F&& body, Mode mode) {
#ifdef _OPENMP
    if (mode == Mode::openmp) {
        const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < nn; ++i) body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

template <class F>
void par_for(std::size_t n, F&& body) {
    par_for(n, static_cast<F&&>(body), default_mode());
}

} // namespace symplab::exec
