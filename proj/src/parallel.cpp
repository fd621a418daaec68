#include "symplab/parallel.hpp"

#include <atomic>

namespace symplab::exec {

namespace {
std::atomic<Mode> g_mode{
#ifdef _OPENMP
    Mode::openmp
#else
    Mode::serial
#endif
};
}

Mode default_mode() noexcept { return g_mode.load(std::memory_order_relaxed); }
void set_default_mode(Mode m) noexcept { g_mode.store(m, std::memory_order_relaxed); }

} // namespace symplab::exec
