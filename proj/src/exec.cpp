#include "ckn/exec.hpp"

#include <atomic>

namespace ckn {

namespace {

std::atomic<Exec> g_default{
#ifdef _OPENMP
    Exec::parallel
#else
    Exec::serial
#endif
};

}  // namespace

Exec default_exec() noexcept { return g_default.load(std::memory_order_relaxed); }

void set_default_exec(Exec e) noexcept { g_default.store(e, std::memory_order_relaxed); }

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace ckn
