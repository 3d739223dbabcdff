#include "quatreg/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace quatreg {

int thread_cap() {
  if (const char* env = std::getenv("QUATREG_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

namespace detail {

void run_indexed(std::size_t count, Execution exec, void (*body)(std::size_t, void*), void* context) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) body(i, context);
    return;
  }
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 64) num_threads(thread_cap())
  for (long long i = 0; i < n; ++i) body(static_cast<std::size_t>(i), context);
}

}  // namespace detail

}  // namespace quatreg
