#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "quatreg/error.hpp"

namespace quatreg {

/// Serial is the reference path; OpenMP must reproduce it bit for bit.
enum class Execution { Serial, OpenMP };

/// Thread count for OpenMP kernels: QUATREG_THREADS when set and positive,
/// otherwise the OpenMP default.
int thread_cap();

template <class T>
struct Outcome {
  std::optional<T> value;
  std::optional<Error> error;
};

namespace detail {
void run_indexed(std::size_t count, Execution exec, void (*body)(std::size_t, void*), void* context);
}

/// Evaluates fn(i) for i in [0, count). Library errors are captured per index
/// so one bad point never aborts a sweep; results are stored by index.
template <class T, class Fn>
std::vector<Outcome<T>> map_indexed(std::size_t count, Execution exec, Fn&& fn) {
  std::vector<Outcome<T>> out(count);
  struct Context {
    Fn* fn;
    std::vector<Outcome<T>>* out;
  } ctx{&fn, &out};
  detail::run_indexed(
      count, exec,
      [](std::size_t i, void* raw) {
        auto* c = static_cast<Context*>(raw);
        try {
          (*c->out)[i].value = (*c->fn)(i);
        } catch (const Error& e) {
          (*c->out)[i].error = e;
        }
      },
      &ctx);
  return out;
}

/// Block size of the ordered reduction; part of the summation order.
inline constexpr std::size_t kReductionBlock = 4096;

/// sum of fn(i) over [0, count): partial sums over fixed index blocks, then the
/// partials in block order. The order does not depend on the execution policy
/// or thread count, so both paths give identical bits. The first error by
/// index is rethrown after the sweep.
template <class T, class Fn>
T sum_indexed(std::size_t count, Execution exec, Fn&& fn) {
  const std::size_t blocks = (count + kReductionBlock - 1) / kReductionBlock;
  auto partials = map_indexed<T>(blocks, exec, [&](std::size_t b) {
    T acc{};
    const std::size_t end = std::min(count, (b + 1) * kReductionBlock);
    for (std::size_t i = b * kReductionBlock; i < end; ++i) acc += fn(i);
    return acc;
  });
  T total{};
  for (auto& p : partials) {
    if (p.error) throw *p.error;
    total += *p.value;
  }
  return total;
}

}  // namespace quatreg
