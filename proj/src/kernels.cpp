#include "lhsnul/kernels.hpp"

#include <algorithm>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lhsnul::kernels {

namespace {

// Below this many multiply-adds the fork/join costs more than it saves.
constexpr std::size_t kParallelWorkThreshold = 2048;

QuadNumber convolve_at(std::span<const QuadNumber> a, std::span<const QuadNumber> b, std::size_t k) {
  QuadNumber acc;
  const std::size_t lo = k + 1 > b.size() ? k + 1 - b.size() : 0;
  const std::size_t hi = std::min(k, a.size() - 1);
  for (std::size_t i = lo; i <= hi; ++i) {
    if (a[i].is_zero()) continue;
    acc += a[i] * b[k - i];
  }
  return acc;
}

}  // namespace

bool openmp_enabled() noexcept {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<QuadNumber> convolve(std::span<const QuadNumber> a, std::span<const QuadNumber> b,
                                 std::size_t count, Exec exec) {
  std::vector<QuadNumber> out(count);
  if (a.empty() || b.empty()) return out;
  const auto n = static_cast<long>(count);
  const bool go_parallel = exec == Exec::parallel && count * std::min(a.size(), b.size()) >= kParallelWorkThreshold;
  if (go_parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = convolve_at(a, b, static_cast<std::size_t>(k));
  } else {
    for (long k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = convolve_at(a, b, static_cast<std::size_t>(k));
  }
  return out;
}

void for_each_index(int n, const std::function<void(int)>& body, Exec exec) {
  if (n <= 0) return;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  auto run = [&](int i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };
  if (exec == Exec::parallel && n > 1) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) run(i);
  } else {
    for (int i = 0; i < n; ++i) run(i);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace lhsnul::kernels
