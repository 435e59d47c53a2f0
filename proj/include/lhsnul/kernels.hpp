#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lhsnul/quad_number.hpp"

namespace lhsnul {

/// Execution policy for the data-parallel kernels. `serial` is the reference
/// implementation; `parallel` uses OpenMP when the library was built with it
/// and must produce bit-identical results.
enum class Exec { serial, parallel };

namespace kernels {

bool openmp_enabled() noexcept;
int max_threads() noexcept;

/// out[k] = sum_{i+j=k} a[i]*b[j] for 0 <= k < count (truncated Cauchy product).
std::vector<QuadNumber> convolve(std::span<const QuadNumber> a, std::span<const QuadNumber> b,
                                 std::size_t count, Exec exec = Exec::parallel);

/// Calls body(i) for 0 <= i < n. Exceptions thrown by body are captured per
/// index and the one with the lowest index is rethrown after the loop.
void for_each_index(int n, const std::function<void(int)>& body, Exec exec = Exec::parallel);

}  // namespace kernels
}  // namespace lhsnul
