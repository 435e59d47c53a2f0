#include "lhsnul/linear_solve.hpp"

#include <stdexcept>

namespace lhsnul {

std::vector<int> row_reduce(std::vector<Row>& rows, int cols, Exec exec) {
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols) throw std::invalid_argument("row_reduce: ragged matrix");
  }
  std::vector<int> pivots;
  std::size_t next = 0;
  for (int c = 0; c < cols && next < rows.size(); ++c) {
    std::size_t pivot = next;
    while (pivot < rows.size() && rows[pivot][static_cast<std::size_t>(c)].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[next], rows[pivot]);
    const QuadNumber inv = rows[next][static_cast<std::size_t>(c)].inverse();
    for (auto& x : rows[next]) x *= inv;
    const Row& prow = rows[next];
    kernels::for_each_index(
        static_cast<int>(rows.size()),
        [&](int i) {
          if (static_cast<std::size_t>(i) == next) return;
          Row& row = rows[static_cast<std::size_t>(i)];
          const QuadNumber f = row[static_cast<std::size_t>(c)];
          if (f.is_zero()) return;
          for (int k = c; k < cols; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            if (!prow[kk].is_zero()) row[kk] -= f * prow[kk];
          }
        },
        exec);
    pivots.push_back(c);
    ++next;
  }
  rows.resize(next);
  return pivots;
}

std::vector<Row> nullspace(std::vector<Row> rows, int cols, Exec exec) {
  const std::vector<int> pivots = row_reduce(rows, cols, exec);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Row> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Row v(static_cast<std::size_t>(cols));
    v[static_cast<std::size_t>(f)] = QuadNumber(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v[static_cast<std::size_t>(pivots[i])] = -rows[i][static_cast<std::size_t>(f)];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace lhsnul
