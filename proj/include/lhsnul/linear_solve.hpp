#pragma once

#include <vector>

#include "lhsnul/kernels.hpp"
#include "lhsnul/quad_number.hpp"

namespace lhsnul {

using Row = std::vector<QuadNumber>;

/// Exact reduced row echelon form over Q(sqrt d), in place. Returns the pivot
/// column of each nonzero row.
std::vector<int> row_reduce(std::vector<Row>& rows, int cols, Exec exec = Exec::parallel);

/// Basis of { v : M v = 0 }, one vector per free column, with a 1 in that
/// column.
std::vector<Row> nullspace(std::vector<Row> rows, int cols, Exec exec = Exec::parallel);

}  // namespace lhsnul
