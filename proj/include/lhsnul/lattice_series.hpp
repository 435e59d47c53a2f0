#pragma once

#include <optional>

#include "lhsnul/lattice.hpp"
#include "lhsnul/laurent_series.hpp"

namespace lhsnul {

/// Series of y_j = p -+ sqrt(r) at infinity, known through x^(-precision).
LaurentSeries branch_series(const Lattice& L, int j, int precision);

/// sqrt(r) as a series, known through x^(-precision).
LaurentSeries sqrt_r_series(const Lattice& L, int precision);

/// u + v sqrt(r) expanded at infinity, known through x^(-precision).
LaurentSeries surd_to_series(const Lattice& L, const SurdPoly& f, int precision);

/// E_j S = S(y_j(x)). The result is known down to the window of S; an exact
/// S, or a request for fewer terms, uses x^(-N) as the window edge.
/// Negative powers go through a Horner scheme in 1/y_j, positive ones in y_j.
LaurentSeries apply_E_series(const Lattice& L, const LaurentSeries& S, int j, std::optional<int> N = {},
                             Exec exec = Exec::parallel);

/// D S = (E_2 S - E_1 S) / (2 sqrt r).
LaurentSeries apply_D_series(const Lattice& L, const LaurentSeries& S, std::optional<int> N = {},
                             Exec exec = Exec::parallel);

/// M S = (E_1 S + E_2 S) / 2.
LaurentSeries apply_M_series(const Lattice& L, const LaurentSeries& S, std::optional<int> N = {},
                             Exec exec = Exec::parallel);

/// E_1, E_2, D and M of one series, sharing the two compositions.
struct ShiftedSeries {
  LaurentSeries e1;
  LaurentSeries e2;
  LaurentSeries d;
  LaurentSeries m;
};

ShiftedSeries apply_all_series(const Lattice& L, const LaurentSeries& S, std::optional<int> N = {},
                               Exec exec = Exec::parallel);

}  // namespace lhsnul
