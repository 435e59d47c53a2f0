#include "lhsnul/lattice_series.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace lhsnul {

namespace {

int window_edge(const LaurentSeries& S, std::optional<int> N) {
  int edge = INT_MIN;
  if (S.valid_to()) edge = *S.valid_to();
  if (N) edge = std::max(edge, -*N);
  if (edge == INT_MIN) throw std::domain_error("series operator on an exact series needs a truncation order");
  return edge;
}

}  // namespace

LaurentSeries sqrt_r_series(const Lattice& L, int precision) {
  return sqrt_series(L.r(), std::max(precision, 0), L.discriminant());
}

LaurentSeries branch_series(const Lattice& L, int j, int precision) {
  if (j != 1 && j != 2) throw std::domain_error("branch index must be 1 or 2");
  const LaurentSeries root = sqrt_r_series(L, precision);
  const LaurentSeries p = LaurentSeries::from_poly(L.p());
  return j == 1 ? p - root : p + root;
}

LaurentSeries surd_to_series(const Lattice& L, const SurdPoly& f, int precision) {
  LaurentSeries out = LaurentSeries::from_poly(f.u());
  if (f.v().is_zero()) return out.truncate(-precision);
  const int need = precision + std::max(f.v().degree(), 0);
  return (out + f.v() * sqrt_r_series(L, need)).truncate(-precision);
}

LaurentSeries apply_E_series(const Lattice& L, const LaurentSeries& S, int j, std::optional<int> N, Exec exec) {
  const int edge = window_edge(S, N);
  if (S.is_known_zero() || S.top() < edge) return LaurentSeries::truncated(edge - 1, {}, edge);
  const int top = S.top();
  // y_j^k for k <= top must be good through x^edge; so must 1/y_j (top -1)
  const int precision = std::max(top, 0) + std::max(-edge, 0) + 2;
  const LaurentSeries y = branch_series(L, j, precision);

  LaurentSeries out = LaurentSeries::truncated(edge - 1, {}, edge);
  if (top >= 0) {
    LaurentSeries acc = LaurentSeries::monomial(S.coeff(top), 0);
    for (int k = top - 1; k >= 0; --k) {
      acc = LaurentSeries::multiply(acc, y, edge, exec) + LaurentSeries::monomial(S.coeff(k), 0);
    }
    out = out + acc.truncate(edge);
  }
  const int lowest = std::max(edge, -precision);
  if (lowest <= -1) {
    const LaurentSeries w = series_inverse(y);
    LaurentSeries acc = LaurentSeries::monomial(S.coeff(lowest), 0);
    for (int k = lowest + 1; k <= -1; ++k) {
      acc = LaurentSeries::multiply(acc, w, edge, exec) + LaurentSeries::monomial(S.coeff(k), 0);
    }
    out = out + LaurentSeries::multiply(acc, w, edge, exec);
  }
  return out.truncate(edge);
}

ShiftedSeries apply_all_series(const Lattice& L, const LaurentSeries& S, std::optional<int> N, Exec exec) {
  ShiftedSeries out;
  out.e1 = apply_E_series(L, S, 1, N, exec);
  out.e2 = apply_E_series(L, S, 2, N, exec);
  const LaurentSeries diff = out.e2 - out.e1;
  const int edge = *diff.valid_to();
  const LaurentSeries two_root = QuadNumber(2) * sqrt_r_series(L, std::max(-edge, 0) + 2);
  out.d = LaurentSeries::multiply(diff, series_inverse(two_root), edge - 1, exec);
  out.m = (out.e1 + out.e2) * QuadNumber(Rational(1, 2));
  return out;
}

LaurentSeries apply_D_series(const Lattice& L, const LaurentSeries& S, std::optional<int> N, Exec exec) {
  return apply_all_series(L, S, N, exec).d;
}

LaurentSeries apply_M_series(const Lattice& L, const LaurentSeries& S, std::optional<int> N, Exec exec) {
  const LaurentSeries e1 = apply_E_series(L, S, 1, N, exec);
  const LaurentSeries e2 = apply_E_series(L, S, 2, N, exec);
  return (e1 + e2) * QuadNumber(Rational(1, 2));
}

}  // namespace lhsnul
