#pragma once

#include <optional>
#include <vector>

#include "lhsnul/laurent_series.hpp"
#include "lhsnul/poly.hpp"

namespace lhsnul {

/// Moments, recurrence coefficients and the monic polynomial families
///   P_{n+1} = (x - beta_n) P_n - gamma_n P_{n-1},           P_{-1} = 0, P_0 = 1,
///   P1_n    = (x - beta_n) P1_{n-1} - gamma_n P1_{n-2},     P1_{-1} = 0, P1_0 = 1.
/// gamma_0 = u_0 = 1.
struct SMOPData {
  std::vector<Rational> moments;
  std::vector<Rational> beta;   ///< beta_0 .. beta_{n_max}
  std::vector<Rational> gamma;  ///< gamma_0 .. gamma_{n_max}
  std::vector<Poly> P;          ///< P_0 .. P_{n_max}
  std::vector<Poly> P1;         ///< P1_0 .. P1_{n_max}
  int n_max = 0;

  /// P_n with P_{-1} = 0.
  const Poly& p(int n) const;
  /// P1_n with P1_{-1} = 0.
  const Poly& p1(int n) const;
  /// gamma_0 gamma_1 ... gamma_n.
  Rational gamma_product(int n) const;
};

/// Throws InvalidRecurrence on gamma_n = 0 (1 <= n <= n_max), gamma_0 != 1 or
/// too few coefficients.
SMOPData smop_from_recurrence(const std::vector<Rational>& beta, const std::vector<Rational>& gamma, int n_max);

/// u_0 .. u_{count-1} by stepping the tridiagonal operator
///   (x v)_m = v_{m-1} + beta_m v_m + gamma_{m+1} v_{m+1}
/// from v = e_0 and reading entry 0.
std::vector<Rational> moments_from_recurrence(const std::vector<Rational>& beta, const std::vector<Rational>& gamma,
                                              int count);

/// beta_0..beta_{n_max}, gamma_0..gamma_{n_max} from u_0..u_{2 n_max + 1}
/// (modified Chebyshev algorithm with ordinary moments). Throws
/// NotQuasiDefinite(n) when the Hankel determinant of order n + 1 vanishes.
struct RecurrenceCoefficients {
  std::vector<Rational> beta;
  std::vector<Rational> gamma;
};
RecurrenceCoefficients recurrence_from_moments(const std::vector<Rational>& moments, int n_max);

/// q_n = P_n S - P1_{n-1}. q_{-1} = 1, q_0 = S.
LaurentSeries second_kind_series(const SMOPData& data, const LaurentSeries& S, int n);

/// q_{-1}, q_0, ..., q_n by q_{k+1} = (x - beta_k) q_k - gamma_k q_{k-1}.
std::vector<LaurentSeries> second_kind_by_recurrence(const SMOPData& data, const LaurentSeries& S, int n);

struct SecondKindCheck {
  bool agree = false;   ///< definition and recurrence coincide in the window
  bool decays = false;  ///< coefficients of x^(n-1) .. x^(-n) vanish
  std::optional<int> first_bad_power;
  int window_low = 0;
};

/// Checks both constructions of q_n and its decay. Needs S known through
/// x^(-(2n+1)); throws InsufficientTruncation(2n+1) otherwise.
SecondKindCheck check_second_kind(const SMOPData& data, const LaurentSeries& S, int n);

/// P1_n P_n - P_{n+1} P1_{n-1} - gamma_0...gamma_n; zero for valid data.
Poly liouville_defect(const SMOPData& data, int n);

}  // namespace lhsnul
