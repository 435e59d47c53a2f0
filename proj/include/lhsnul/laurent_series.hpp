#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lhsnul/kernels.hpp"
#include "lhsnul/poly.hpp"

namespace lhsnul {

/// A Laurent series in descending powers of x, sum_k c_k x^(top - k).
///
/// A series is either exact (finitely many terms, everything below is zero)
/// or truncated at a valid window: coefficients of x^e are known for
/// e >= valid_to and unknown below. The truncation order N of the usual
/// "known through x^-N" convention is -valid_to. Every operation derives the
/// window of its result from the windows of its operands and never claims a
/// coefficient it did not determine.
class LaurentSeries {
 public:
  /// The exact zero series.
  LaurentSeries() = default;

  static LaurentSeries exact(int top, std::vector<QuadNumber> coeffs);
  /// coeffs[i] multiplies x^(top - i); entries below valid_to are dropped and
  /// missing entries down to valid_to are taken as known zeros.
  static LaurentSeries truncated(int top, std::vector<QuadNumber> coeffs, int valid_to);
  static LaurentSeries from_poly(const Poly& p);
  static LaurentSeries monomial(const QuadNumber& c, int power);
  /// Stieltjes series sum_k u_k x^(-k-1) for the given moments, known
  /// through x^(-moments.size()).
  static LaurentSeries stieltjes(std::span<const Rational> moments);

  bool is_exact() const noexcept { return !valid_to_.has_value(); }
  /// Lowest power with a known coefficient; nullopt for exact series.
  std::optional<int> valid_to() const noexcept { return valid_to_; }
  /// N such that coefficients of x^-k for k > N are unknown. Exact series
  /// report nullopt.
  std::optional<int> truncation_order() const;

  /// Power of the first stored coefficient. After normalization this is the
  /// leading nonzero term, or valid_to - 1 when every known coefficient is 0.
  int top() const noexcept { return top_; }
  std::span<const QuadNumber> coefficients() const noexcept { return coeffs_; }

  bool known(int power) const { return !valid_to_ || power >= *valid_to_; }
  /// Throws InsufficientTruncation for powers below the valid window.
  QuadNumber coeff(int power) const;
  /// Leading known coefficient; throws if there is none.
  QuadNumber leading() const;

  /// No nonzero coefficient inside the known window.
  bool is_known_zero() const noexcept { return coeffs_.empty(); }
  bool is_exact_zero() const noexcept { return coeffs_.empty() && !valid_to_; }
  /// Highest power with a nonzero known coefficient.
  std::optional<int> first_nonzero_power() const;

  /// Forget every coefficient below `valid_to`.
  LaurentSeries truncate(int valid_to) const;
  /// Multiply by x^k.
  LaurentSeries shifted(int k) const;

  LaurentSeries operator-() const;
  LaurentSeries& operator*=(const QuadNumber& c);
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return multiply(a, b); }
  friend LaurentSeries operator*(LaurentSeries a, const QuadNumber& c) { return a *= c; }
  friend LaurentSeries operator*(const QuadNumber& c, LaurentSeries a) { return a *= c; }
  friend LaurentSeries operator*(const Poly& p, const LaurentSeries& a) { return multiply(from_poly(p), a); }
  friend LaurentSeries operator*(const LaurentSeries& a, const Poly& p) { return multiply(a, from_poly(p)); }

  /// Cauchy product. The result is known down to the first power touched by
  /// an unknown coefficient of either factor, and never below `floor`.
  static LaurentSeries multiply(const LaurentSeries& a, const LaurentSeries& b, std::optional<int> floor = {},
                                Exec exec = Exec::parallel);

  /// Structural equality (same window, same coefficients).
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) = default;

 private:
  void normalize();

  int top_ = 0;
  std::vector<QuadNumber> coeffs_;
  std::optional<int> valid_to_;
};

/// Product of two series; alias of LaurentSeries::multiply.
LaurentSeries series_mul(const LaurentSeries& f, const LaurentSeries& g, std::optional<int> floor = {});

/// 1/f by the recursive coefficient formula. For a truncated f with leading
/// power t the result is known through x^(valid_to - 2t). Exact inputs need
/// `floor`, the lowest power to compute. Throws std::domain_error when f has
/// no known nonzero leading coefficient.
LaurentSeries series_inverse(const LaurentSeries& f, std::optional<int> floor = {});

/// sqrt(r) at x -> infinity for a quadratic r, known through x^(-N).
/// Leading coefficient is the root of lead(r) with positive coefficient in
/// Q(sqrt d). Perfect squares come back exact.
LaurentSeries sqrt_series(const Poly& r, int N, long discriminant = 1);

/// Outcome of comparing two series on their common valid window.
struct WindowComparison {
  bool equal = true;
  std::optional<int> first_mismatch;  ///< highest power where they differ
  std::optional<int> window_low;      ///< lowest compared power; nullopt if both exact
  int window_high = 0;
};

WindowComparison compare_in_window(const LaurentSeries& a, const LaurentSeries& b);

/// "x^2 - 2/3*x^-1 + O(x^-5)".
std::string to_string(const LaurentSeries& s);

}  // namespace lhsnul
