#pragma once

#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lhsnul/quad_number.hpp"

namespace lhsnul {

/// Dense univariate polynomial over Q(sqrt d); coefficient k multiplies x^k.
class Poly {
 public:
  /// Degree reported for the zero polynomial. Far enough below any real
  /// degree that bounds like max{deg A - 2, deg C - 1} stay negative.
  static constexpr int kZeroDegree = std::numeric_limits<int>::min() / 4;

  Poly() = default;
  explicit Poly(std::vector<QuadNumber> coeffs);
  Poly(std::initializer_list<QuadNumber> coeffs) : Poly(std::vector<QuadNumber>(coeffs)) {}

  static Poly constant(const QuadNumber& c);
  static Poly monomial(const QuadNumber& c, int k);
  static Poly x() { return monomial(QuadNumber(1), 1); }
  /// x - a.
  static Poly linear(const QuadNumber& a);
  static Poly from_rationals(const std::vector<Rational>& coeffs);

  int degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const;
  /// Coefficient of x^k, zero outside the stored range.
  QuadNumber coeff(int k) const;
  QuadNumber leading() const { return coeffs_.empty() ? QuadNumber() : coeffs_.back(); }
  std::span<const QuadNumber> coefficients() const { return coeffs_; }

  QuadNumber eval(const QuadNumber& x) const;
  double eval(double x) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const QuadNumber& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const QuadNumber& c) { return a *= c; }
  friend Poly operator*(const QuadNumber& c, Poly a) { return a *= c; }
  friend Poly operator/(Poly a, const QuadNumber& c) { return a *= c.inverse(); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division f = q*g + r with deg r < deg g.
  static std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
  /// f / g; throws DivisionNotExact when g does not divide f.
  static Poly exact_div(const Poly& f, const Poly& g);

 private:
  void trim();
  std::vector<QuadNumber> coeffs_;
};

/// Human-readable form, highest degree first: "3/4*x^2 - x + 1".
std::string to_string(const Poly& p);

}  // namespace lhsnul
