#pragma once

#include <string>

#include "lhsnul/rational.hpp"

namespace lhsnul {

/// An element a + b*sqrt(d) of the real (or imaginary) quadratic field Q(sqrt d).
///
/// d is stored square-free. A value with b = 0 is rational and carries d = 1,
/// so rationals mix freely with elements of any one field. Mixing two
/// irrational values from different fields throws std::domain_error.
class QuadNumber {
 public:
  QuadNumber() = default;
  QuadNumber(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadNumber(long v) : a_(v) {}             // NOLINT(google-explicit-constructor)
  QuadNumber(int v) : a_(v) {}              // NOLINT(google-explicit-constructor)
  QuadNumber(Rational a, Rational b, const Rational& d);

  /// sqrt(q) in Q(sqrt d), d square-free (1 for Q). Picks the root with
  /// positive coefficient. Throws FieldTooSmall when q is not a square there.
  static QuadNumber sqrt(const Rational& q, long d);

  const Rational& rational_part() const noexcept { return a_; }
  const Rational& surd_part() const noexcept { return b_; }
  long discriminant() const noexcept { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_one() const { return is_rational() && a_ == 1; }

  QuadNumber conj() const;
  /// a^2 - d b^2.
  Rational norm() const;
  QuadNumber inverse() const;

  QuadNumber operator-() const;
  QuadNumber& operator+=(const QuadNumber& o);
  QuadNumber& operator-=(const QuadNumber& o);
  QuadNumber& operator*=(const QuadNumber& o);
  QuadNumber& operator/=(const QuadNumber& o);

  friend QuadNumber operator+(QuadNumber x, const QuadNumber& y) { return x += y; }
  friend QuadNumber operator-(QuadNumber x, const QuadNumber& y) { return x -= y; }
  friend QuadNumber operator*(QuadNumber x, const QuadNumber& y) { return x *= y; }
  friend QuadNumber operator/(QuadNumber x, const QuadNumber& y) { return x /= y; }
  friend bool operator==(const QuadNumber& x, const QuadNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.d_ == y.d_ || sgn(x.b_) == 0);
  }

  /// Value in the real embedding sqrt(d) > 0; only meaningful for d > 0.
  double to_double() const;

 private:
  long merge_field(const QuadNumber& o) const;
  void normalize() {
    if (sgn(b_) == 0) d_ = 1;
  }

  Rational a_;
  Rational b_;
  long d_ = 1;
};

/// "a", or "a+b*sqrt(d)" / "a-b*sqrt(d)" with rationals in p/q form.
std::string to_string(const QuadNumber& x);

}  // namespace lhsnul
