#include "lhsnul/quad_number.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lhsnul/errors.hpp"

namespace lhsnul {

namespace {

long to_long_checked(const Integer& k) {
  if (!k.fits_slong_p()) throw FieldTooSmall("quadratic field discriminant does not fit in a machine word");
  return k.get_si();
}

}  // namespace

QuadNumber::QuadNumber(Rational a, Rational b, const Rational& d) : a_(std::move(a)), b_(std::move(b)) {
  if (sgn(d) == 0 || sgn(b_) == 0) {
    b_ = 0;
    d_ = 1;
    return;
  }
  Rational root;
  const Integer kernel = square_free_part(d, &root);
  b_ *= root;
  if (kernel == 1) {
    a_ += b_;
    b_ = 0;
    d_ = 1;
  } else {
    d_ = to_long_checked(kernel);
  }
}

QuadNumber QuadNumber::sqrt(const Rational& q, long d) {
  if (sgn(q) == 0) return {};
  Rational root;
  const Integer kernel = square_free_part(q, &root);
  if (kernel == 1) return QuadNumber(root);
  if (kernel == d) return QuadNumber(Rational(0), root, Rational(d));
  throw FieldTooSmall("sqrt(" + to_string(q) + ") is not in Q(sqrt(" + std::to_string(d) + "))");
}

long QuadNumber::merge_field(const QuadNumber& o) const {
  if (d_ == 1) return o.d_;
  if (o.d_ == 1 || o.d_ == d_) return d_;
  throw std::domain_error("mixing Q(sqrt(" + std::to_string(d_) + ")) with Q(sqrt(" + std::to_string(o.d_) + "))");
}

QuadNumber QuadNumber::conj() const {
  QuadNumber r = *this;
  r.b_ = -r.b_;
  return r;
}

Rational QuadNumber::norm() const {
  if (d_ == 1) return a_ * a_;
  return a_ * a_ - Rational(d_) * b_ * b_;
}

QuadNumber QuadNumber::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (is_rational()) return QuadNumber(Rational(1) / a_);
  const Rational n = norm();
  QuadNumber r;
  r.a_ = a_ / n;
  r.b_ = -b_ / n;
  r.d_ = d_;
  return r;
}

QuadNumber QuadNumber::operator-() const {
  QuadNumber r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadNumber& QuadNumber::operator+=(const QuadNumber& o) {
  if (o.is_rational()) {
    a_ += o.a_;
    return *this;
  }
  d_ = merge_field(o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

QuadNumber& QuadNumber::operator-=(const QuadNumber& o) {
  if (o.is_rational()) {
    a_ -= o.a_;
    return *this;
  }
  d_ = merge_field(o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

QuadNumber& QuadNumber::operator*=(const QuadNumber& o) {
  if (o.is_rational()) {
    a_ *= o.a_;
    b_ *= o.a_;
    normalize();
    return *this;
  }
  if (is_rational()) {
    b_ = a_ * o.b_;
    a_ *= o.a_;
    d_ = o.d_;
    normalize();
    return *this;
  }
  const long d = merge_field(o);
  Rational a = a_ * o.a_ + Rational(d) * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = d;
  normalize();
  return *this;
}

QuadNumber& QuadNumber::operator/=(const QuadNumber& o) {
  if (o.is_rational()) {
    if (sgn(o.a_) == 0) throw std::domain_error("division by zero");
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  return *this *= o.inverse();
}

double QuadNumber::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

std::string to_string(const QuadNumber& x) {
  if (x.is_rational()) return to_string(x.rational_part());
  std::string s;
  if (sgn(x.rational_part()) != 0) s = to_string(x.rational_part());
  const Rational& b = x.surd_part();
  if (sgn(b) < 0) {
    s += "-";
  } else if (!s.empty()) {
    s += "+";
  }
  const Rational mag = abs(b);
  if (mag != 1) s += to_string(mag) + "*";
  s += "sqrt(" + std::to_string(x.discriminant()) + ")";
  return s;
}

}  // namespace lhsnul
