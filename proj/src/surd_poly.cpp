#include "lhsnul/surd_poly.hpp"

#include <stdexcept>

#include "lhsnul/errors.hpp"

namespace lhsnul {

void SurdPoly::check_same_radicand(const SurdPoly& o) const {
  if (r_ == o.r_) return;
  if (!r_ || !o.r_ || !(*r_ == *o.r_)) throw std::domain_error("SurdPoly operands use different radicands");
}

Poly SurdPoly::norm() const { return u_ * u_ - v_ * v_ * *r_; }

SurdPoly& SurdPoly::operator+=(const SurdPoly& o) {
  check_same_radicand(o);
  u_ += o.u_;
  v_ += o.v_;
  return *this;
}

SurdPoly& SurdPoly::operator-=(const SurdPoly& o) {
  check_same_radicand(o);
  u_ -= o.u_;
  v_ -= o.v_;
  return *this;
}

SurdPoly& SurdPoly::operator*=(const Poly& p) {
  u_ = u_ * p;
  v_ = v_ * p;
  return *this;
}

SurdPoly operator*(const SurdPoly& a, const SurdPoly& b) { return surd_mul(a, b); }

bool operator==(const SurdPoly& a, const SurdPoly& b) {
  a.check_same_radicand(b);
  return a.u_ == b.u_ && a.v_ == b.v_;
}

SurdPoly surd_mul(const SurdPoly& f, const SurdPoly& g) {
  if (!(f.radicand() == g.radicand())) throw std::domain_error("surd_mul: mismatched radicands");
  Poly u = f.u() * g.u();
  if (!f.v().is_zero() && !g.v().is_zero()) u += f.v() * g.v() * f.radicand();
  Poly v = f.u() * g.v() + g.u() * f.v();
  return SurdPoly(std::move(u), std::move(v), f.radicand_ptr());
}

SurdPoly surd_exact_div(const SurdPoly& f, const SurdPoly& g) {
  if (g.is_zero()) throw std::domain_error("surd_exact_div: division by zero");
  if (!(f.radicand() == g.radicand())) throw std::domain_error("surd_exact_div: mismatched radicands");
  const SurdPoly num = surd_mul(f, g.conj());
  const Poly den = g.norm();
  auto [qu, ru] = Poly::divmod(num.u(), den);
  auto [qv, rv] = Poly::divmod(num.v(), den);
  if (!ru.is_zero() || !rv.is_zero()) {
    throw DivisionNotExact("surd division leaves a remainder (" + to_string(ru) + ") + (" + to_string(rv) +
                           ")*sqrt(r)");
  }
  return SurdPoly(std::move(qu), std::move(qv), f.radicand_ptr());
}

std::string to_string(const SurdPoly& s) {
  if (s.v().is_zero()) return to_string(s.u());
  return "(" + to_string(s.u()) + ") + (" + to_string(s.v()) + ")*sqrt(r)";
}

}  // namespace lhsnul
