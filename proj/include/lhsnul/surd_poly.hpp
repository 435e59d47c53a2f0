#pragma once

#include <memory>
#include <string>

#include "lhsnul/poly.hpp"

namespace lhsnul {

/// u(x) + v(x)*sqrt(r(x)) for a fixed quadratic r shared by all operands.
///
/// This is the ring where E_1 f and E_2 f live for polynomial f. The radicand
/// is held by shared pointer so copies stay cheap; two operands are
/// compatible when their radicands compare equal.
class SurdPoly {
 public:
  using Radicand = std::shared_ptr<const Poly>;

  explicit SurdPoly(Radicand r) : r_(std::move(r)) {}
  SurdPoly(Poly u, Poly v, Radicand r) : u_(std::move(u)), v_(std::move(v)), r_(std::move(r)) {}

  const Poly& u() const noexcept { return u_; }
  const Poly& v() const noexcept { return v_; }
  const Poly& radicand() const noexcept { return *r_; }
  const Radicand& radicand_ptr() const noexcept { return r_; }

  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
  /// True when the sqrt(r) component vanishes.
  bool is_polynomial() const { return v_.is_zero(); }

  /// u - v*sqrt(r): swaps the two branches y_1 <-> y_2.
  SurdPoly conj() const { return SurdPoly(u_, -v_, r_); }
  /// u^2 - v^2 r, the product with the conjugate.
  Poly norm() const;

  SurdPoly operator-() const { return SurdPoly(-u_, -v_, r_); }
  SurdPoly& operator+=(const SurdPoly& o);
  SurdPoly& operator-=(const SurdPoly& o);
  SurdPoly& operator*=(const Poly& p);
  friend SurdPoly operator+(SurdPoly a, const SurdPoly& b) { return a += b; }
  friend SurdPoly operator-(SurdPoly a, const SurdPoly& b) { return a -= b; }
  friend SurdPoly operator*(SurdPoly a, const Poly& p) { return a *= p; }
  friend SurdPoly operator*(const Poly& p, SurdPoly a) { return a *= p; }
  friend SurdPoly operator*(const SurdPoly& a, const SurdPoly& b);
  friend bool operator==(const SurdPoly& a, const SurdPoly& b);

 private:
  void check_same_radicand(const SurdPoly& o) const;

  Poly u_;
  Poly v_;
  Radicand r_;
};

/// (u_f u_g + v_f v_g r) + (u_f v_g + u_g v_f) sqrt(r).
SurdPoly surd_mul(const SurdPoly& f, const SurdPoly& g);

/// h with h*g = f. Rationalizes with conj(g) and divides both components by
/// norm(g); throws DivisionNotExact on a nonzero remainder.
SurdPoly surd_exact_div(const SurdPoly& f, const SurdPoly& g);

std::string to_string(const SurdPoly& s);

}  // namespace lhsnul
