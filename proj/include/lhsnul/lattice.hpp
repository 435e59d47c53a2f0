#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lhsnul/poly.hpp"
#include "lhsnul/surd_poly.hpp"

namespace lhsnul {

/// Coefficients of  a y^2 + 2b xy + c x^2 + 2d y + 2e x + f = 0.
struct ConicCoefficients {
  Rational a_hat;
  Rational b_hat;
  Rational c_hat;
  Rational d_hat;
  Rational e_hat;
  Rational f_hat;

  friend bool operator==(const ConicCoefficients&, const ConicCoefficients&) = default;
};

enum class LatticeClass { linear, q_linear, quadratic, q_quadratic };

std::string to_string(LatticeClass c);

/// lambda = b^2 - ac and tau = ((b^2 - ac)(d^2 - af) - (bd - ae)^2)/a decide
/// the class: both zero is linear, tau = 0 is q-linear, lambda = 0 is
/// quadratic, neither is q-quadratic.
LatticeClass classify_lattice(const Rational& lambda, const Rational& tau);

struct ConicInvariants {
  Rational lambda;
  Rational tau;
  std::optional<Rational> q_trace;  ///< q + 1/q = 4b^2/(ac) - 2, when c != 0
  LatticeClass lattice_class;
};

/// Invariants of a conic without building the operators. Throws InvalidConic
/// when a = 0.
ConicInvariants conic_invariants(const ConicCoefficients& conic);

/// A q-quadratic lattice: the branches y_1 = p - sqrt(r), y_2 = p + sqrt(r)
/// of the conic over x, with sqrt(r) ~ +sqrt(lambda)/|a| x at infinity.
class Lattice {
 public:
  const ConicCoefficients& conic() const noexcept { return conic_; }
  const Poly& p() const noexcept { return p_; }
  const Poly& r() const noexcept { return *r_; }
  const SurdPoly::Radicand& radicand() const noexcept { return r_; }
  const Rational& lambda() const noexcept { return lambda_; }
  const Rational& tau() const noexcept { return tau_; }
  const Rational& q_trace() const noexcept { return q_trace_; }
  LatticeClass lattice_class() const noexcept { return class_; }
  /// Square-free d of the coefficient field Q(sqrt d); 1 when sqrt(lambda) is rational.
  long discriminant() const noexcept { return discriminant_; }

  /// Leading coefficient of sqrt(r), sqrt(lambda)/|a|.
  const QuadNumber& sqrt_r_leading() const noexcept { return sqrt_r_lead_; }
  /// Leading coefficient of y_j (j = 1, 2).
  QuadNumber branch_leading(int j) const;
  /// y_j as an element of Q[x][sqrt r].
  SurdPoly branch(int j) const;
  SurdPoly zero() const { return SurdPoly(r_); }
  SurdPoly constant(const Poly& u) const { return SurdPoly(u, Poly(), r_); }

  /// Delta_y^2 = 4r.
  Poly delta_y_squared() const { return QuadNumber(4) * r(); }

 private:
  friend Lattice build_lattice(const ConicCoefficients&, std::optional<Rational>);

  ConicCoefficients conic_;
  Poly p_;
  SurdPoly::Radicand r_;
  Rational lambda_;
  Rational tau_;
  Rational q_trace_;
  LatticeClass class_ = LatticeClass::q_quadratic;
  long discriminant_ = 1;
  QuadNumber sqrt_r_lead_;
};

/// Builds and validates the lattice: p = -(bx + d)/a, r from the closed form,
/// then checks that a(y - y_1)(y - y_2) expands back to the conic. The field
/// discriminant defaults to the square-free part of lambda; an override must
/// still contain sqrt(lambda).
///
/// Throws InvalidConic (a = 0 or c = 0), UnsupportedLatticeClass (lambda*tau
/// = 0) or FieldTooSmall.
Lattice build_lattice(const ConicCoefficients& conic, std::optional<Rational> discriminant = {});

inline LatticeClass classify_lattice(const Lattice& L) { return classify_lattice(L.lambda(), L.tau()); }

/// E_j f = f(y_j) as u + v sqrt(r), by Horner in Q[x][sqrt r].
SurdPoly apply_shift(const Lattice& L, const Poly& f, int j);

/// D f, read off the sqrt(r) component of E_2 f (E_2 f - E_1 f = 2 v sqrt r = v Delta_y).
Poly apply_D(const Lattice& L, const Poly& f);

/// M f = (E_1 f + E_2 f)/2, the rational component of E_2 f.
Poly apply_M(const Lattice& L, const Poly& f);

/// E_1 f * E_2 f = norm of E_2 f.
Poly apply_E1E2(const Lattice& L, const Poly& f);

/// Floating-point picture of the lattice x(s) = c1 q^s + c2 q^-s + c3.
/// Diagnostic only; never used in exact computations.
struct LatticePoints {
  std::optional<double> q;          ///< root of q + 1/q = q_trace with |q| >= 1, when real
  std::vector<double> points;       ///< x(s0 + k/2), k = 0, 1, ... starting at a zero of r
  std::optional<double> c1, c2, c3;
  std::string note;
};

LatticePoints lattice_points(const Lattice& L, int count);

}  // namespace lhsnul
