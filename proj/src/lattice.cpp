#include "lhsnul/lattice.hpp"

#include <cmath>
#include <stdexcept>

#include "lhsnul/errors.hpp"

namespace lhsnul {

std::string to_string(LatticeClass c) {
  switch (c) {
    case LatticeClass::linear:
      return "linear";
    case LatticeClass::q_linear:
      return "q-linear";
    case LatticeClass::quadratic:
      return "quadratic";
    case LatticeClass::q_quadratic:
      return "q-quadratic";
  }
  return "unknown";
}

LatticeClass classify_lattice(const Rational& lambda, const Rational& tau) {
  const bool l0 = sgn(lambda) == 0;
  const bool t0 = sgn(tau) == 0;
  if (l0 && t0) return LatticeClass::linear;
  if (t0) return LatticeClass::q_linear;
  if (l0) return LatticeClass::quadratic;
  return LatticeClass::q_quadratic;
}

ConicInvariants conic_invariants(const ConicCoefficients& k) {
  if (sgn(k.a_hat) == 0) throw InvalidConic("conic coefficient a must be nonzero");
  ConicInvariants out;
  out.lambda = k.b_hat * k.b_hat - k.a_hat * k.c_hat;
  const Rational shift = k.b_hat * k.d_hat - k.a_hat * k.e_hat;
  out.tau = (out.lambda * (k.d_hat * k.d_hat - k.a_hat * k.f_hat) - shift * shift) / k.a_hat;
  if (sgn(k.c_hat) != 0) out.q_trace = Rational(4) * k.b_hat * k.b_hat / (k.a_hat * k.c_hat) - 2;
  out.lattice_class = classify_lattice(out.lambda, out.tau);
  return out;
}

Lattice build_lattice(const ConicCoefficients& conic, std::optional<Rational> discriminant) {
  const ConicInvariants inv = conic_invariants(conic);
  if (sgn(conic.c_hat) == 0) throw InvalidConic("conic coefficient c must be nonzero (one branch degenerates)");
  if (inv.lattice_class != LatticeClass::q_quadratic) {
    throw UnsupportedLatticeClass(to_string(inv.lattice_class) + " lattice (lambda=" + to_string(inv.lambda) +
                                  ", tau=" + to_string(inv.tau) + "); only lambda*tau != 0 is supported");
  }
  Lattice L;
  L.conic_ = conic;
  L.lambda_ = inv.lambda;
  L.tau_ = inv.tau;
  L.q_trace_ = *inv.q_trace;
  L.class_ = inv.lattice_class;

  const Rational& a = conic.a_hat;
  L.p_ = Poly::from_rationals({-conic.d_hat / a, -conic.b_hat / a});

  // r = lambda/a^2 (x + (bd - ae)/lambda)^2 + tau/(a lambda)
  const Rational center = (conic.b_hat * conic.d_hat - a * conic.e_hat) / L.lambda_;
  const Rational lead = L.lambda_ / (a * a);
  L.r_ = std::make_shared<const Poly>(Poly::from_rationals(
      {lead * center * center + L.tau_ / (a * L.lambda_), Rational(2) * lead * center, lead}));

  // a (y - y_1)(y - y_2) = a y^2 - 2a p y + a (p^2 - r) must be the conic in y.
  const Poly conic_y1 = QuadNumber(Rational(-2) * a) * L.p_;
  const Poly conic_y0 = QuadNumber(a) * (L.p_ * L.p_ - *L.r_);
  const Poly want_y1 = Poly::from_rationals({Rational(2) * conic.d_hat, Rational(2) * conic.b_hat});
  const Poly want_y0 = Poly::from_rationals({conic.f_hat, Rational(2) * conic.e_hat, conic.c_hat});
  if (!(conic_y1 == want_y1) || !(conic_y0 == want_y0)) {
    throw std::logic_error("lattice closed form does not reproduce the conic");
  }

  Rational root;
  const Integer kernel = square_free_part(L.lambda_, &root);
  if (discriminant) {
    const Integer forced = square_free_part(*discriminant, nullptr);
    if (forced == 0) throw FieldTooSmall("field discriminant override must be nonzero");
    if (!forced.fits_slong_p()) throw FieldTooSmall("field discriminant override too large");
    L.discriminant_ = forced.get_si();
  } else {
    if (!kernel.fits_slong_p()) throw FieldTooSmall("square-free part of lambda too large");
    L.discriminant_ = kernel.get_si();
  }
  L.sqrt_r_lead_ = QuadNumber::sqrt(lead, L.discriminant_);
  return L;
}

QuadNumber Lattice::branch_leading(int j) const {
  if (j != 1 && j != 2) throw std::domain_error("branch index must be 1 or 2");
  const QuadNumber p1 = p_.coeff(1);
  return j == 1 ? p1 - sqrt_r_lead_ : p1 + sqrt_r_lead_;
}

SurdPoly Lattice::branch(int j) const {
  if (j != 1 && j != 2) throw std::domain_error("branch index must be 1 or 2");
  return SurdPoly(p_, Poly::constant(QuadNumber(j == 1 ? -1 : 1)), r_);
}

SurdPoly apply_shift(const Lattice& L, const Poly& f, int j) {
  const SurdPoly y = L.branch(j);
  SurdPoly acc = L.zero();
  for (int k = f.degree(); k >= 0; --k) {
    acc = surd_mul(acc, y);
    acc += L.constant(Poly::constant(f.coeff(k)));
  }
  return acc;
}

Poly apply_D(const Lattice& L, const Poly& f) { return apply_shift(L, f, 2).v(); }

Poly apply_M(const Lattice& L, const Poly& f) { return apply_shift(L, f, 2).u(); }

Poly apply_E1E2(const Lattice& L, const Poly& f) { return apply_shift(L, f, 2).norm(); }

LatticePoints lattice_points(const Lattice& L, int count) {
  LatticePoints out;
  const double t = L.q_trace().get_d();
  if (std::abs(t) < 2.0) {
    out.note = "q is not real (|q + 1/q| < 2); no real parametrization";
    return out;
  }
  const double disc = std::sqrt(t * t - 4.0);
  out.q = std::abs((t + disc) / 2.0) >= 1.0 ? (t + disc) / 2.0 : (t - disc) / 2.0;

  const double a = L.conic().a_hat.get_d();
  const double lambda = L.lambda().get_d();
  const double tau = L.tau().get_d();
  const double spread = -tau * a;
  if (spread < 0.0) {
    out.note = "r has no real zero; no symmetric starting point";
    return out;
  }
  const Rational center_q = -(L.conic().b_hat * L.conic().d_hat - L.conic().a_hat * L.conic().e_hat) / L.lambda();
  double x = center_q.get_d() + std::sqrt(spread) / std::abs(lambda);
  for (int k = 0; k < count; ++k) {
    out.points.push_back(x);
    const double rx = L.r().eval(x);
    if (rx < 0.0) {
      out.note = "left the real branch after " + std::to_string(k + 1) + " points";
      break;
    }
    x = L.p().eval(x) + std::sqrt(rx);
  }
  if (out.points.size() >= 3) {
    // symmetric start means c1 = c2 with s0 = 0
    const double c1 = (out.points[2] - out.points[0]) / (t - 2.0);
    out.c1 = c1;
    out.c2 = c1;
    out.c3 = out.points[0] - 2.0 * c1;
  }
  return out;
}

}  // namespace lhsnul
