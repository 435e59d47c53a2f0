#include "lhsnul/laguerre_hahn.hpp"

#include <algorithm>
#include <string>

#include "lhsnul/errors.hpp"
#include "lhsnul/linear_solve.hpp"

namespace lhsnul {

namespace {

const QuadNumber kHalf(Rational(1, 2));

Poly m_linear(const Lattice& L, const Rational& beta) { return L.p() - Poly::constant(beta); }

Poly scaled(const Poly& f, const Rational& num, const Rational& den) { return f * QuadNumber(num / den); }

LaurentSeries series(const Poly& f) { return LaurentSeries::from_poly(f); }

// sum_b B_b sum_a X_a Y_{P-b-a}, restricted to coefficients that are stored.
QuadNumber product_coeff(const Poly& B, const LaurentSeries& X, const LaurentSeries& Y, int P) {
  QuadNumber acc;
  if (B.is_zero() || X.is_known_zero() || Y.is_known_zero()) return acc;
  const int x_lo = X.valid_to().value_or(X.top() - static_cast<int>(X.coefficients().size()) + 1);
  const int y_lo = Y.valid_to().value_or(Y.top() - static_cast<int>(Y.coefficients().size()) + 1);
  for (int b = 0; b <= B.degree(); ++b) {
    const QuadNumber bb = B.coeff(b);
    if (bb.is_zero()) continue;
    const int target = P - b;
    const int a_lo = std::max(x_lo, target - Y.top());
    const int a_hi = std::min(X.top(), target - y_lo);
    for (int a = a_lo; a <= a_hi; ++a) {
      const QuadNumber xa = X.coeff(a);
      if (xa.is_zero()) continue;
      acc += bb * xa * Y.coeff(target - a);
    }
  }
  return acc;
}

std::vector<QuadNumber> flatten(const RiccatiData& R, DegreeBounds b) {
  std::vector<QuadNumber> v;
  auto put = [&](const Poly& f, int deg) {
    if (f.degree() > deg) throw std::domain_error("Riccati data exceeds the degree bounds");
    for (int i = 0; i <= deg; ++i) v.push_back(f.coeff(i));
  };
  put(R.A, b.a);
  put(R.B, b.b);
  put(R.C, b.c);
  put(R.D, b.d);
  return v;
}

RiccatiData unflatten(const std::vector<QuadNumber>& v, DegreeBounds b) {
  std::size_t at = 0;
  auto take = [&](int deg) {
    std::vector<QuadNumber> c(v.begin() + static_cast<long>(at), v.begin() + static_cast<long>(at + deg + 1));
    at += static_cast<std::size_t>(deg + 1);
    return Poly(std::move(c));
  };
  RiccatiData R;
  R.A = take(b.a);
  R.B = take(b.b);
  R.C = take(b.c);
  R.D = take(b.d);
  return R;
}

SurdPoly lift(const Lattice& L, const Poly& f) { return L.constant(f); }

}  // namespace

int RiccatiData::theta_degree_bound() const { return std::max({A.degree() - 2, B.degree() - 2, C.degree() - 1}); }

bool RiccatiData::is_rational() const {
  return A.is_rational() && B.is_rational() && C.is_rational() && D.is_rational();
}

bool projectively_equal(const RiccatiData& a, const RiccatiData& b) {
  const std::vector<const Poly*> pa{&a.A, &a.B, &a.C, &a.D};
  const std::vector<const Poly*> pb{&b.A, &b.B, &b.C, &b.D};
  std::optional<QuadNumber> factor;
  for (std::size_t i = 0; i < 4 && !factor; ++i) {
    const int deg = std::max(pa[i]->degree(), pb[i]->degree());
    for (int k = 0; k <= deg; ++k) {
      const QuadNumber x = pa[i]->coeff(k), y = pb[i]->coeff(k);
      if (x.is_zero() != y.is_zero()) return false;
      if (!x.is_zero()) {
        factor = y / x;
        break;
      }
    }
  }
  if (!factor) return a == b;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(*pa[i] * *factor == *pb[i])) return false;
  }
  return true;
}

LaurentSeries riccati_residual(const Lattice& L, const RiccatiData& R, const LaurentSeries& S, std::optional<int> N,
                               Exec exec) {
  const ShiftedSeries sh = apply_all_series(L, S, N, exec);
  const LaurentSeries res = R.A * sh.d - R.B * LaurentSeries::multiply(sh.e1, sh.e2, {}, exec) - R.C * sh.m -
                            series(R.D);
  const int top = std::max(R.theta_degree_bound(), R.D.degree());
  if (res.valid_to() && *res.valid_to() > top) {
    const int have = S.truncation_order().value_or(N.value_or(0));
    const int need = have + (*res.valid_to() - top);
    throw InsufficientTruncation(need, "Riccati residual has no known coefficient; need S through x^-" +
                                           std::to_string(need));
  }
  return res;
}

std::vector<Rational> solve_moments_from_riccati(const Lattice& L, const RiccatiData& R, int count,
                                                 const std::map<int, Rational>& free_values, Exec exec) {
  if (R.A.is_zero()) throw InputError("Riccati data needs A != 0");
  if (count <= 0) return {};
  const int e = R.theta_degree_bound();
  for (int power = R.D.degree(); power > e; --power) {
    if (!R.D.coeff(power).is_zero()) {
      throw Inconsistent(power, "coefficient of x^" + std::to_string(power) + " is D's alone and nonzero (deg D > " +
                                    std::to_string(e) + ")");
    }
  }
  const int lowest = e - (count - 1);
  const int spread = std::max({R.A.degree(), R.B.degree(), R.C.degree(), 0});
  const int edge = lowest - spread - 1;
  const int precision = -edge + 2;

  // W_j[k] = E_j x^(-k-1) = (1/y_j)^(k+1)
  std::vector<LaurentSeries> W1, W2;
  {
    const LaurentSeries w1 = series_inverse(branch_series(L, 1, precision)).truncate(edge);
    const LaurentSeries w2 = series_inverse(branch_series(L, 2, precision)).truncate(edge);
    W1.push_back(w1);
    W2.push_back(w2);
    for (int k = 1; k < count; ++k) {
      W1.push_back(LaurentSeries::multiply(W1.back(), w1, edge, exec));
      W2.push_back(LaurentSeries::multiply(W2.back(), w2, edge, exec));
    }
  }
  const LaurentSeries inv_two_root = series_inverse(QuadNumber(2) * sqrt_r_series(L, precision));
  // linear part: A D x^(-k-1) - C M x^(-k-1)
  std::vector<LaurentSeries> lin(static_cast<std::size_t>(count));
  kernels::for_each_index(
      count,
      [&](int k) {
        const auto i = static_cast<std::size_t>(k);
        const LaurentSeries d = LaurentSeries::multiply(W2[i] - W1[i], inv_two_root, edge, Exec::serial);
        const LaurentSeries m = (W1[i] + W2[i]) * kHalf;
        lin[i] = R.A * d - R.C * m;
      },
      exec);

  std::vector<Rational> u;
  LaurentSeries e1 = W1[0], e2 = W2[0];
  {
    const QuadNumber value = lin[0].coeff(e) - product_coeff(R.B, e1, e2, e) - R.D.coeff(e);
    if (!value.is_zero()) {
      throw Inconsistent(e, "coefficient of x^" + std::to_string(e) + " involves only u_0 = 1 and is " +
                                to_string(value) + " instead of 0");
    }
    u.emplace_back(1);
  }
  for (int m = 1; m < count; ++m) {
    const int P = e - m;
    const auto mi = static_cast<std::size_t>(m);
    QuadNumber known = -product_coeff(R.B, e1, e2, P) - R.D.coeff(P);
    for (int k = 0; k < m; ++k) {
      if (sgn(u[static_cast<std::size_t>(k)]) != 0) {
        known += QuadNumber(u[static_cast<std::size_t>(k)]) * lin[static_cast<std::size_t>(k)].coeff(P);
      }
    }
    const QuadNumber kappa =
        lin[mi].coeff(P) - product_coeff(R.B, e1, W2[mi], P) - product_coeff(R.B, W1[mi], e2, P);
    QuadNumber um;
    if (kappa.is_zero()) {
      if (!known.is_zero()) {
        throw Inconsistent(P, "u_" + std::to_string(m) + " drops out of the coefficient of x^" + std::to_string(P) +
                                  ", which is " + to_string(known) + " instead of 0");
      }
      auto it = free_values.find(m);
      if (it == free_values.end()) {
        throw FreeParameter(m, "u_" + std::to_string(m) + " is not determined by the Riccati equation");
      }
      um = QuadNumber(it->second);
    } else {
      um = -known / kappa;
    }
    if (!um.is_rational()) throw MathError("solved moment u_" + std::to_string(m) + " is not rational");
    u.push_back(um.rational_part());
    if (!um.is_zero()) {
      e1 = e1 + W1[mi] * um;
      e2 = e2 + W2[mi] * um;
    }
  }
  return u;
}

DegreeBounds DegreeBounds::covering(const RiccatiData& R, DegreeBounds floor) {
  floor.a = std::max(floor.a, R.A.degree());
  floor.b = std::max(floor.b, R.B.degree());
  floor.c = std::max(floor.c, R.C.degree());
  floor.d = std::max(floor.d, R.D.degree());
  return floor;
}

std::vector<RiccatiData> fit_riccati(const Lattice& L, const LaurentSeries& S, DegreeBounds b, std::optional<int> N,
                                     Exec exec) {
  if (b.a < 0 || b.b < 0 || b.c < 0 || b.d < 0) throw InputError("degree bounds must be nonnegative");
  const ShiftedSeries sh = apply_all_series(L, S, N, exec);
  const LaurentSeries e12 = LaurentSeries::multiply(sh.e1, sh.e2, {}, exec);
  std::vector<LaurentSeries> cols;
  for (int i = 0; i <= b.a; ++i) cols.push_back(sh.d.shifted(i));
  for (int i = 0; i <= b.b; ++i) cols.push_back(-e12.shifted(i));
  for (int i = 0; i <= b.c; ++i) cols.push_back(-sh.m.shifted(i));
  for (int i = 0; i <= b.d; ++i) cols.push_back(LaurentSeries::monomial(-1, i));

  std::optional<int> low;
  int top = 0;
  for (const auto& c : cols) {
    if (c.valid_to()) low = std::max(low.value_or(*c.valid_to()), *c.valid_to());
    if (!c.is_known_zero()) top = std::max(top, c.top());
  }
  if (!low) throw std::domain_error("fit_riccati needs a truncated series or N");
  std::vector<Row> rows;
  for (int P = top; P >= *low; --P) {
    Row row;
    row.reserve(cols.size());
    for (const auto& c : cols) row.push_back(c.coeff(P));
    if (std::any_of(row.begin(), row.end(), [](const QuadNumber& x) { return !x.is_zero(); })) {
      rows.push_back(std::move(row));
    }
  }
  std::vector<Row> basis = nullspace(std::move(rows), static_cast<int>(cols.size()), exec);

  std::vector<RiccatiData> out;
  for (const auto& v : basis) out.push_back(unflatten(v, b));
  auto with_a = std::find_if(out.begin(), out.end(), [](const RiccatiData& R) { return !R.A.is_zero(); });
  if (with_a == out.end()) return {};
  const RiccatiData anchor = *with_a;
  for (auto& R : out) {
    if (R.A.is_zero()) {
      R.A = R.A + anchor.A;
      R.B = R.B + anchor.B;
      R.C = R.C + anchor.C;
      R.D = R.D + anchor.D;
    }
  }
  return out;
}

bool in_span(const std::vector<RiccatiData>& basis, const RiccatiData& R, DegreeBounds b) {
  std::vector<Row> rows;
  for (const auto& v : basis) rows.push_back(flatten(v, b));
  const int cols = b.unknowns();
  std::vector<Row> with = rows;
  with.push_back(flatten(R, b));
  return row_reduce(rows, cols, Exec::serial).size() == row_reduce(with, cols, Exec::serial).size();
}

void StructureCoeffs::push(Poly l_n, Poly pi_n, Poly theta_n, Poly theta_hat_n) {
  l.push_back(std::move(l_n));
  pi.push_back(std::move(pi_n));
  theta.push_back(std::move(theta_n));
  theta_hat.push_back(std::move(theta_hat_n));
}

StructureCoeffs initial_structure_coeffs(const RiccatiData& R) {
  StructureCoeffs c;
  c.push(R.C * kHalf, Poly(), R.D, R.D);
  return c;
}

Poly gathered_A(const Lattice& L, const RiccatiData& R, const StructureCoeffs& c, int n) {
  return R.A + QuadNumber(2) * L.r() * c.pi_at(n - 1);
}

StructureCoeffs structure_coeffs_direct(const Lattice& L, const RiccatiData& R, const SMOPData& data, int max_level,
                                        Exec exec) {
  if (data.n_max < max_level + 1) {
    throw std::domain_error("structure coefficients through level " + std::to_string(max_level) + " need P_" +
                            std::to_string(max_level + 1));
  }
  const int bound = R.theta_degree_bound();
  const int levels = max_level + 1;
  std::vector<Poly> l(levels), pi(levels), theta(levels), theta_hat(levels);
  kernels::for_each_index(
      levels,
      [&](int idx) {
        const int n = idx + 1;  // computes level n - 1
        const Poly& Pn = data.p(n);
        const Poly& Q = data.p1(n - 1);
        const SurdPoly e1P = apply_shift(L, Pn, 1), e2P = apply_shift(L, Pn, 2);
        const SurdPoly e1Q = apply_shift(L, Q, 1), e2Q = apply_shift(L, Q, 2);
        const Poly dP = apply_D(L, Pn), dQ = apply_D(L, Q);

        const SurdPoly hat = -(R.A * dQ) * e1P + (R.A * dP) * e1Q + R.B * surd_mul(e1Q, e2Q) +
                             (R.C * kHalf) * (surd_mul(e1Q, e2P) + surd_mul(e1P, e2Q)) + R.D * surd_mul(e1P, e2P);
        if (!hat.is_polynomial()) {
          throw NotLaguerreHahn(n - 1, "hat Theta_" + std::to_string(n - 1) + " has a sqrt(r) component " +
                                           to_string(hat.v()));
        }
        if (hat.u().degree() > bound) {
          throw DegreeBoundExceeded(n - 1, "deg hat Theta_" + std::to_string(n - 1) + " = " +
                                               std::to_string(hat.u().degree()) + " exceeds " + std::to_string(bound));
        }
        const Poly th = scaled(hat.u(), 1, data.gamma_product(n - 1));
        const SurdPoly num =
            lift(L, R.A * dP) + (R.C * kHalf) * e2P + R.B * e2Q - th * apply_shift(L, data.p(n - 1), 1);
        SurdPoly Lq = L.zero();
        try {
          Lq = surd_exact_div(num, e1P);
        } catch (const DivisionNotExact& err) {
          throw DivisionNotExact("level " + std::to_string(n - 1) + ": " + err.what());
        }
        const auto i = static_cast<std::size_t>(idx);
        l[i] = Lq.u();
        pi[i] = Lq.v() * kHalf;
        theta[i] = th;
        theta_hat[i] = hat.u();
      },
      exec);
  StructureCoeffs c = initial_structure_coeffs(R);
  for (std::size_t i = 0; i < static_cast<std::size_t>(levels); ++i) c.push(l[i], pi[i], theta[i], theta_hat[i]);
  return c;
}

std::pair<SurdPoly, SurdPoly> verify_structure_relations(const Lattice& L, const RiccatiData& R, const SMOPData& data,
                                                         const StructureCoeffs& c, int n, int variant) {
  if (n < 1) throw std::domain_error("structure relations start at n = 1");
  if (variant != 1 && variant != 2) throw std::domain_error("variant must be 1 or 2");
  const int i = variant == 1 ? 1 : 2;
  const int k = 3 - i;
  const QuadNumber sign(variant == 1 ? 2 : -2);
  const SurdPoly factor(c.l_at(n - 1), sign * c.pi_at(n - 1), L.radicand());
  const Poly& Pn = data.p(n);
  const Poly& Q = data.p1(n - 1);
  const SurdPoly eiP = apply_shift(L, Pn, i), ekP = apply_shift(L, Pn, k);
  const SurdPoly eiQ = apply_shift(L, Q, i), ekQ = apply_shift(L, Q, k);
  const Poly half_c = R.C * kHalf;
  const Poly& th = c.theta_at(n - 1);

  const SurdPoly rhs1 = surd_mul(factor, eiP) - half_c * ekP - R.B * ekQ + th * apply_shift(L, data.p(n - 1), i);
  const SurdPoly rhs2 = surd_mul(factor, eiQ) + half_c * ekQ + R.D * ekP + th * apply_shift(L, data.p1(n - 2), i);
  return {lift(L, R.A * apply_D(L, Pn)) - rhs1, lift(L, R.A * apply_D(L, Q)) - rhs2};
}

SeriesContext::SeriesContext(const Lattice& L, const LaurentSeries& S, Exec exec)
    : L_(&L), S_(S), sh_(apply_all_series(L, S, {}, exec)), exec_(exec) {
  const int N = S.truncation_order().value_or(0);
  sqrt_r_ = sqrt_r_series(L, N + 6);
}

LaurentSeries SeriesContext::q(const SMOPData& data, int n) const {
  if (n == -1) return LaurentSeries::monomial(1, 0);
  return data.p(n) * S_ - series(data.p1(n - 1));
}

LaurentSeries SeriesContext::Dq(const SMOPData& data, int n) const {
  if (n == -1) return {};
  const Poly& Pn = data.p(n);
  return apply_D(*L_, Pn) * sh_.m + apply_M(*L_, Pn) * sh_.d - series(apply_D(*L_, data.p1(n - 1)));
}

LaurentSeries SeriesContext::Mq(const SMOPData& data, int n) const {
  if (n == -1) return LaurentSeries::monomial(1, 0);
  const Poly& Pn = data.p(n);
  return apply_M(*L_, Pn) * sh_.m + (L_->r() * apply_D(*L_, Pn)) * sh_.d - series(apply_M(*L_, data.p1(n - 1)));
}

LaurentSeries SeriesContext::Eq(const SMOPData& data, int n, int j) const {
  const LaurentSeries root_d = LaurentSeries::multiply(sqrt_r_, Dq(data, n), {}, exec_);
  return j == 1 ? Mq(data, n) - root_d : Mq(data, n) + root_d;
}

std::pair<LaurentSeries, LaurentSeries> verify_second_kind_relations(const SeriesContext& ctx, const RiccatiData& R,
                                                                     const SMOPData& data, const StructureCoeffs& c,
                                                                     int n) {
  if (n < 0) throw std::domain_error("second-kind relations start at n = 0");
  const int required = 2 * n + 1;
  const int have = ctx.S().truncation_order().value_or(0);
  if (have < required) {
    throw InsufficientTruncation(required, "second-kind relation at n = " + std::to_string(n) +
                                               " needs S through x^-" + std::to_string(required) + ", have x^-" +
                                               std::to_string(have));
  }
  const LaurentSeries Aq = R.A * ctx.Dq(data, n);
  const Poly& l = c.l_at(n - 1);
  const Poly& pi = c.pi_at(n - 1);
  const Poly& th = c.theta_at(n - 1);
  const Poly half_c = R.C * kHalf;
  auto residual = [&](int variant) {
    const int i = variant == 1 ? 1 : 2;
    const int k = 3 - i;
    const QuadNumber sign(variant == 1 ? 2 : -2);
    const LaurentSeries eiq = ctx.Eq(data, n, i);
    const LaurentSeries ekq = ctx.Eq(data, n, k);
    const LaurentSeries& eiS = i == 1 ? ctx.shifted().e1 : ctx.shifted().e2;
    const LaurentSeries factor_q = l * eiq + (sign * pi) * LaurentSeries::multiply(ctx.sqrt_r(), eiq, {}, ctx.exec());
    const LaurentSeries second = R.B * LaurentSeries::multiply(eiS, ekq, {}, ctx.exec()) + half_c * ekq;
    return Aq - factor_q - second - th * ctx.Eq(data, n - 1, i);
  };
  return {residual(1), residual(2)};
}

GatheredResiduals gathered_relations(const SeriesContext& ctx, const RiccatiData& R, const SMOPData& data,
                                     const StructureCoeffs& c, int n) {
  const Lattice& L = ctx.lattice();
  const Poly half_c = R.C * kHalf;
  GatheredResiduals out;
  const Poly a_next = gathered_A(L, R, c, n + 1);
  const Poly& th = c.theta_at(n);
  const Poly& l = c.l_at(n);
  out.p = a_next * apply_D(L, data.p(n + 1)) -
          ((l - half_c) * apply_M(L, data.p(n + 1)) - R.B * apply_M(L, data.p1(n)) + th * apply_M(L, data.p(n)));
  out.p1 = a_next * apply_D(L, data.p1(n)) -
           ((l + half_c) * apply_M(L, data.p1(n)) + R.D * apply_M(L, data.p(n + 1)) + th * apply_M(L, data.p1(n - 1)));

  const LaurentSeries qn = ctx.q(data, n);
  const LaurentSeries mq = ctx.Mq(data, n);
  const LaurentSeries m_sq = apply_M_series(L, LaurentSeries::multiply(ctx.S(), qn, {}, ctx.exec()), {}, ctx.exec());
  const LaurentSeries b_term =
      R.B * (QuadNumber(2) * LaurentSeries::multiply(ctx.shifted().m, mq, {}, ctx.exec()) - m_sq);
  out.q = gathered_A(L, R, c, n) * ctx.Dq(data, n) -
          ((c.l_at(n - 1) + half_c) * mq + b_term + c.theta_at(n - 1) * ctx.Mq(data, n - 1));
  return out;
}

StructureLevel recursion_level_zero(const Lattice& L, const RiccatiData& R, const SMOPData& data) {
  const Poly m0 = m_linear(L, data.beta.at(0));
  StructureLevel z;
  z.pi = R.D * QuadNumber(Rational(-1, 2));
  z.l = -(m0 * R.D) - R.C * kHalf;
  z.theta = R.A - L.r() * R.D - (z.l - R.C * kHalf) * m0 + R.B;
  return z;
}

StructureLevel recursion_step(const Lattice& L, const RiccatiData& R, const SMOPData& data, const StructureCoeffs& c,
                              int n) {
  if (n < 0) throw std::domain_error("recursion_step needs n >= 0");
  const auto k1 = static_cast<std::size_t>(n + 1);
  const Rational& g_next = data.gamma.at(k1);
  const Rational& g_n = data.gamma.at(static_cast<std::size_t>(n));
  const Poly m_next = m_linear(L, data.beta.at(k1));
  const Poly m_n = m_linear(L, data.beta.at(static_cast<std::size_t>(n)));
  Poly sum;
  for (int k = 0; k <= n; ++k) sum += scaled(c.theta_at(k - 1), 1, data.gamma.at(static_cast<std::size_t>(k)));

  StructureLevel s;
  s.pi = -c.pi_at(n) - scaled(c.theta_at(n), 1, 2 * g_next) - sum;
  s.l = -c.l_at(n) - scaled(m_next * c.theta_at(n), 1, g_next);
  const Poly& r = L.r();
  s.theta = R.A + QuadNumber(2) * r * (c.pi_at(n) + c.pi_at(n - 1)) +
            scaled(c.theta_at(n - 1), 1, g_n) * (Poly::constant(g_next) - r - m_n * m_next) +
            scaled(c.theta_at(n), 1, g_next) * (m_next * m_next - r) + m_next * (c.l_at(n) - c.l_at(n - 1));
  return s;
}

StructureCoeffs recursion_coeffs(const Lattice& L, const RiccatiData& R, const SMOPData& data, int max_level) {
  StructureCoeffs c = initial_structure_coeffs(R);
  if (max_level < 0) return c;
  StructureLevel z = recursion_level_zero(L, R, data);
  c.push(z.l, z.pi, z.theta, scaled(z.theta, data.gamma_product(0), 1));
  for (int n = 0; n < max_level; ++n) {
    StructureLevel s = recursion_step(L, R, data, c, n);
    Poly hat = scaled(s.theta, data.gamma_product(n + 1), 1);
    c.push(std::move(s.l), std::move(s.pi), std::move(s.theta), std::move(hat));
  }
  return c;
}

Poly telescope_T_defect(const StructureCoeffs& c, const SMOPData& data, int n) {
  const Rational& g = data.gamma.at(static_cast<std::size_t>(n));
  Poly T = c.pi_at(n) + c.pi_at(n - 1) + scaled(c.theta_at(n - 1), 1, 2 * g);
  for (int k = 0; k < n; ++k) T += scaled(c.theta_at(k - 1), 1, data.gamma.at(static_cast<std::size_t>(k)));
  return T;
}

Poly telescope_L(const Lattice& L, const StructureCoeffs& c, const SMOPData& data, int n) {
  const auto k = static_cast<std::size_t>(n);
  return c.l_at(n) + c.l_at(n - 1) + scaled(m_linear(L, data.beta.at(k)) * c.theta_at(n - 1), 1, data.gamma.at(k));
}

MagnusRiccatiData magnus_data(const Lattice& L, const RiccatiData& R, const SMOPData& data, const StructureCoeffs& c,
                              int n) {
  const auto k = static_cast<std::size_t>(n);
  const Rational& g = data.gamma.at(k);
  MagnusRiccatiData M;
  M.level = n;
  M.A = R.A + QuadNumber(2) * L.r() * (c.pi_at(n) + c.pi_at(n - 1) - scaled(c.theta_at(n - 1), 1, 2 * g));
  M.B = scaled(c.theta_at(n - 1), 1, g);
  M.C = c.l_at(n) - c.l_at(n - 1) - scaled(m_linear(L, data.beta.at(k)) * c.theta_at(n - 1), 1, g);
  M.D = c.theta_at(n);
  return M;
}

MagnusRiccatiData magnus_step(const Lattice& L, const MagnusRiccatiData& M, const Rational& beta, const Rational& gamma,
                              const Poly& rho) {
  const Poly m = m_linear(L, beta);
  const Poly& r = L.r();
  const Poly d_over = scaled(M.D, 1, gamma);
  MagnusRiccatiData out;
  out.level = M.level + 1;
  out.rho = rho;
  out.A = rho * (M.A - QuadNumber(2) * r * d_over);
  out.B = rho * d_over;
  out.C = rho * (-M.C - QuadNumber(2) * m * d_over);
  out.D = rho * (M.A + M.B * QuadNumber(gamma) + m * M.C + (m * m - r) * d_over);
  return out;
}

LaurentSeries magnus_riccati_residual(const SeriesContext& ctx, const SMOPData& data, const MagnusRiccatiData& M) {
  const int n = M.level;
  const LaurentSeries qn = ctx.q(data, n);
  const LaurentSeries g = LaurentSeries::multiply(ctx.q(data, n + 1), series_inverse(qn), {}, ctx.exec());
  RiccatiData R{M.A, M.B, M.C, M.D};
  return riccati_residual(ctx.lattice(), R, g, {}, ctx.exec());
}

std::vector<std::pair<std::string, Poly>> initial_condition_defects(const Lattice& L, const RiccatiData& R,
                                                                    const SMOPData& data, const StructureCoeffs& c) {
  const StructureLevel z = recursion_level_zero(L, R, data);
  std::vector<std::pair<std::string, Poly>> out;
  out.emplace_back("l_-1", c.l_at(-1) - R.C * kHalf);
  out.emplace_back("pi_-1", c.pi_at(-1));
  out.emplace_back("Theta_-1", c.theta_at(-1) - R.D);
  if (c.max_level() >= 0) {
    out.emplace_back("pi_0", c.pi_at(0) - z.pi);
    out.emplace_back("l_0", c.l_at(0) - z.l);
    out.emplace_back("Theta_0", c.theta_at(0) - z.theta);
  }
  return out;
}

RiccatiData reconstruct_riccati(const Lattice& L, const StructureCoeffs& c, const SMOPData& data) {
  if (c.max_level() < 1) throw InputError("reconstruction needs structure coefficients through level 1");
  if (data.n_max < 2) throw InputError("reconstruction needs P_2");
  if (!c.pi_at(-1).is_zero()) throw InputError("pi_-1 must vanish");
  RiccatiData R;
  R.C = QuadNumber(2) * c.l_at(-1);
  R.D = c.theta_at(-1);
  const Poly half_c = R.C * kHalf;
  const Poly m0 = m_linear(L, data.beta.at(0));
  const Poly K0 = c.theta_at(0) + L.r() * R.D + (c.l_at(0) - half_c) * m0;
  const Poly K1 = (c.l_at(1) - half_c) * apply_M(L, data.p(2)) + c.theta_at(1) * apply_M(L, data.p(1)) -
                  QuadNumber(2) * L.r() * c.pi_at(1) * apply_D(L, data.p(2));
  const Poly W = apply_D(L, data.p(2)) - apply_M(L, data.p1(1));
  if (W.is_zero()) throw Underdetermined("M(x - beta_0) vanishes; A and B cannot be separated");
  R.A = Poly::exact_div(K1 - K0 * apply_M(L, data.p1(1)), W);
  R.B = K0 - R.A;
  return R;
}

}  // namespace lhsnul
