#include "lhsnul/orthopoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "lhsnul/errors.hpp"

namespace lhsnul {

namespace {

const Poly& zero_poly() {
  static const Poly z;
  return z;
}

}  // namespace

const Poly& SMOPData::p(int n) const {
  if (n == -1) return zero_poly();
  if (n < -1 || n >= static_cast<int>(P.size())) throw std::out_of_range("P_" + std::to_string(n) + " not built");
  return P[static_cast<std::size_t>(n)];
}

const Poly& SMOPData::p1(int n) const {
  if (n == -1) return zero_poly();
  if (n < -1 || n >= static_cast<int>(P1.size())) throw std::out_of_range("P1_" + std::to_string(n) + " not built");
  return P1[static_cast<std::size_t>(n)];
}

Rational SMOPData::gamma_product(int n) const {
  Rational out(1);
  for (int k = 0; k <= n; ++k) out *= gamma.at(static_cast<std::size_t>(k));
  return out;
}

SMOPData smop_from_recurrence(const std::vector<Rational>& beta, const std::vector<Rational>& gamma, int n_max) {
  if (n_max < 0) throw InvalidRecurrence("n_max must be nonnegative");
  const auto need = static_cast<std::size_t>(n_max + 1);
  if (beta.size() < need || gamma.size() < need) {
    throw InvalidRecurrence("need beta_0..beta_" + std::to_string(n_max) + " and gamma_0..gamma_" +
                            std::to_string(n_max));
  }
  if (gamma[0] != 1) throw InvalidRecurrence("gamma_0 must equal u_0 = 1");
  for (int n = 1; n <= n_max; ++n) {
    if (sgn(gamma[static_cast<std::size_t>(n)]) == 0) {
      throw InvalidRecurrence("gamma_" + std::to_string(n) + " = 0");
    }
  }
  SMOPData d;
  d.beta.assign(beta.begin(), beta.begin() + static_cast<long>(need));
  d.gamma.assign(gamma.begin(), gamma.begin() + static_cast<long>(need));
  d.n_max = n_max;
  d.P.push_back(Poly::constant(1));
  d.P1.push_back(Poly::constant(1));
  for (int n = 0; n < n_max; ++n) {
    const auto k = static_cast<std::size_t>(n);
    d.P.push_back(Poly::linear(d.beta[k]) * d.p(n) - QuadNumber(d.gamma[k]) * d.p(n - 1));
  }
  for (int n = 1; n <= n_max; ++n) {
    const auto k = static_cast<std::size_t>(n);
    d.P1.push_back(Poly::linear(d.beta[k]) * d.p1(n - 1) - QuadNumber(d.gamma[k]) * d.p1(n - 2));
  }
  return d;
}

std::vector<Rational> moments_from_recurrence(const std::vector<Rational>& beta, const std::vector<Rational>& gamma,
                                              int count) {
  if (count < 0) throw std::domain_error("moment count must be nonnegative");
  std::vector<Rational> out;
  if (count == 0) return out;
  const int reach = (count - 1) / 2;  // deepest entry that still feeds u_{count-1}
  if (static_cast<int>(beta.size()) < reach + 1 || static_cast<int>(gamma.size()) < reach + 1) {
    throw InvalidRecurrence("too few recurrence coefficients for " + std::to_string(count) + " moments");
  }
  std::vector<Rational> v(static_cast<std::size_t>(reach + 2));
  v[0] = 1;
  out.push_back(v[0]);
  for (int step = 1; step < count; ++step) {
    const int width = std::min(step, count - 1 - step);
    std::vector<Rational> next(v.size());
    for (int m = 0; m <= width; ++m) {
      const auto k = static_cast<std::size_t>(m);
      Rational acc = beta[k] * v[k];
      if (sgn(v[k + 1]) != 0) acc += gamma.at(k + 1) * v[k + 1];
      if (m > 0) acc += v[k - 1];
      next[k] = acc;
    }
    v = std::move(next);
    out.push_back(v[0]);
  }
  return out;
}

RecurrenceCoefficients recurrence_from_moments(const std::vector<Rational>& u, int n_max) {
  if (n_max < 0) throw std::domain_error("n_max must be nonnegative");
  const int L = 2 * n_max + 2;
  if (static_cast<int>(u.size()) < L) {
    throw InsufficientTruncation(L, "need moments u_0..u_" + std::to_string(L - 1) + " for n_max = " +
                                        std::to_string(n_max));
  }
  if (u[0] != 1) throw InputError("moments must be normalized with u_0 = 1");
  RecurrenceCoefficients out;
  // sigma rows k-2, k-1, k indexed by l
  std::vector<Rational> prev(static_cast<std::size_t>(L));
  std::vector<Rational> cur(u.begin(), u.begin() + L);
  out.beta.push_back(cur[1] / cur[0]);
  out.gamma.push_back(cur[0]);
  for (int k = 1; k <= n_max; ++k) {
    std::vector<Rational> next(static_cast<std::size_t>(L));
    const Rational& b = out.beta.back();
    const Rational& g = out.gamma.back();
    for (int l = k; l < L - k; ++l) {
      const auto i = static_cast<std::size_t>(l);
      next[i] = cur[i + 1] - b * cur[i];
      if (k >= 2) next[i] -= g * prev[i];
    }
    const auto kk = static_cast<std::size_t>(k);
    if (sgn(next[kk]) == 0) {
      throw NotQuasiDefinite(k, "Hankel determinant of order " + std::to_string(k + 1) + " vanishes (n = " +
                                    std::to_string(k) + ")");
    }
    out.beta.push_back(next[kk + 1] / next[kk] - cur[kk] / cur[kk - 1]);
    out.gamma.push_back(next[kk] / cur[kk - 1]);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

LaurentSeries second_kind_series(const SMOPData& data, const LaurentSeries& S, int n) {
  if (n == -1) return LaurentSeries::monomial(1, 0);
  if (n < -1) throw std::domain_error("second-kind index must be >= -1");
  return data.p(n) * S - LaurentSeries::from_poly(data.p1(n - 1));
}

std::vector<LaurentSeries> second_kind_by_recurrence(const SMOPData& data, const LaurentSeries& S, int n) {
  std::vector<LaurentSeries> q{LaurentSeries::monomial(1, 0), S};
  for (int k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    q.push_back(Poly::linear(data.beta.at(i)) * q[i + 1] - q[i] * QuadNumber(data.gamma.at(i)));
  }
  return q;
}

SecondKindCheck check_second_kind(const SMOPData& data, const LaurentSeries& S, int n) {
  const int required = 2 * n + 1;
  const std::optional<int> N = S.truncation_order();
  if (N && *N < required) {
    throw InsufficientTruncation(required, "q_" + std::to_string(n) + " needs S through x^-" +
                                               std::to_string(required) + ", have x^-" + std::to_string(*N));
  }
  SecondKindCheck out;
  const LaurentSeries by_def = second_kind_series(data, S, n);
  const LaurentSeries by_rec = second_kind_by_recurrence(data, S, n).back();
  out.agree = compare_in_window(by_def, by_rec).equal;
  out.window_low = by_def.valid_to().value_or(-required);
  out.decays = true;
  for (int power = n - 1; power >= -n; --power) {
    if (!by_def.coeff(power).is_zero()) {
      out.decays = false;
      out.first_bad_power = power;
      break;
    }
  }
  return out;
}

Poly liouville_defect(const SMOPData& data, int n) {
  return data.p1(n) * data.p(n) - data.p(n + 1) * data.p1(n - 1) - Poly::constant(data.gamma_product(n));
}

}  // namespace lhsnul
