#include "lhsnul/poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "lhsnul/errors.hpp"

namespace lhsnul {

Poly::Poly(std::vector<QuadNumber> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const QuadNumber& c) { return Poly(std::vector<QuadNumber>{c}); }

Poly Poly::monomial(const QuadNumber& c, int k) {
  if (k < 0) throw std::domain_error("negative exponent in monomial");
  std::vector<QuadNumber> v(static_cast<std::size_t>(k) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::linear(const QuadNumber& a) { return Poly({-a, QuadNumber(1)}); }

Poly Poly::from_rationals(const std::vector<Rational>& coeffs) {
  std::vector<QuadNumber> v(coeffs.begin(), coeffs.end());
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool Poly::is_rational() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const QuadNumber& c) { return c.is_rational(); });
}

QuadNumber Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

QuadNumber Poly::eval(const QuadNumber& x) const {
  QuadNumber acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

double Poly::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_double();
  return acc;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const QuadNumber& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<QuadNumber> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  if (f.degree() < g.degree()) return {Poly(), f};
  std::vector<QuadNumber> rem = f.coeffs_;
  std::vector<QuadNumber> quot(f.coeffs_.size() - g.coeffs_.size() + 1);
  const QuadNumber lead_inv = g.leading().inverse();
  const std::size_t dg = g.coeffs_.size() - 1;
  for (std::size_t k = quot.size(); k-- > 0;) {
    const QuadNumber c = rem[k + dg] * lead_inv;
    quot[k] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= dg; ++j) rem[k + j] -= c * g.coeffs_[j];
  }
  rem.resize(dg);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly Poly::exact_div(const Poly& f, const Poly& g) {
  auto [q, r] = divmod(f, g);
  if (!r.is_zero()) throw DivisionNotExact("polynomial division leaves remainder " + to_string(r));
  return q;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int k = p.degree(); k >= 0; --k) {
    const QuadNumber c = p.coeff(k);
    if (c.is_zero()) continue;
    std::string cs = to_string(c);
    const bool compound = !c.is_rational() && sgn(c.rational_part()) != 0;
    if (compound) cs = "(" + cs + ")";
    bool negative = !compound && !cs.empty() && cs[0] == '-';
    if (negative) cs.erase(0, 1);
    if (!s.empty()) {
      s += negative ? " - " : " + ";
    } else if (negative) {
      s += "-";
    }
    if (k == 0) {
      s += cs;
      continue;
    }
    if (cs != "1") s += cs + "*";
    s += k == 1 ? "x" : "x^" + std::to_string(k);
  }
  return s;
}

}  // namespace lhsnul
