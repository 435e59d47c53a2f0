#include "lhsnul/laurent_series.hpp"

#include <algorithm>
#include <stdexcept>

#include "lhsnul/errors.hpp"

namespace lhsnul {

namespace {

// Lowest power actually stored (exact series) or the window edge.
int lowest_power(const LaurentSeries& s) {
  if (s.valid_to()) return *s.valid_to();
  return s.top() - static_cast<int>(s.coefficients().size()) + 1;
}

std::optional<int> max_window(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

}  // namespace

LaurentSeries LaurentSeries::exact(int top, std::vector<QuadNumber> coeffs) {
  LaurentSeries s;
  s.top_ = top;
  s.coeffs_ = std::move(coeffs);
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::truncated(int top, std::vector<QuadNumber> coeffs, int valid_to) {
  LaurentSeries s;
  s.valid_to_ = valid_to;
  if (top < valid_to) {
    s.top_ = valid_to - 1;
    return s;
  }
  s.top_ = top;
  s.coeffs_ = std::move(coeffs);
  s.coeffs_.resize(static_cast<std::size_t>(top - valid_to + 1));
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::from_poly(const Poly& p) {
  if (p.is_zero()) return {};
  auto c = p.coefficients();
  return exact(p.degree(), std::vector<QuadNumber>(c.rbegin(), c.rend()));
}

LaurentSeries LaurentSeries::monomial(const QuadNumber& c, int power) { return exact(power, {c}); }

LaurentSeries LaurentSeries::stieltjes(std::span<const Rational> moments) {
  std::vector<QuadNumber> c(moments.begin(), moments.end());
  return truncated(-1, std::move(c), -static_cast<int>(moments.size()));
}

void LaurentSeries::normalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    top_ -= static_cast<int>(lead);
  }
  if (!valid_to_) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) top_ = 0;
  } else if (coeffs_.empty()) {
    top_ = *valid_to_ - 1;
  }
}

std::optional<int> LaurentSeries::truncation_order() const {
  if (!valid_to_) return std::nullopt;
  return -*valid_to_;
}

QuadNumber LaurentSeries::coeff(int power) const {
  if (!known(power)) {
    throw InsufficientTruncation(-power, "coefficient of x^" + std::to_string(power) +
                                             " is outside the valid window (known through x^" +
                                             std::to_string(*valid_to_) + ")");
  }
  const int idx = top_ - power;
  if (idx < 0 || idx >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(idx)];
}

QuadNumber LaurentSeries::leading() const {
  if (coeffs_.empty()) throw std::domain_error("series has no known nonzero coefficient");
  return coeffs_.front();
}

std::optional<int> LaurentSeries::first_nonzero_power() const {
  if (coeffs_.empty()) return std::nullopt;
  return top_;
}

LaurentSeries LaurentSeries::truncate(int valid_to) const {
  if (valid_to_ && *valid_to_ >= valid_to) return *this;
  std::vector<QuadNumber> c = coeffs_;
  if (coeffs_.empty() && !valid_to_) return truncated(valid_to - 1, {}, valid_to);
  return truncated(top_, std::move(c), valid_to);
}

LaurentSeries LaurentSeries::shifted(int k) const {
  LaurentSeries s = *this;
  if (is_exact_zero()) return s;
  s.top_ += k;
  if (s.valid_to_) *s.valid_to_ += k;
  return s;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries s = *this;
  for (auto& c : s.coeffs_) c = -c;
  return s;
}

LaurentSeries& LaurentSeries::operator*=(const QuadNumber& c) {
  if (c.is_zero()) {
    if (!valid_to_) {
      coeffs_.clear();
      top_ = 0;
    } else {
      coeffs_.clear();
      top_ = *valid_to_ - 1;
    }
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

namespace {

LaurentSeries add_scaled(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
  if (b.is_exact_zero()) return a;
  if (a.is_exact_zero()) return subtract ? -b : b;
  const std::optional<int> window = max_window(a.valid_to(), b.valid_to());
  const int top = std::max(a.top(), b.top());
  const int low = window ? *window : std::min(lowest_power(a), lowest_power(b));
  if (top < low) return LaurentSeries::truncated(low - 1, {}, low);
  std::vector<QuadNumber> out(static_cast<std::size_t>(top - low + 1));
  auto accumulate = [&](const LaurentSeries& s, bool negate) {
    auto c = s.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
      const int power = s.top() - static_cast<int>(i);
      if (power < low) break;
      auto& slot = out[static_cast<std::size_t>(top - power)];
      if (negate) {
        slot -= c[i];
      } else {
        slot += c[i];
      }
    }
  };
  accumulate(a, false);
  accumulate(b, subtract);
  if (window) return LaurentSeries::truncated(top, std::move(out), *window);
  return LaurentSeries::exact(top, std::move(out));
}

}  // namespace

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return add_scaled(a, b, false); }
LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return add_scaled(a, b, true); }

LaurentSeries LaurentSeries::multiply(const LaurentSeries& a, const LaurentSeries& b, std::optional<int> floor,
                                      Exec exec) {
  if (a.is_exact_zero() || b.is_exact_zero()) return {};
  const int top = a.top() + b.top();
  std::optional<int> window;
  if (a.valid_to_ && b.valid_to_) {
    window = std::max(a.top() + *b.valid_to_, b.top() + *a.valid_to_);
  } else if (a.valid_to_) {
    window = b.top() + *a.valid_to_;
  } else if (b.valid_to_) {
    window = a.top() + *b.valid_to_;
  }
  window = max_window(window, floor);
  if (window && top < *window) return truncated(*window - 1, {}, *window);
  std::size_t count;
  if (window) {
    count = static_cast<std::size_t>(top - *window + 1);
  } else {
    count = a.coeffs_.size() + b.coeffs_.size() - 1;
  }
  std::vector<QuadNumber> out = kernels::convolve(a.coeffs_, b.coeffs_, count, exec);
  if (window) return truncated(top, std::move(out), *window);
  return exact(top, std::move(out));
}

LaurentSeries series_mul(const LaurentSeries& f, const LaurentSeries& g, std::optional<int> floor) {
  return LaurentSeries::multiply(f, g, floor);
}

LaurentSeries series_inverse(const LaurentSeries& f, std::optional<int> floor) {
  if (f.is_known_zero()) throw std::domain_error("series_inverse: no known nonzero leading coefficient");
  const int t = f.top();
  std::optional<int> window;
  if (f.valid_to()) window = *f.valid_to() - 2 * t;
  window = max_window(window, floor);
  if (!window) throw std::domain_error("series_inverse: exact input needs an explicit floor");
  const int top = -t;
  if (top < *window) return LaurentSeries::truncated(*window - 1, {}, *window);
  const auto count = static_cast<std::size_t>(top - *window + 1);
  auto fc = f.coefficients();
  const QuadNumber lead_inv = fc[0].inverse();
  std::vector<QuadNumber> g(count);
  g[0] = lead_inv;
  for (std::size_t k = 1; k < count; ++k) {
    QuadNumber acc;
    const std::size_t hi = std::min(k, fc.size() - 1);
    for (std::size_t i = 1; i <= hi; ++i) {
      if (fc[i].is_zero()) continue;
      acc += fc[i] * g[k - i];
    }
    g[k] = -(acc * lead_inv);
  }
  return LaurentSeries::truncated(top, std::move(g), *window);
}

LaurentSeries sqrt_series(const Poly& r, int N, long discriminant) {
  if (r.is_zero() || r.degree() % 2 != 0) throw std::domain_error("sqrt_series: radicand must have even degree");
  const QuadNumber lead = r.leading();
  if (!lead.is_rational()) throw FieldTooSmall("sqrt_series: leading coefficient of r is irrational");
  const QuadNumber h0 = QuadNumber::sqrt(lead.rational_part(), discriminant);
  const int m = r.degree() / 2;
  const int count = m + N + 1;  // powers m .. -N
  if (count <= 0) return LaurentSeries::truncated(-N - 1, {}, -N);
  std::vector<QuadNumber> h(static_cast<std::size_t>(count));
  h[0] = h0;
  const QuadNumber two_h0_inv = (QuadNumber(2) * h0).inverse();
  for (int k = 1; k < count; ++k) {
    QuadNumber acc = r.coeff(r.degree() - k);
    for (int i = 1; i < k; ++i) acc -= h[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(k - i)];
    h[static_cast<std::size_t>(k)] = acc * two_h0_inv;
  }
  // A perfect square terminates: check the polynomial part squares back to r.
  if (count >= m + 1) {
    std::vector<QuadNumber> asc(h.begin(), h.begin() + m + 1);
    std::reverse(asc.begin(), asc.end());
    const Poly candidate(std::move(asc));
    if (candidate * candidate == r) return LaurentSeries::from_poly(candidate);
  }
  return LaurentSeries::truncated(m, std::move(h), -N);
}

WindowComparison compare_in_window(const LaurentSeries& a, const LaurentSeries& b) {
  const LaurentSeries diff = a - b;
  WindowComparison out;
  out.equal = diff.is_known_zero();
  out.first_mismatch = diff.first_nonzero_power();
  out.window_low = diff.valid_to();
  out.window_high = std::max(a.top(), b.top());
  return out;
}

std::string to_string(const LaurentSeries& s) {
  std::string out;
  auto c = s.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    const int power = s.top() - static_cast<int>(i);
    std::string cs = to_string(c[i]);
    if (!c[i].is_rational()) cs = "(" + cs + ")";
    if (!out.empty()) out += " + ";
    out += cs;
    if (power != 0) out += "*x^" + std::to_string(power);
  }
  if (out.empty()) out = "0";
  if (s.valid_to()) out += " + O(x^" + std::to_string(*s.valid_to() - 1) + ")";
  return out;
}

}  // namespace lhsnul
