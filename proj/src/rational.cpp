#include "lhsnul/rational.hpp"

#include <cctype>

#include "lhsnul/errors.hpp"

namespace lhsnul {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  const std::string_view num = slash == std::string_view::npos ? s : s.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
  if (!is_integer_literal(num) || (slash != std::string_view::npos && !is_integer_literal(den))) {
    throw InputError("not a rational literal: '" + std::string(text) + "'");
  }
  // mpz_class rejects a leading '+'
  auto strip_plus = [](std::string_view v) { return v.front() == '+' ? v.substr(1) : v; };
  Integer n(std::string(strip_plus(num)), 10);
  Integer d(1);
  if (!den.empty()) d = Integer(std::string(strip_plus(den)), 10);
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Integer square_free_part(const Rational& q, Rational* root) {
  // sqrt(n/m) = sqrt(n*m)/m
  Integer value = q.get_num() * q.get_den();
  const int sign = sgn(value);
  value = abs(value);
  Integer square_root(1);
  Integer kernel(1);
  for (unsigned long p = 2; p < 100000 && p * p <= value; p += (p == 2 ? 1 : 2)) {
    if (!mpz_divisible_ui_p(value.get_mpz_t(), p)) continue;
    int e = 0;
    while (mpz_divisible_ui_p(value.get_mpz_t(), p)) {
      mpz_divexact_ui(value.get_mpz_t(), value.get_mpz_t(), p);
      ++e;
    }
    for (int k = 0; k < e / 2; ++k) square_root *= p;
    if (e % 2) kernel *= p;
  }
  if (value > 1) {
    if (mpz_perfect_square_p(value.get_mpz_t())) {
      Integer s;
      mpz_sqrt(s.get_mpz_t(), value.get_mpz_t());
      square_root *= s;
    } else {
      kernel *= value;
    }
  }
  if (root) {
    *root = Rational(square_root, q.get_den());
    root->canonicalize();
  }
  return sign * kernel;
}

}  // namespace lhsnul
