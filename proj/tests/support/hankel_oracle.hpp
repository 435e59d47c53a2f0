#pragma once

#include <vector>

#include "lhsnul/rational.hpp"

namespace lhsnul::testing {

inline Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

/// det [u_{i+j}] for 0 <= i, j <= k, with the last column shifted by `shift`.
inline Rational hankel(const std::vector<Rational>& u, int k, int shift = 0) {
  if (k < 0) return shift == 0 ? Rational(1) : Rational(0);
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(k + 1), std::vector<Rational>(k + 1));
  for (int i = 0; i <= k; ++i) {
    for (int j = 0; j <= k; ++j) m[i][j] = u[static_cast<std::size_t>(i + j + (j == k ? shift : 0))];
  }
  return determinant(std::move(m));
}

/// gamma_n = H_{n-2} H_n / H_{n-1}^2 and beta_n = H'_n/H_n - H'_{n-1}/H_{n-1},
/// where H' has its last column shifted by one.
inline void recurrence_by_determinants(const std::vector<Rational>& u, int n_max, std::vector<Rational>& beta,
                                       std::vector<Rational>& gamma) {
  beta.clear();
  gamma.clear();
  for (int n = 0; n <= n_max; ++n) {
    const Rational h = hankel(u, n), h1 = hankel(u, n - 1), h2 = hankel(u, n - 2);
    gamma.push_back(n == 0 ? u[0] : h2 * h / (h1 * h1));
    beta.push_back(hankel(u, n, 1) / h - hankel(u, n - 1, 1) / h1);
  }
}

}  // namespace lhsnul::testing
