#pragma once

#include <random>
#include <vector>

#include "lhsnul/lattice.hpp"
#include "lhsnul/poly.hpp"

namespace lhsnul::testing {

inline Rational random_rational(std::mt19937_64& rng, int span = 9, int max_den = 5) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Rational random_nonzero_rational(std::mt19937_64& rng, int span = 9, int max_den = 5) {
  Rational q;
  do {
    q = random_rational(rng, span, max_den);
  } while (sgn(q) == 0);
  return q;
}

inline Poly random_poly(std::mt19937_64& rng, int degree) {
  std::vector<Rational> c;
  for (int k = 0; k < degree; ++k) c.push_back(random_rational(rng));
  c.push_back(random_nonzero_rational(rng));
  return Poly::from_rationals(c);
}

inline Poly random_poly_upto(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  return random_poly(rng, deg(rng));
}

inline Rational q(long p, long d = 1) {
  Rational out(p, d);
  out.canonicalize();
  return out;
}

inline ConicCoefficients reference_conic() { return {q(1), q(-5, 4), q(1), q(0), q(0), q(1)}; }

/// q-quadratic test lattices; the first three have rational sqrt(lambda), the
/// last lives in Q(sqrt 5).
inline std::vector<ConicCoefficients> test_conics() {
  return {
      reference_conic(),
      {q(2), q(-3), q(4), q(1), q(-1), q(3)},
      {q(1), q(-5, 3), q(1), q(1, 2), q(1, 3), q(-2)},
      {q(1), q(-3, 2), q(1), q(0), q(0), q(1)},
  };
}

}  // namespace lhsnul::testing
