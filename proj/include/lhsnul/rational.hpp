#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lhsnul {

using Integer = mpz_class;

// mpq_class keeps numerator/denominator reduced with a positive denominator
// as long as every value goes through canonicalize(); parse_rational does.
using Rational = mpq_class;

/// Parses "p", "-p", "p/q". Throws InputError on anything else or q = 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Square-free kernel of a nonzero rational: q = s^2 * k with k a square-free
/// integer. Returns k and writes s (positive) to `root`. Small prime factors
/// are removed by trial division; a large cofactor is kept whole unless it is a
/// perfect square.
Integer square_free_part(const Rational& q, Rational* root);

}  // namespace lhsnul
