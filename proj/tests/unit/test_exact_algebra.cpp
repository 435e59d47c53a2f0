#include <gtest/gtest.h>

#include <random>

#include "lhsnul/errors.hpp"
#include "lhsnul/kernels.hpp"
#include "lhsnul/laurent_series.hpp"
#include "lhsnul/surd_poly.hpp"
#include "random_data.hpp"

using namespace lhsnul;
using lhsnul::testing::q;
using lhsnul::testing::random_poly;
using lhsnul::testing::random_poly_upto;

namespace {

SurdPoly::Radicand reference_r() {
  return std::make_shared<const Poly>(Poly::from_rationals({q(-1), q(0), q(9, 16)}));
}

LaurentSeries random_series(std::mt19937_64& rng, int top, int count, int valid_to) {
  std::vector<QuadNumber> c;
  for (int i = 0; i < count; ++i) c.emplace_back(lhsnul::testing::random_rational(rng));
  c[0] = QuadNumber(lhsnul::testing::random_nonzero_rational(rng));
  return LaurentSeries::truncated(top, std::move(c), valid_to);
}

}  // namespace

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(parse_rational("6/-4"), q(-3, 2));
  EXPECT_EQ(parse_rational("-10/4"), q(-5, 2));
  EXPECT_EQ(parse_rational("+7"), q(7));
  EXPECT_EQ(to_string(parse_rational("4/8")), "1/2");
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("1.5"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
}

TEST(Rational, SquareFreePart) {
  Rational root;
  EXPECT_EQ(square_free_part(q(9, 16), &root), 1);
  EXPECT_EQ(root, q(3, 4));
  EXPECT_EQ(square_free_part(q(5, 4), &root), 5);
  EXPECT_EQ(root, q(1, 2));
  EXPECT_EQ(square_free_part(q(-12), &root), -3);
  EXPECT_EQ(root, q(2));
  EXPECT_EQ(square_free_part(q(1, 3), &root), 3);
  EXPECT_EQ(root, q(1, 3));
}

TEST(QuadNumber, FieldArithmetic) {
  const QuadNumber s5(q(0), q(1), q(5));
  EXPECT_EQ(s5 * s5, QuadNumber(5));
  const QuadNumber x(q(1), q(2), q(5));
  EXPECT_EQ(x * x.inverse(), QuadNumber(1));
  EXPECT_EQ(x.norm(), q(1) - q(20));
  EXPECT_EQ(x + x.conj(), QuadNumber(2));
  EXPECT_EQ(QuadNumber(q(1), q(1), q(4)), QuadNumber(3));
  const QuadNumber s3(q(0), q(1), q(3));
  EXPECT_THROW(s5 + s3, std::domain_error);
}

TEST(QuadNumber, SqrtPicksPositiveRoot) {
  EXPECT_EQ(QuadNumber::sqrt(q(9, 16), 1), QuadNumber(q(3, 4)));
  EXPECT_EQ(QuadNumber::sqrt(q(5, 4), 5), QuadNumber(q(0), q(1, 2), q(5)));
  EXPECT_THROW(QuadNumber::sqrt(q(2), 1), FieldTooSmall);
  EXPECT_THROW(QuadNumber::sqrt(q(2), 3), FieldTooSmall);
}

TEST(Poly, ZeroDegreeSentinelAndDivision) {
  EXPECT_EQ(Poly().degree(), Poly::kZeroDegree);
  EXPECT_LT(std::max(Poly().degree() - 2, Poly().degree() - 1), 0);
  const Poly f = Poly::from_rationals({q(-1), q(0), q(1)});
  EXPECT_EQ(Poly::exact_div(f, Poly::linear(1)), Poly::linear(-1));
  EXPECT_THROW(Poly::exact_div(f, Poly::linear(2)), DivisionNotExact);
  EXPECT_EQ(to_string(Poly::from_rationals({q(1), q(-1), q(3, 4)})), "3/4*x^2 - x + 1");
}

TEST(Poly, RingLaws) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const Poly a = random_poly_upto(rng, 6), b = random_poly_upto(rng, 6), c = random_poly_upto(rng, 6);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    auto [quo, rem] = Poly::divmod(a, b);
    EXPECT_EQ(quo * b + rem, a);
    EXPECT_LT(rem.degree(), b.degree());
  }
}

TEST(SurdPoly, SpecExamples) {
  const auto r = reference_r();
  const SurdPoly sqrt_r(Poly(), Poly::constant(1), r);
  EXPECT_EQ(surd_mul(sqrt_r, sqrt_r), SurdPoly(*r, Poly(), r));

  const Poly p = Poly::from_rationals({q(0), q(5, 4)});
  const SurdPoly y1(p, Poly::constant(-1), r), y2(p, Poly::constant(1), r);
  EXPECT_EQ(surd_mul(y1, y2), SurdPoly(p * p - *r, Poly(), r));
  EXPECT_EQ(surd_mul(y1, y2), SurdPoly(Poly::from_rationals({q(1), q(0), q(1)}), Poly(), r));

  EXPECT_EQ(surd_exact_div(y2, y2), SurdPoly(Poly::constant(1), Poly(), r));
  const SurdPoly norm(Poly::from_rationals({q(1), q(0), q(1)}), Poly(), r);
  EXPECT_EQ(surd_exact_div(norm, y2), y1);
}

TEST(SurdPoly, MismatchedRadicandThrows) {
  const auto r = reference_r();
  const auto other = std::make_shared<const Poly>(Poly::from_rationals({q(1), q(0), q(1)}));
  EXPECT_THROW(surd_mul(SurdPoly(Poly::x(), Poly(), r), SurdPoly(Poly::x(), Poly(), other)), std::domain_error);
}

TEST(SurdPoly, DivisionUndoesMultiplication) {
  std::mt19937_64 rng(7);
  const auto r = reference_r();
  for (int t = 0; t < 60; ++t) {
    const SurdPoly f(random_poly_upto(rng, 5), random_poly_upto(rng, 5), r);
    SurdPoly g(random_poly_upto(rng, 4), random_poly_upto(rng, 4), r);
    const SurdPoly fg = surd_mul(f, g);
    EXPECT_EQ(surd_exact_div(fg, g), f);
    EXPECT_EQ(fg, surd_mul(g, f));
  }
  const SurdPoly f(Poly::constant(1), Poly(), r);
  EXPECT_THROW(surd_exact_div(f, SurdPoly(Poly::x(), Poly(), r)), DivisionNotExact);
}

TEST(LaurentSeries, SqrtSeriesExamples) {
  EXPECT_EQ(sqrt_series(Poly::monomial(1, 2), 10), LaurentSeries::from_poly(Poly::x()));
  EXPECT_EQ(sqrt_series(Poly::from_rationals({q(1), q(2), q(1)}), 10),
            LaurentSeries::from_poly(Poly::from_rationals({q(1), q(1)})));

  const Poly r = Poly::from_rationals({q(-1), q(0), q(9, 16)});
  const LaurentSeries h = sqrt_series(r, 9);
  EXPECT_EQ(h.valid_to(), -9);
  EXPECT_EQ(h.coeff(1), QuadNumber(q(3, 4)));
  EXPECT_EQ(h.coeff(0), QuadNumber(0));
  EXPECT_EQ(h.coeff(-1), QuadNumber(q(-2, 3)));
  EXPECT_EQ(h.coeff(-3), QuadNumber(q(-8, 27)));

  const LaurentSeries sq = h * h;
  for (int power = 2; power >= -(9 - 2); --power) EXPECT_EQ(sq.coeff(power), r.coeff(power)) << power;
}

TEST(LaurentSeries, SqrtSeriesIrrationalField) {
  const Poly r = Poly::from_rationals({q(-1), q(0), q(5, 4)});
  EXPECT_THROW(sqrt_series(r, 6, 1), FieldTooSmall);
  const LaurentSeries h = sqrt_series(r, 6, 5);
  EXPECT_EQ(h.coeff(1), QuadNumber(q(0), q(1, 2), q(5)));
  const LaurentSeries sq = h * h;
  for (int power = 2; power >= -4; --power) EXPECT_EQ(sq.coeff(power), r.coeff(power));
}

TEST(LaurentSeries, MultiplyExamplesAndWindows) {
  const LaurentSeries inv_x = LaurentSeries::monomial(1, -1);
  EXPECT_EQ(inv_x * inv_x, LaurentSeries::monomial(1, -2));
  EXPECT_EQ(inv_x * LaurentSeries::monomial(1, 0), inv_x);

  const std::vector<Rational> u{q(1), q(2), q(3)};
  const LaurentSeries s = LaurentSeries::stieltjes(u);
  EXPECT_EQ(s.truncation_order(), 3);
  EXPECT_THROW((void)s.coeff(-4), InsufficientTruncation);
  const LaurentSeries s2 = s * s;
  EXPECT_EQ(s2.valid_to(), -4);
  EXPECT_EQ(s2.coeff(-2), QuadNumber(1));
  EXPECT_EQ(s2.coeff(-3), QuadNumber(4));
  EXPECT_EQ(s2.coeff(-4), QuadNumber(10));
  const LaurentSeries xs = Poly::x() * s;
  EXPECT_EQ(xs.valid_to(), -2);
}

TEST(LaurentSeries, InverseOfXMinusOne) {
  const LaurentSeries f = LaurentSeries::from_poly(Poly::linear(1));
  const LaurentSeries g = series_inverse(f, -12);
  for (int k = 1; k <= 12; ++k) EXPECT_EQ(g.coeff(-k), QuadNumber(1)) << k;
  const LaurentSeries one = f * g;
  EXPECT_TRUE(compare_in_window(one, LaurentSeries::monomial(1, 0)).equal);
  EXPECT_THROW(series_inverse(LaurentSeries()), std::domain_error);
}

TEST(LaurentSeries, RandomInverseAndRingLaws) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const LaurentSeries a = random_series(rng, 2, 12, -9);
    const LaurentSeries b = random_series(rng, -1, 10, -10);
    const LaurentSeries c = random_series(rng, 0, 8, -7);
    EXPECT_TRUE(compare_in_window(a * b, b * a).equal);
    EXPECT_TRUE(compare_in_window((a * b) * c, a * (b * c)).equal);
    EXPECT_TRUE(compare_in_window(a * (b + c), a * b + a * c).equal);
    const LaurentSeries ai = series_inverse(a);
    EXPECT_EQ(ai.valid_to(), -9 - 4);
    const WindowComparison cmp = compare_in_window(a * ai, LaurentSeries::monomial(1, 0));
    EXPECT_TRUE(cmp.equal);
    EXPECT_EQ(cmp.window_low, -11);
  }
}

TEST(Kernels, SerialAndParallelConvolutionAgree) {
  std::mt19937_64 rng(5);
  std::vector<QuadNumber> a, b;
  for (int i = 0; i < 300; ++i) {
    a.emplace_back(lhsnul::testing::random_rational(rng));
    b.emplace_back(lhsnul::testing::random_rational(rng));
  }
  EXPECT_EQ(kernels::convolve(a, b, 400, Exec::serial), kernels::convolve(a, b, 400, Exec::parallel));
}

TEST(Kernels, ForEachIndexRethrowsLowestIndex) {
  try {
    kernels::for_each_index(8, [](int i) {
      if (i == 3 || i == 6) throw Inconsistent(i, "boom");
    });
    FAIL();
  } catch (const Inconsistent& e) {
    EXPECT_EQ(e.power(), 3);
  }
}
