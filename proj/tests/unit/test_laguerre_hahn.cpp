#include <gtest/gtest.h>

#include "instances.hpp"
#include "lhsnul/errors.hpp"
#include "lhsnul/laguerre_hahn.hpp"
#include "random_data.hpp"

using namespace lhsnul;
using namespace lhsnul::testing;

namespace {

const Instance& ref() {
  static const Instance inst = reference_instance();
  return inst;
}

const Instance& semi() {
  static const Instance inst = semiclassical_instance();
  return inst;
}

LaurentSeries S_of(const Instance& I) { return LaurentSeries::stieltjes(I.moments); }

}  // namespace

TEST(Riccati, ProbedFixtureData) {
  const RiccatiData& R = ref().R;
  EXPECT_EQ(R.A, Poly::from_rationals({q(-1), q(0), q(1)}));
  EXPECT_EQ(R.D, Poly::constant(q(-9, 4)));
  EXPECT_EQ(R.theta_degree_bound(), 0);
  EXPECT_EQ(ref().moments[0], q(1));
  EXPECT_EQ(ref().moments[1], q(-10, 37));
}

TEST(Riccati, PureDifferenceTerm) {
  const Lattice L = build_lattice(reference_conic());
  std::mt19937_64 rng(41);
  std::vector<Rational> u{q(1)};
  for (int k = 1; k < 12; ++k) u.push_back(random_rational(rng));
  const LaurentSeries S = LaurentSeries::stieltjes(u);
  const Poly A = Poly::from_rationals({q(2), q(-1), q(3)});
  const RiccatiData R{A, Poly(), Poly(), Poly()};
  const LaurentSeries res = riccati_residual(L, R, S);
  EXPECT_TRUE(compare_in_window(res, A * apply_D_series(L, S)).equal);
  EXPECT_FALSE(res.is_known_zero());
}

TEST(Riccati, SolvedMomentsSatisfyTheEquation) {
  const LaurentSeries res = riccati_residual(ref().L, ref().R, S_of(ref()));
  EXPECT_TRUE(res.is_known_zero());
  // u_{N-1} is the last moment and enters at x^(e - N + 1)
  EXPECT_EQ(res.valid_to(), 1 - static_cast<int>(ref().moments.size()));
}

TEST(Riccati, PerturbedMomentIsDetected) {
  std::vector<Rational> u = ref().moments;
  u[3] += 1;
  const LaurentSeries res = riccati_residual(ref().L, ref().R, LaurentSeries::stieltjes(u));
  ASSERT_FALSE(res.is_known_zero());
  // u_m enters first at x^(e - m) with e = 0
  EXPECT_EQ(res.first_nonzero_power(), -3);
}

TEST(Riccati, WindowTooShort) {
  const LaurentSeries S = LaurentSeries::stieltjes(std::vector<Rational>{});
  EXPECT_THROW(riccati_residual(ref().L, ref().R, S), InsufficientTruncation);
}

TEST(SolveMoments, ZeroDifferenceIsInconsistent) {
  // A D S = 0 would need D(1/x) = 0, but D(1/x) = -1/(y1 y2) = -x^-2 + ...
  const Lattice L = build_lattice(reference_conic());
  const RiccatiData R{Poly::constant(1), Poly(), Poly(), Poly()};
  try {
    solve_moments_from_riccati(L, R, 6);
    FAIL() << "expected Inconsistent";
  } catch (const Inconsistent& e) {
    EXPECT_EQ(e.power(), -2);
  }
}

TEST(SolveMoments, FreeParameterAndSuppliedValue) {
  // With A = 17x^2, C = -20x the coefficient of u_1 at x^-1 is
  // 17 * (1/4 - 4)/(3/2) + 20 * (1/4 + 4)/2 = 0.
  const Lattice L = build_lattice(reference_conic());
  RiccatiData R{Poly::monomial(17, 2), Poly(), Poly::monomial(-20, 1), Poly()};
  const LaurentSeries one = LaurentSeries::stieltjes(std::vector<Rational>{q(1)});
  R.D = Poly::constant(riccati_residual(L, R, one).coeff(0));
  try {
    solve_moments_from_riccati(L, R, 6);
    FAIL() << "expected FreeParameter";
  } catch (const FreeParameter& e) {
    EXPECT_EQ(e.index(), 1);
  }
  const auto u = solve_moments_from_riccati(L, R, 10, {{1, q(3, 7)}});
  EXPECT_EQ(u[1], q(3, 7));
  EXPECT_TRUE(riccati_residual(L, R, LaurentSeries::stieltjes(u)).is_known_zero());
}

TEST(SolveMoments, ReproducesKnownMoments) {
  const auto u = solve_moments_from_riccati(ref().L, ref().R, 16);
  EXPECT_EQ(u, std::vector<Rational>(ref().moments.begin(), ref().moments.begin() + 16));
}

TEST(Fit, ContainsOriginalData) {
  const DegreeBounds b;
  const auto basis = fit_riccati(ref().L, S_of(ref()), b);
  ASSERT_FALSE(basis.empty());
  EXPECT_TRUE(in_span(basis, ref().R, b));
  for (const auto& R : basis) {
    EXPECT_FALSE(R.A.is_zero());
    EXPECT_TRUE(riccati_residual(ref().L, R, S_of(ref())).is_known_zero());
  }
}

TEST(Fit, ZeroBoundsGiveNothing) {
  EXPECT_TRUE(fit_riccati(ref().L, S_of(ref()), DegreeBounds{0, 0, 0, 0}).empty());
}

TEST(Fit, RandomMomentsGiveNothing) {
  std::mt19937_64 rng(43);
  std::vector<Rational> u{q(1)};
  for (int k = 1; k < 40; ++k) u.push_back(random_rational(rng));
  EXPECT_TRUE(fit_riccati(ref().L, LaurentSeries::stieltjes(u), DegreeBounds{}).empty());
}

TEST(Structure, DirectCoefficientsAndDegreeBound) {
  const StructureCoeffs& c = ref().coeffs;
  EXPECT_EQ(c.max_level(), 8);
  EXPECT_EQ(c.l_at(-1), QuadNumber(q(1, 2)) * ref().R.C);
  EXPECT_TRUE(c.pi_at(-1).is_zero());
  EXPECT_EQ(c.theta_at(-1), ref().R.D);
  for (int n = -1; n <= 8; ++n) EXPECT_LE(c.theta_hat_at(n).degree(), ref().R.theta_degree_bound());
}

TEST(Structure, RelationsHold) {
  for (const Instance* I : {&ref(), &semi()}) {
    for (int n = 1; n <= 9; ++n) {
      for (int variant = 1; variant <= 2; ++variant) {
        const auto [a, b] = verify_structure_relations(I->L, I->R, I->data, I->coeffs, n, variant);
        EXPECT_TRUE(a.is_zero() && b.is_zero()) << "n = " << n << " variant " << variant;
      }
    }
  }
}

TEST(Structure, ShiftedThetaBreaksTheRelation) {
  StructureCoeffs c = ref().coeffs;
  c.theta[1] = c.theta[1] + Poly::constant(1);  // Theta_0 + 1
  const auto [a, b] = verify_structure_relations(ref().L, ref().R, ref().data, c, 1, 1);
  EXPECT_FALSE(a.is_zero() && b.is_zero());
}

TEST(Structure, ForeignDataIsRejected) {
  EXPECT_THROW(structure_coeffs_direct(ref().L, ref().R, semi().data, 4), MathError);
}

TEST(SecondKind, LevelZeroIsTheRiccatiResidual) {
  std::vector<Rational> u = ref().moments;
  u[4] += q(1, 3);
  const LaurentSeries S = LaurentSeries::stieltjes(u);
  const SeriesContext ctx(ref().L, S);
  const auto [r1, r2] = verify_second_kind_relations(ctx, ref().R, ref().data, ref().coeffs, 0);
  const LaurentSeries direct = riccati_residual(ref().L, ref().R, S);
  EXPECT_TRUE(compare_in_window(r1, direct).equal);
  EXPECT_TRUE(compare_in_window(r2, direct).equal);
}

TEST(SecondKind, RelationsHoldInWindow) {
  const SeriesContext ctx(ref().L, S_of(ref()));
  for (int n = 1; n <= 3; ++n) {
    const auto [r1, r2] = verify_second_kind_relations(ctx, ref().R, ref().data, ref().coeffs, n);
    EXPECT_TRUE(r1.is_known_zero()) << n;
    EXPECT_TRUE(r2.is_known_zero()) << n;
  }
}

TEST(SecondKind, ShortTruncationNamesTheWindow) {
  const std::vector<Rational> u(ref().moments.begin(), ref().moments.begin() + 6);
  const SeriesContext ctx(ref().L, LaurentSeries::stieltjes(u));
  EXPECT_THROW(verify_second_kind_relations(ctx, ref().R, ref().data, ref().coeffs, 4), InsufficientTruncation);
}

TEST(Gathered, ResidualsVanish) {
  for (const Instance* I : {&ref(), &semi()}) {
    const SeriesContext ctx(I->L, S_of(*I));
    for (int n = 0; n <= 3; ++n) {
      const GatheredResiduals g = gathered_relations(ctx, I->R, I->data, I->coeffs, n);
      EXPECT_TRUE(g.p.is_zero()) << n;
      EXPECT_TRUE(g.p1.is_zero()) << n;
      EXPECT_TRUE(g.q.is_known_zero()) << n;
    }
  }
}

TEST(Gathered, LevelZeroCoefficientIsA) {
  EXPECT_EQ(gathered_A(ref().L, ref().R, ref().coeffs, 0), ref().R.A);
}

TEST(Recursion, InitialConditions) {
  const StructureLevel z = recursion_level_zero(ref().L, ref().R, ref().data);
  const Poly m = apply_M(ref().L, Poly::from_rationals({-ref().data.beta[0], q(1)}));
  EXPECT_EQ(z.l, -(m * ref().R.D) - QuadNumber(q(1, 2)) * ref().R.C);
  EXPECT_EQ(z.pi, QuadNumber(q(-1, 2)) * ref().R.D);
  for (const auto& [name, defect] : initial_condition_defects(ref().L, ref().R, ref().data, ref().coeffs)) {
    EXPECT_TRUE(defect.is_zero()) << name;
  }
}

TEST(Recursion, RecursionMatchesDirect) {
  for (const Instance* I : {&ref(), &semi()}) {
    const StructureCoeffs k = recursion_coeffs(I->L, I->R, I->data, 8);
    for (int n = -1; n <= 8; ++n) {
      EXPECT_EQ(k.l_at(n), I->coeffs.l_at(n)) << n;
      EXPECT_EQ(k.pi_at(n), I->coeffs.pi_at(n)) << n;
      EXPECT_EQ(k.theta_at(n), I->coeffs.theta_at(n)) << n;
    }
  }
}

TEST(Recursion, Telescopes) {
  for (int n = 0; n <= 8; ++n) {
    EXPECT_TRUE(telescope_L(ref().L, ref().coeffs, ref().data, n).is_zero()) << n;
    EXPECT_TRUE(telescope_T_defect(ref().coeffs, ref().data, n).is_zero()) << n;
  }
}

TEST(Magnus, UpdateOfB) {
  const MagnusRiccatiData M = magnus_data(ref().L, ref().R, ref().data, ref().coeffs, 2);
  const Rational& gamma = ref().data.gamma[3];
  const MagnusRiccatiData next = magnus_step(ref().L, M, ref().data.beta[3], gamma);
  EXPECT_EQ(next.B, ref().coeffs.theta_at(2) / QuadNumber(gamma));
}

TEST(Magnus, ZeroDKeepsA) {
  MagnusRiccatiData M = magnus_data(ref().L, ref().R, ref().data, ref().coeffs, 1);
  M.D = Poly();
  const MagnusRiccatiData next = magnus_step(ref().L, M, q(2, 3), q(5));
  EXPECT_EQ(next.A, M.A);
  EXPECT_TRUE(next.B.is_zero());
}

TEST(Magnus, StepsMatchTheStructureCoefficients) {
  for (int n = 0; n < 8; ++n) {
    const MagnusRiccatiData next =
        magnus_step(ref().L, magnus_data(ref().L, ref().R, ref().data, ref().coeffs, n), ref().data.beta[n + 1],
                    ref().data.gamma[n + 1]);
    EXPECT_EQ(next, magnus_data(ref().L, ref().R, ref().data, ref().coeffs, n + 1)) << n;
  }
}

TEST(Magnus, RatioSatisfiesItsRiccatiEquation) {
  const SeriesContext ctx(ref().L, S_of(ref()));
  for (int n = 0; n <= 4; ++n) {
    const MagnusRiccatiData M = magnus_data(ref().L, ref().R, ref().data, ref().coeffs, n);
    EXPECT_TRUE(magnus_riccati_residual(ctx, ref().data, M).is_known_zero()) << n;
  }
}

TEST(Reconstruct, RecoversData) {
  EXPECT_TRUE(projectively_equal(reconstruct_riccati(ref().L, ref().coeffs, ref().data), ref().R));
  const RiccatiData back = reconstruct_riccati(semi().L, semi().coeffs, semi().data);
  EXPECT_TRUE(back.B.is_zero());
  EXPECT_TRUE(projectively_equal(back, semi().R));
}

TEST(Reconstruct, RejectsNonzeroPiMinusOne) {
  StructureCoeffs c = ref().coeffs;
  c.pi[0] = Poly::constant(1);
  EXPECT_THROW(reconstruct_riccati(ref().L, c, ref().data), InputError);
}

TEST(Parallel, SerialAndParallelAgree) {
  const StructureCoeffs s = structure_coeffs_direct(ref().L, ref().R, ref().data, 6, Exec::serial);
  const StructureCoeffs p = structure_coeffs_direct(ref().L, ref().R, ref().data, 6, Exec::parallel);
  EXPECT_EQ(s.theta, p.theta);
  EXPECT_EQ(s.l, p.l);
  const auto u = solve_moments_from_riccati(ref().L, ref().R, 20, {}, Exec::serial);
  EXPECT_EQ(u, solve_moments_from_riccati(ref().L, ref().R, 20, {}, Exec::parallel));
}
