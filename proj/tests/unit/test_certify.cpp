#include <gtest/gtest.h>

#include "instances.hpp"
#include "lhsnul/certify.hpp"
#include "lhsnul/errors.hpp"

using namespace lhsnul;
using namespace lhsnul::testing;

namespace {

const Lattice& reference() {
  static const Lattice L = build_lattice(reference_conic());
  return L;
}

const RiccatiData& fixture() {
  static const RiccatiData R = probed_riccati(reference(), 1);
  return R;
}

std::string failures(const Certificate& c) {
  std::string s;
  for (const auto& k : c.checks) {
    if (k.verdict != Verdict::pass) s += k.name + " (" + to_string(k.verdict) + "): " + k.summary + "\n";
  }
  return s;
}

Verdict verdict(const Certificate& c, const std::string& name) {
  const CheckResult* r = c.find(name);
  return r ? r->verdict : Verdict::error;
}

}  // namespace

TEST(Certify, ReferenceInstancePasses) {
  CertifyInput in;
  in.riccati = fixture();
  const Certificate c = certify(reference(), in);
  EXPECT_TRUE(c.passed()) << failures(c);
  EXPECT_EQ(c.n_max, 8);
  EXPECT_EQ(c.truncation, 28);
  EXPECT_EQ(c.moment_source, "riccati");
  for (const char* name : {"riccati", "structure-1", "structure-2", "second-kind-1", "second-kind-2", "gathered-p",
                           "gathered-p1", "gathered-q", "recursion", "magnus", "telescope-L", "telescope-T",
                           "theta-degree-bound", "initial-conditions", "reconstruction", "fit-contains"}) {
    EXPECT_EQ(verdict(c, name), Verdict::pass) << name;
  }
  ASSERT_TRUE(c.direct && c.recursion && c.data);
  const CheckResult* sk = c.find("second-kind-1");
  ASSERT_EQ(sk->windows.size(), 9u);
  for (const auto& w : sk->windows) EXPECT_LE(w.low, w.high);
}

TEST(Certify, SerialMatchesParallel) {
  CertifyInput in;
  in.riccati = fixture();
  CertifyOptions opt;
  opt.n_max = 4;
  opt.exec = Exec::serial;
  const Certificate s = certify(reference(), in, opt);
  opt.exec = Exec::parallel;
  const Certificate p = certify(reference(), in, opt);
  ASSERT_EQ(s.checks.size(), p.checks.size());
  for (std::size_t k = 0; k < s.checks.size(); ++k) {
    EXPECT_EQ(s.checks[k].name, p.checks[k].name);
    EXPECT_EQ(s.checks[k].verdict, p.checks[k].verdict);
  }
  EXPECT_EQ(s.direct->theta, p.direct->theta);
}

TEST(Certify, SemiclassicalAndIrrationalField) {
  CertifyInput in;
  in.riccati = probed_riccati(reference(), 0);
  const Certificate sc = certify(reference(), in);
  EXPECT_TRUE(sc.passed()) << failures(sc);

  const Lattice G = build_lattice({q(1), q(-3, 2), q(1), q(0), q(0), q(1)});
  ASSERT_EQ(G.discriminant(), 5);
  in.riccati = probed_riccati(G, 1);
  const Certificate g = certify(G, in);
  EXPECT_TRUE(g.passed()) << failures(g);
}

TEST(Certify, MomentsAloneGoThroughTheFit) {
  CertifyInput in;
  in.moments = solve_moments_from_riccati(reference(), fixture(), 40);
  const Certificate c = certify(reference(), in);
  EXPECT_TRUE(c.passed()) << failures(c);
  EXPECT_EQ(c.moment_source, "supplied");
  EXPECT_EQ(verdict(c, "fit"), Verdict::pass);
  ASSERT_TRUE(c.riccati);
}

TEST(Certify, RecurrenceInput) {
  const auto u = solve_moments_from_riccati(reference(), fixture(), 28);
  CertifyInput in;
  in.riccati = fixture();
  in.recurrence = recurrence_from_moments(u, 12);
  const Certificate c = certify(reference(), in);
  EXPECT_TRUE(c.passed()) << failures(c);
  EXPECT_EQ(c.moment_source, "recurrence");
}

TEST(Certify, PerturbedMomentFailsAtRiccati) {
  const auto u = solve_moments_from_riccati(reference(), fixture(), 28);
  for (int m : {0, 1, 7, 27}) {
    CertifyInput in;
    in.riccati = fixture();
    in.moments = u;
    (*in.moments)[static_cast<std::size_t>(m)] += q(1, 2);
    const Certificate c = certify(reference(), in);
    EXPECT_FALSE(c.passed());
    const CheckResult* r = c.find("riccati");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->verdict, Verdict::fail) << m;
    ASSERT_TRUE(r->first_bad_power);
    EXPECT_EQ(*r->first_bad_power, -m);
    EXPECT_EQ(verdict(c, "structure-1"), Verdict::skipped);
    EXPECT_EQ(verdict(c, "reconstruction"), Verdict::skipped);
  }
}

TEST(Certify, RandomMomentsFailAtRiccati) {
  std::mt19937_64 rng(47);
  CertifyInput in;
  in.riccati = fixture();
  in.moments = std::vector<Rational>{q(1)};
  for (int k = 1; k < 28; ++k) in.moments->push_back(random_rational(rng));
  const Certificate c = certify(reference(), in);
  EXPECT_EQ(verdict(c, "riccati"), Verdict::fail);
  EXPECT_EQ(verdict(c, "structure-direct"), Verdict::skipped);
  EXPECT_FALSE(c.input_error);
}

TEST(Certify, NotQuasiDefiniteIsRecordedWithLevel) {
  CertifyInput in;
  in.riccati = fixture();
  in.moments = std::vector<Rational>(28, q(1));
  const Certificate c = certify(reference(), in);
  const CheckResult* r = c.find("quasi-definite");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->verdict, Verdict::fail);
  ASSERT_TRUE(r->level);
  EXPECT_EQ(*r->level, 1);
  EXPECT_EQ(verdict(c, "liouville"), Verdict::skipped);
}

TEST(Certify, MissingInputIsAnInputError) {
  const Certificate c = certify(reference(), CertifyInput{});
  EXPECT_TRUE(c.input_error);
  EXPECT_FALSE(c.passed());
}

TEST(Certify, TooFewMomentsForTheLevels) {
  CertifyInput in;
  in.riccati = fixture();
  CertifyOptions opt;
  opt.truncation = 12;  // n_max = 8 needs 2 n_max + 6 moments for the recurrence
  const Certificate c = certify(reference(), in, opt);
  EXPECT_EQ(verdict(c, "riccati"), Verdict::pass);
  EXPECT_EQ(verdict(c, "quasi-definite"), Verdict::error);
  EXPECT_FALSE(c.passed());
}
