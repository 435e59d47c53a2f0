#include <gtest/gtest.h>

#include "lhsnul/errors.hpp"
#include "lhsnul/problem_file.hpp"
#include "random_data.hpp"

using namespace lhsnul;
using lhsnul::testing::q;

namespace {

std::string fixture(const std::string& name) { return std::string(LHSNUL_FIXTURE_DIR) + "/" + name; }

std::string error_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ProblemFile, ReadsTheReferenceFixture) {
  const ProblemFile p = load_problem(fixture("reference_lh.json"));
  EXPECT_EQ(p.lattice, lhsnul::testing::reference_conic());
  ASSERT_TRUE(p.riccati);
  EXPECT_EQ(p.riccati->A, Poly::from_rationals({q(-1), q(0), q(1)}));
  EXPECT_EQ(p.riccati->D, Poly::constant(q(-9, 4)));
  EXPECT_EQ(p.options.n_max, 8);
  EXPECT_EQ(p.options.truncation, 28);
  EXPECT_FALSE(p.moments);
}

TEST(ProblemFile, RoundTripsEveryFixture) {
  for (const char* name : {"reference_lh.json", "reference_semiclassical.json", "reference_moments.json",
                           "reference_recurrence.json", "reference_perturbed.json", "sqrt5_lh.json"}) {
    const ProblemFile p = load_problem(fixture(name));
    EXPECT_EQ(parse_problem(to_json(p).dump()), p) << name;
  }
}

TEST(ProblemFile, CertificateEchoesTheInstance) {
  ProblemFile p = load_problem(fixture("reference_lh.json"));
  p.options.n_max = 3;
  p.options.deg_bounds = DegreeBounds{4, 3, 2, 1};
  p.options.discriminant = q(1);
  p.options.free_values = {{2, q(-1, 3)}};
  const Certificate cert = certify(build_lattice(p.lattice), p.input(), certify_options(p));
  const nlohmann::json j = certificate_json(p, cert);
  EXPECT_EQ(problem_from_json(j["instance"]), p);
  for (const char* key : {"instance", "checks", "degrees", "timings"}) EXPECT_TRUE(j.contains(key)) << key;
  for (const auto& c : j["checks"]) {
    for (const char* key : {"name", "verdict", "window", "residual_summary"}) EXPECT_TRUE(c.contains(key)) << key;
  }
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(ProblemFile, RationalsStayExact) {
  const ProblemFile p = parse_problem(
      R"({"lattice": ["1", "-5/4", 1, "0", "0", "1"], "moments": ["1", "-10/37", "123456789012345678901234567891/7"]})");
  EXPECT_EQ((*p.moments)[2], parse_rational("123456789012345678901234567891/7"));
  EXPECT_EQ(to_json(p)["moments"][2], "123456789012345678901234567891/7");
}

TEST(ProblemFile, ErrorsNameTheField) {
  EXPECT_NE(error_of(R"({"moments": ["1"]})").find("lattice"), std::string::npos);
  EXPECT_NE(error_of(R"({"lattice": ["1","x","1","0","0","1"], "moments": ["1"]})").find("lattice[1]"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"lattice": ["1","-5/4","1","0","0","1"]})").find("input flavor"), std::string::npos);
  EXPECT_NE(error_of(R"({"lattice": ["1","-5/4","1","0","0","1"], "riccati": {"A": [], "B": ["1"]}})")
                .find("riccati.A"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"lattice": ["1","-5/4","1","0","0","1"], "moments": ["1"], "options": {"nmax": 3}})")
                .find("options.nmax"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"lattice": ["1","-5/4","1","0","0","1"], "moments": ["1"],
                         "recurrence": {"beta": [], "gamma": []}})")
                .find("not both"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"lattice": ["1","-5/4","1","0","0","1"], "moments": [0.5]})").find("moments[0]"),
            std::string::npos);
  EXPECT_NE(error_of("{\n\"lattice\": [\n,]}").find("line 3"), std::string::npos);
}

TEST(ProblemFile, LatticeOnlyWhenInputNotRequired) {
  const ProblemFile p = parse_problem(R"({"lattice": {"a": "1", "b": "-5/4", "c": "1", "d": 0, "e": 0, "f": 1}})", false);
  EXPECT_EQ(p.lattice, lhsnul::testing::reference_conic());
}
