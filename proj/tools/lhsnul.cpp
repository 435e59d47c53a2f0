#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "lhsnul/certify.hpp"
#include "lhsnul/errors.hpp"
#include "lhsnul/problem_file.hpp"

using namespace lhsnul;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kMathFailure = 1;
constexpr int kInputError = 2;

struct Overrides {
  std::optional<int> n_max;
  std::optional<int> trunc;
  std::string deg_bounds;
  std::string discriminant;
};

void apply(const Overrides& o, ProblemFile& p) {
  if (o.n_max) {
    if (*o.n_max < 1) throw InputError("--n-max: must be at least 1");
    p.options.n_max = o.n_max;
  }
  if (o.trunc) {
    if (*o.trunc < 1) throw InputError("--trunc: must be positive");
    p.options.truncation = o.trunc;
  }
  if (!o.deg_bounds.empty()) {
    std::stringstream ss(o.deg_bounds);
    std::vector<int> v;
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoi(item, &used));
        if (used != item.size() || v.back() < 0) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw InputError("--deg-bounds: '" + item + "' is not a nonnegative integer");
      }
    }
    if (v.size() != 4) throw InputError("--deg-bounds: expected a,b,c,d");
    p.options.deg_bounds = DegreeBounds{v[0], v[1], v[2], v[3]};
  }
  if (!o.discriminant.empty()) p.options.discriminant = parse_rational(o.discriminant);
}

Lattice lattice_of(const ProblemFile& p) { return build_lattice(p.lattice, p.options.discriminant); }

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_classify(const ProblemFile& p, int points) {
  const ConicInvariants inv = conic_invariants(p.lattice);
  json j;
  j["class"] = to_string(classify_lattice(inv.lambda, inv.tau));
  j["lambda"] = to_string(inv.lambda);
  j["tau"] = to_string(inv.tau);
  if (inv.q_trace) j["q_trace"] = to_string(*inv.q_trace);
  const Lattice L = lattice_of(p);
  j["p"] = to_json(L.p());
  j["r"] = to_json(L.r());
  j["discriminant"] = L.discriminant();
  if (points > 0) {
    const LatticePoints pts = lattice_points(L, points);
    json d;
    if (pts.q) d["q"] = *pts.q;
    if (pts.c1) d["c1"] = *pts.c1;
    if (pts.c2) d["c2"] = *pts.c2;
    if (pts.c3) d["c3"] = *pts.c3;
    d["x"] = pts.points;
    if (!pts.note.empty()) d["note"] = pts.note;
    j["points"] = d;
  }
  print(j);
  std::cerr << j["class"].get<std::string>() << ", lambda=" << j["lambda"].get<std::string>()
            << ", tau=" << j["tau"].get<std::string>() << '\n';
  return kPass;
}

int cmd_certify(const ProblemFile& p) {
  const Lattice L = lattice_of(p);
  const Certificate cert = certify(L, p.input(), certify_options(p));
  print(certificate_json(p, cert));
  for (const auto& c : cert.checks) {
    if (c.verdict != Verdict::pass) std::cerr << c.name << ": " << to_string(c.verdict) << ": " << c.summary << '\n';
  }
  if (cert.input_error) return kInputError;
  return cert.passed() ? kPass : kMathFailure;
}

std::vector<Rational> fit_moments(const Lattice& L, const ProblemFile& p) {
  const CertifyOptions opt = certify_options(p);
  if (p.moments) {
    const int N = opt.truncation.value_or(static_cast<int>(p.moments->size()));
    if (N > static_cast<int>(p.moments->size())) {
      throw InputError("--trunc: only " + std::to_string(p.moments->size()) + " moments supplied");
    }
    return {p.moments->begin(), p.moments->begin() + N};
  }
  if (p.recurrence) {
    const int len = static_cast<int>(std::min(p.recurrence->beta.size(), p.recurrence->gamma.size()));
    return moments_from_recurrence(p.recurrence->beta, p.recurrence->gamma,
                                   opt.truncation.value_or(2 * len - 1));
  }
  return solve_moments_from_riccati(L, *p.riccati, opt.truncation.value_or(2 * opt.n_max + 12), opt.free_values);
}

int cmd_fit(const ProblemFile& p) {
  const Lattice L = lattice_of(p);
  const CertifyOptions opt = certify_options(p);
  const std::vector<Rational> u = fit_moments(L, p);
  const LaurentSeries S = LaurentSeries::stieltjes(u);
  const std::vector<RiccatiData> basis = fit_riccati(L, S, opt.bounds);
  json j;
  j["moments_used"] = u.size();
  j["deg_bounds"] = {opt.bounds.a, opt.bounds.b, opt.bounds.c, opt.bounds.d};
  json list = json::array();
  for (const auto& R : basis) {
    json c = to_json(R);
    c["degrees"] = {R.A.degree(), R.B.is_zero() ? json(nullptr) : json(R.B.degree()),
                    R.C.is_zero() ? json(nullptr) : json(R.C.degree()),
                    R.D.is_zero() ? json(nullptr) : json(R.D.degree())};
    c["verified"] = riccati_residual(L, R, S).is_known_zero();
    list.push_back(c);
  }
  j["candidates"] = list;
  if (p.riccati) j["contains_input"] = in_span(basis, *p.riccati, opt.bounds);
  if (basis.empty()) {
    j["message"] = "no relation found";
    std::cerr << "no relation found\n";
  }
  print(j);
  return kPass;
}

int cmd_derive(const ProblemFile& p) {
  if (!p.riccati) throw InputError("derive: needs the riccati flavor");
  const Lattice L = lattice_of(p);
  const Certificate cert = certify(L, p.input(), certify_options(p));
  if (!cert.direct || !cert.recursion) {
    for (const auto& c : cert.checks) {
      if (c.verdict == Verdict::fail || c.verdict == Verdict::error) {
        std::cerr << c.name << (c.level ? " at n = " + std::to_string(*c.level) : std::string()) << ": "
                  << c.summary << '\n';
        break;
      }
    }
    return cert.input_error ? kInputError : kMathFailure;
  }
  const int n_max = cert.n_max;
  json rows = json::array();
  bool all_agree = true;
  for (int n = -1; n <= n_max; ++n) {
    const StructureCoeffs& d = *cert.direct;
    const StructureCoeffs& k = *cert.recursion;
    const bool agree = d.l_at(n) == k.l_at(n) && d.pi_at(n) == k.pi_at(n) && d.theta_at(n) == k.theta_at(n);
    all_agree = all_agree && agree;
    json row{{"n", n}, {"l", to_json(d.l_at(n))}, {"pi", to_json(d.pi_at(n))}, {"theta", to_json(d.theta_at(n))},
             {"agree", agree}};
    if (n >= 0) row["A"] = to_json(gathered_A(L, *p.riccati, d, n));
    rows.push_back(row);
  }
  json j;
  j["instance"] = to_json(p);
  j["direct"] = rows;
  j["recursion"] = to_json(*cert.recursion, n_max);
  j["agree"] = all_agree;
  j["certificate_passed"] = cert.passed();
  print(j);
  return all_agree ? kPass : kMathFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Laguerre-Hahn toolkit on q-quadratic lattices"};
  app.require_subcommand(1);
  Overrides o;
  std::string file;
  int points = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", file, "problem file (JSON)")->required();
    sub->add_option("--n-max", o.n_max, "highest level n to check");
    sub->add_option("--trunc", o.trunc, "number of moments N");
    sub->add_option("--deg-bounds", o.deg_bounds, "fit degree bounds a,b,c,d");
    sub->add_option("--discriminant", o.discriminant, "field discriminant override p/q");
  };
  CLI::App* classify = app.add_subcommand("classify", "lattice invariants and class");
  add_common(classify);
  classify->add_option("--points", points, "print this many floating-point lattice points");
  CLI::App* cert = app.add_subcommand("certify", "run the full pipeline and print a JSON certificate");
  add_common(cert);
  CLI::App* fit = app.add_subcommand("fit", "fit Riccati data to moments");
  add_common(fit);
  CLI::App* derive = app.add_subcommand("derive", "tables of l_n, pi_n, Theta_n, A_n");
  add_common(derive);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kInputError;
  }

  try {
    ProblemFile p = load_problem(file, !classify->parsed());
    apply(o, p);
    if (classify->parsed()) return cmd_classify(p, points);
    if (cert->parsed()) return cmd_certify(p);
    if (fit->parsed()) return cmd_fit(p);
    return cmd_derive(p);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const MathError& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return kMathFailure;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kMathFailure;
  }
}
