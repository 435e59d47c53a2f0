#include "lhsnul/problem_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lhsnul/errors.hpp"

namespace lhsnul {

using nlohmann::json;

namespace {

Rational rational_at(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError(where + ": expected a rational as a \"p/q\" string");
}

std::vector<Rational> rationals_at(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(rational_at(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

int int_at(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<int>();
}

json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

const char* const kConicKeys[] = {"a", "b", "c", "d", "e", "f"};

}  // namespace

bool operator==(const ProblemFile& a, const ProblemFile& b) {
  auto rec_eq = [](const std::optional<RecurrenceCoefficients>& x, const std::optional<RecurrenceCoefficients>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->beta == y->beta && x->gamma == y->gamma);
  };
  auto bounds_eq = [](const std::optional<DegreeBounds>& x, const std::optional<DegreeBounds>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->a == y->a && x->b == y->b && x->c == y->c && x->d == y->d);
  };
  return a.lattice == b.lattice && a.riccati == b.riccati && a.moments == b.moments &&
         rec_eq(a.recurrence, b.recurrence) && a.options.n_max == b.options.n_max &&
         a.options.truncation == b.options.truncation && bounds_eq(a.options.deg_bounds, b.options.deg_bounds) &&
         a.options.discriminant == b.options.discriminant && a.options.free_values == b.options.free_values;
}

ProblemFile problem_from_json(const json& j, bool require_input) {
  if (!j.is_object()) throw InputError("problem: expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "lattice" && key != "riccati" && key != "moments" && key != "recurrence" && key != "options") {
      throw InputError("problem: unknown field '" + key + "'");
    }
  }
  ProblemFile p;
  if (!j.contains("lattice")) throw InputError("lattice: missing");
  const json& lat = j["lattice"];
  Rational* slots[] = {&p.lattice.a_hat, &p.lattice.b_hat, &p.lattice.c_hat,
                       &p.lattice.d_hat, &p.lattice.e_hat, &p.lattice.f_hat};
  if (lat.is_array()) {
    if (lat.size() != 6) throw InputError("lattice: expected six conic coefficients");
    for (std::size_t k = 0; k < 6; ++k) *slots[k] = rational_at(lat[k], "lattice[" + std::to_string(k) + "]");
  } else if (lat.is_object()) {
    for (std::size_t k = 0; k < 6; ++k) {
      if (!lat.contains(kConicKeys[k])) throw InputError(std::string("lattice.") + kConicKeys[k] + ": missing");
      *slots[k] = rational_at(lat[kConicKeys[k]], std::string("lattice.") + kConicKeys[k]);
    }
  } else {
    throw InputError("lattice: expected an array of six rationals");
  }

  if (j.contains("riccati")) {
    const json& r = j["riccati"];
    if (!r.is_object()) throw InputError("riccati: expected an object with A, B, C, D");
    RiccatiData R;
    Poly* polys[] = {&R.A, &R.B, &R.C, &R.D};
    const char* names[] = {"A", "B", "C", "D"};
    for (int k = 0; k < 4; ++k) {
      const std::string where = std::string("riccati.") + names[k];
      *polys[k] = r.contains(names[k]) ? Poly::from_rationals(rationals_at(r[names[k]], where)) : Poly();
    }
    if (R.A.is_zero()) throw InputError("riccati.A: must be a nonzero polynomial");
    p.riccati = R;
  }
  if (j.contains("moments")) p.moments = rationals_at(j["moments"], "moments");
  if (j.contains("recurrence")) {
    const json& r = j["recurrence"];
    if (!r.is_object() || !r.contains("beta") || !r.contains("gamma")) {
      throw InputError("recurrence: expected an object with beta and gamma");
    }
    p.recurrence = RecurrenceCoefficients{rationals_at(r["beta"], "recurrence.beta"),
                                          rationals_at(r["gamma"], "recurrence.gamma")};
  }
  if (require_input && !p.riccati && !p.moments && !p.recurrence) {
    throw InputError("problem: needs one input flavor (riccati, moments or recurrence)");
  }
  if (p.moments && p.recurrence) throw InputError("problem: give moments or recurrence, not both");

  if (j.contains("options")) {
    const json& o = j["options"];
    if (!o.is_object()) throw InputError("options: expected an object");
    for (const auto& [key, v] : o.items()) {
      const std::string where = "options." + key;
      if (key == "n_max") {
        p.options.n_max = int_at(v, where);
        if (*p.options.n_max < 1) throw InputError(where + ": must be at least 1");
      } else if (key == "truncation") {
        p.options.truncation = int_at(v, where);
        if (*p.options.truncation < 1) throw InputError(where + ": must be positive");
      } else if (key == "deg_bounds") {
        if (!v.is_array() || v.size() != 4) throw InputError(where + ": expected [a, b, c, d]");
        DegreeBounds b{int_at(v[0], where + "[0]"), int_at(v[1], where + "[1]"), int_at(v[2], where + "[2]"),
                       int_at(v[3], where + "[3]")};
        if (std::min({b.a, b.b, b.c, b.d}) < 0) throw InputError(where + ": bounds must be nonnegative");
        p.options.deg_bounds = b;
      } else if (key == "discriminant") {
        p.options.discriminant = rational_at(v, where);
      } else if (key == "free_values") {
        if (!v.is_object()) throw InputError(where + ": expected an object {index: value}");
        for (const auto& [idx, val] : v.items()) {
          int m = 0;
          try {
            std::size_t used = 0;
            m = std::stoi(idx, &used);
            if (used != idx.size() || m < 0) throw std::invalid_argument(idx);
          } catch (const std::exception&) {
            throw InputError(where + ": key '" + idx + "' is not a moment index");
          }
          p.options.free_values[m] = rational_at(val, where + "." + idx);
        }
      } else {
        throw InputError(where + ": unknown option");
      }
    }
  }
  return p;
}

ProblemFile parse_problem(const std::string& text, bool require_input) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n');
    throw InputError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  return problem_from_json(j, require_input);
}

ProblemFile load_problem(const std::string& path, bool require_input) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_problem(ss.str(), require_input);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

json to_json(const Poly& p) {
  json a = json::array();
  for (const auto& c : p.coefficients()) a.push_back(to_string(c));
  return a;
}

json to_json(const RiccatiData& R) {
  return json{{"A", to_json(R.A)}, {"B", to_json(R.B)}, {"C", to_json(R.C)}, {"D", to_json(R.D)}};
}

json to_json(const ProblemFile& problem) {
  json j;
  const ConicCoefficients& k = problem.lattice;
  j["lattice"] = rationals_json({k.a_hat, k.b_hat, k.c_hat, k.d_hat, k.e_hat, k.f_hat});
  if (problem.riccati) j["riccati"] = to_json(*problem.riccati);
  if (problem.moments) j["moments"] = rationals_json(*problem.moments);
  if (problem.recurrence) {
    j["recurrence"] = {{"beta", rationals_json(problem.recurrence->beta)},
                       {"gamma", rationals_json(problem.recurrence->gamma)}};
  }
  json o = json::object();
  const ProblemOptions& opt = problem.options;
  if (opt.n_max) o["n_max"] = *opt.n_max;
  if (opt.truncation) o["truncation"] = *opt.truncation;
  if (opt.deg_bounds) o["deg_bounds"] = {opt.deg_bounds->a, opt.deg_bounds->b, opt.deg_bounds->c, opt.deg_bounds->d};
  if (opt.discriminant) o["discriminant"] = to_string(*opt.discriminant);
  if (!opt.free_values.empty()) {
    json f = json::object();
    for (const auto& [m, v] : opt.free_values) f[std::to_string(m)] = to_string(v);
    o["free_values"] = f;
  }
  if (!o.empty()) j["options"] = o;
  return j;
}

json to_json(const StructureCoeffs& c, int max_level) {
  json rows = json::array();
  for (int n = -1; n <= std::min(max_level, c.max_level()); ++n) {
    rows.push_back({{"n", n}, {"l", to_json(c.l_at(n))}, {"pi", to_json(c.pi_at(n))}, {"theta", to_json(c.theta_at(n))}});
  }
  return rows;
}

json certificate_json(const ProblemFile& problem, const Certificate& cert) {
  json j;
  j["instance"] = to_json(problem);
  j["passed"] = cert.passed();
  j["n_max"] = cert.n_max;
  j["truncation"] = cert.truncation;
  if (!cert.moment_source.empty()) j["moment_source"] = cert.moment_source;
  if (cert.riccati && !problem.riccati) j["fitted_riccati"] = to_json(*cert.riccati);
  json checks = json::array();
  for (const auto& c : cert.checks) {
    json row{{"name", c.name}, {"verdict", to_string(c.verdict)}, {"residual_summary", c.summary}};
    if (c.windows.empty()) {
      row["window"] = nullptr;
    } else {
      json w = json::array();
      for (const auto& lw : c.windows) w.push_back({{"n", lw.n}, {"high", lw.high}, {"low", lw.low}});
      row["window"] = w;
    }
    if (c.level) row["level"] = *c.level;
    if (c.first_bad_power) row["first_bad_power"] = *c.first_bad_power;
    checks.push_back(row);
  }
  j["checks"] = checks;
  json degrees = json::object();
  for (const auto& [name, d] : cert.degrees) degrees[name] = d == Poly::kZeroDegree ? json(nullptr) : json(d);
  j["degrees"] = degrees;
  json timings = json::object();
  for (const auto& [name, ms] : cert.timings_ms) timings[name] = ms;
  j["timings"] = timings;
  return j;
}

CertifyOptions certify_options(const ProblemFile& problem) {
  CertifyOptions opt;
  if (problem.options.n_max) opt.n_max = *problem.options.n_max;
  opt.truncation = problem.options.truncation;
  if (problem.options.deg_bounds) opt.bounds = *problem.options.deg_bounds;
  opt.free_values = problem.options.free_values;
  return opt;
}

}  // namespace lhsnul
