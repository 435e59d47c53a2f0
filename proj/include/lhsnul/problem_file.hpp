#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "lhsnul/certify.hpp"

namespace lhsnul {

struct ProblemOptions {
  std::optional<int> n_max;
  std::optional<int> truncation;
  std::optional<DegreeBounds> deg_bounds;
  std::optional<Rational> discriminant;
  std::map<int, Rational> free_values;  ///< moments fixed by hand when the solve leaves them free
};

/// One problem instance: a lattice plus Riccati data and/or moments or a
/// recurrence. Rationals travel as "p/q" strings; polynomial coefficients are
/// listed from the constant term up.
struct ProblemFile {
  ConicCoefficients lattice;
  std::optional<RiccatiData> riccati;
  std::optional<std::vector<Rational>> moments;
  std::optional<RecurrenceCoefficients> recurrence;
  ProblemOptions options;

  CertifyInput input() const { return {riccati, moments, recurrence}; }
};

bool operator==(const ProblemFile& a, const ProblemFile& b);

/// Throws InputError naming the offending line or field. With require_input
/// false only the lattice block is mandatory.
ProblemFile parse_problem(const std::string& text, bool require_input = true);
ProblemFile problem_from_json(const nlohmann::json& j, bool require_input = true);
ProblemFile load_problem(const std::string& path, bool require_input = true);

nlohmann::json to_json(const Poly& p);
nlohmann::json to_json(const RiccatiData& R);
nlohmann::json to_json(const ProblemFile& problem);
nlohmann::json to_json(const StructureCoeffs& c, int max_level);
/// {instance, checks: [{name, verdict, window, residual_summary, ...}], degrees, timings, passed}.
nlohmann::json certificate_json(const ProblemFile& problem, const Certificate& cert);

/// Certify options carried by the file.
CertifyOptions certify_options(const ProblemFile& problem);

}  // namespace lhsnul
