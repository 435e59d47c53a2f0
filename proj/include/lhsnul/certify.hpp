#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lhsnul/laguerre_hahn.hpp"

namespace lhsnul {

enum class Verdict { pass, fail, skipped, error };

std::string to_string(Verdict v);

/// Compared window of one level of a check: powers x^high down to x^low.
struct LevelWindow {
  int n = 0;
  int low = 0;
  int high = 0;
};

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::skipped;
  std::string summary;
  std::optional<int> level;            ///< first failing n
  std::optional<int> first_bad_power;  ///< highest power with a nonzero residual coefficient
  std::vector<LevelWindow> windows;    ///< series checks only
};

struct CertifyInput {
  std::optional<RiccatiData> riccati;
  std::optional<std::vector<Rational>> moments;
  std::optional<RecurrenceCoefficients> recurrence;
};

struct CertifyOptions {
  int n_max = 8;
  /// Moments used, u_0 .. u_{N-1}; defaults to 2 n_max + 12 (capped by
  /// supplied moments or recurrence length).
  std::optional<int> truncation;
  DegreeBounds bounds;
  std::map<int, Rational> free_values;
  Exec exec = Exec::parallel;
};

struct Certificate {
  int n_max = 0;
  int truncation = 0;
  std::string moment_source;
  std::optional<RiccatiData> riccati;
  std::vector<Rational> moments;
  std::optional<SMOPData> data;
  std::optional<StructureCoeffs> direct;
  std::optional<StructureCoeffs> recursion;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, int>> degrees;
  std::vector<std::pair<std::string, double>> timings_ms;
  bool input_error = false;

  /// Every check passed (skipped checks count as failures).
  bool passed() const;
  const CheckResult* find(const std::string& name) const;
};

/// Runs the whole pipeline and records every stage. Errors inside a stage are
/// caught and recorded; a failed Riccati or quasi-definiteness stage skips
/// everything downstream.
Certificate certify(const Lattice& L, const CertifyInput& in, const CertifyOptions& opt = {});

}  // namespace lhsnul
