#include "lhsnul/certify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "lhsnul/errors.hpp"

namespace lhsnul {

namespace {

struct LevelOutcome {
  bool ok = true;
  std::optional<int> first_bad_power;
  std::optional<LevelWindow> window;
  std::string note;
};

LevelOutcome poly_outcome(const Poly& residual) {
  LevelOutcome o;
  o.ok = residual.is_zero();
  if (!o.ok) {
    o.first_bad_power = residual.degree();
    o.note = "residual " + to_string(residual);
  }
  return o;
}

LevelOutcome surd_outcome(const SurdPoly& a, const SurdPoly& b) {
  LevelOutcome o;
  o.ok = a.is_zero() && b.is_zero();
  if (!o.ok) {
    const SurdPoly& bad = a.is_zero() ? b : a;
    o.first_bad_power = std::max(bad.u().degree(), bad.v().degree());
    o.note = std::string(a.is_zero() ? "second" : "first") + " relation residual " + to_string(bad);
  }
  return o;
}

LevelOutcome series_outcome(int n, const LaurentSeries& residual, int high) {
  LevelOutcome o;
  const int low = residual.valid_to().value_or(high);
  o.window = LevelWindow{n, low, high};
  if (low > high) {
    o.ok = false;
    o.note = "empty comparison window";
    return o;
  }
  o.ok = residual.is_known_zero();
  if (!o.ok) {
    o.first_bad_power = residual.first_nonzero_power();
    o.note = "first nonzero residual coefficient at x^" + std::to_string(*o.first_bad_power);
  }
  return o;
}

class Timer {
 public:
  Timer(Certificate& cert, std::string name)
      : cert_(cert), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    const auto dt = std::chrono::steady_clock::now() - start_;
    cert_.timings_ms.emplace_back(name_, std::chrono::duration<double, std::milli>(dt).count());
  }
  Timer(const Timer&) = delete;
  Timer& operator=(const Timer&) = delete;

 private:
  Certificate& cert_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

class Runner {
 public:
  Runner(Certificate& cert, Exec exec) : cert_(cert), exec_(exec) {}

  bool gated() const { return gated_; }
  void gate() { gated_ = true; }

  void skip(const std::string& name, const std::string& why) {
    CheckResult r;
    r.name = name;
    r.verdict = Verdict::skipped;
    r.summary = why;
    cert_.checks.push_back(std::move(r));
  }

  void record_error(const std::string& name, const std::exception& e, std::optional<int> level = {}) {
    CheckResult r;
    r.name = name;
    r.verdict = Verdict::error;
    r.summary = e.what();
    r.level = level;
    if (dynamic_cast<const InputError*>(&e)) cert_.input_error = true;
    if (auto* nq = dynamic_cast<const NotQuasiDefinite*>(&e)) r.level = nq->level();
    if (auto* nl = dynamic_cast<const NotLaguerreHahn*>(&e)) r.level = nl->level();
    if (auto* db = dynamic_cast<const DegreeBoundExceeded*>(&e)) r.level = db->level();
    if (auto* ic = dynamic_cast<const Inconsistent*>(&e)) r.first_bad_power = ic->power();
    cert_.checks.push_back(std::move(r));
  }

  void record(CheckResult r) { cert_.checks.push_back(std::move(r)); }

  /// Runs fn over n = lo..hi (possibly in parallel) and aggregates.
  bool levels(const std::string& name, int lo, int hi, const std::function<LevelOutcome(int)>& fn) {
    if (gated_) {
      skip(name, "skipped after an earlier failure");
      return false;
    }
    Timer t(cert_, name);
    const int count = std::max(hi - lo + 1, 0);
    std::vector<LevelOutcome> out(static_cast<std::size_t>(count));
    std::vector<std::string> errors(static_cast<std::size_t>(count));
    std::vector<char> errored(static_cast<std::size_t>(count), 0);
    std::vector<char> input(static_cast<std::size_t>(count), 0);
    kernels::for_each_index(
        count,
        [&](int i) {
          const auto k = static_cast<std::size_t>(i);
          try {
            out[k] = fn(lo + i);
          } catch (const InputError& e) {
            errored[k] = 1;
            input[k] = 1;
            errors[k] = e.what();
          } catch (const std::exception& e) {
            errored[k] = 1;
            errors[k] = e.what();
          }
        },
        exec_);
    CheckResult r;
    r.name = name;
    r.verdict = Verdict::pass;
    for (int i = 0; i < count; ++i) {
      const auto k = static_cast<std::size_t>(i);
      if (out[k].window) r.windows.push_back(*out[k].window);
      if (r.verdict != Verdict::pass) continue;
      if (errored[k]) {
        r.verdict = Verdict::error;
        r.level = lo + i;
        r.summary = "n = " + std::to_string(lo + i) + ": " + errors[k];
        if (input[k]) cert_.input_error = true;
      } else if (!out[k].ok) {
        r.verdict = Verdict::fail;
        r.level = lo + i;
        r.first_bad_power = out[k].first_bad_power;
        r.summary = "n = " + std::to_string(lo + i) + ": " + out[k].note;
      }
    }
    if (r.verdict == Verdict::pass) {
      r.summary = count == 0 ? "no levels to check" : "n = " + std::to_string(lo) + ".." + std::to_string(hi) + " exact";
      if (!r.windows.empty()) {
        auto narrow = std::max_element(r.windows.begin(), r.windows.end(),
                                       [](const LevelWindow& a, const LevelWindow& b) { return a.low < b.low; });
        r.summary += "; narrowest window x^" + std::to_string(narrow->high) + "..x^" + std::to_string(narrow->low) +
                     " at n = " + std::to_string(narrow->n);
      }
    }
    const bool ok = r.verdict == Verdict::pass;
    cert_.checks.push_back(std::move(r));
    return ok;
  }

 private:
  Certificate& cert_;
  Exec exec_;
  bool gated_ = false;
};

int max_degree(const std::vector<Poly>& v) {
  int d = Poly::kZeroDegree;
  for (const auto& p : v) d = std::max(d, p.degree());
  return d;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::skipped:
      return "skipped";
    case Verdict::error:
      return "error";
  }
  return "error";
}

bool Certificate::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.verdict == Verdict::pass; });
}

const CheckResult* Certificate::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Certificate certify(const Lattice& L, const CertifyInput& in, const CertifyOptions& opt) {
  Certificate cert;
  cert.n_max = opt.n_max;
  Runner run(cert, opt.exec);
  const int n_max = opt.n_max;
  const int levels = n_max + 2;  // P_0 .. P_{n_max + 2}

  int N = opt.truncation.value_or(2 * n_max + 12);
  if (!opt.truncation) {
    if (in.moments) N = std::min<int>(N, static_cast<int>(in.moments->size()));
    if (in.recurrence) {
      const int len = static_cast<int>(std::min(in.recurrence->beta.size(), in.recurrence->gamma.size()));
      N = std::min(N, 2 * len - 1);
    }
  }
  cert.truncation = N;

  // Moments.
  try {
    Timer t(cert, "moments");
    if (in.moments) {
      if (static_cast<int>(in.moments->size()) < N) {
        throw InsufficientTruncation(N, "truncation " + std::to_string(N) + " needs " + std::to_string(N) +
                                            " moments, have " + std::to_string(in.moments->size()));
      }
      cert.moments.assign(in.moments->begin(), in.moments->begin() + N);
      if (cert.moments.empty()) throw InputError("moments: empty");
      cert.moment_source = "supplied";
    } else if (in.recurrence) {
      cert.moments = moments_from_recurrence(in.recurrence->beta, in.recurrence->gamma, N);
      cert.moment_source = "recurrence";
    } else if (in.riccati) {
      cert.moments = solve_moments_from_riccati(L, *in.riccati, N, opt.free_values, opt.exec);
      cert.moment_source = "riccati";
    } else {
      throw InputError("no input: need riccati, moments or recurrence");
    }
    CheckResult r;
    r.name = "moments";
    r.verdict = Verdict::pass;
    r.summary = std::to_string(N) + " moments (" + cert.moment_source + ")";
    run.record(std::move(r));
  } catch (const std::exception& e) {
    run.record_error("moments", e);
    run.gate();
  }
  const LaurentSeries S = LaurentSeries::stieltjes(cert.moments);

  // Riccati data: supplied or fitted.
  if (in.riccati) {
    cert.riccati = *in.riccati;
  } else if (!run.gated()) {
    try {
      Timer t(cert, "fit");
      const std::vector<RiccatiData> fit = fit_riccati(L, S, opt.bounds, {}, opt.exec);
      CheckResult r;
      r.name = "fit";
      if (fit.empty()) {
        r.verdict = Verdict::fail;
        r.summary = "no relation found within degree bounds";
        run.gate();
      } else {
        r.verdict = Verdict::pass;
        r.summary = std::to_string(fit.size()) + " candidate(s); certifying the first";
        cert.riccati = fit.front();
      }
      run.record(std::move(r));
    } catch (const std::exception& e) {
      run.record_error("fit", e);
      run.gate();
    }
  }
  if (cert.riccati && cert.riccati->A.is_zero()) {
    run.record_error("riccati", InputError("Riccati data needs A != 0"));
    run.gate();
  }

  const RiccatiData R = cert.riccati.value_or(RiccatiData{});
  const int e = R.theta_degree_bound();
  if (cert.riccati) {
    cert.degrees = {{"A", R.A.degree()}, {"B", R.B.degree()}, {"C", R.C.degree()}, {"D", R.D.degree()},
                    {"theta_hat_bound", e}};
  }

  // (a): Riccati equation in the window of S.
  if (!run.gated()) {
    try {
      Timer t(cert, "riccati");
      const LaurentSeries res = riccati_residual(L, R, S, {}, opt.exec);
      const LevelOutcome o = series_outcome(0, res, std::max(e, R.D.degree()));
      CheckResult r;
      r.name = "riccati";
      r.windows.push_back(*o.window);
      if (o.ok) {
        r.verdict = Verdict::pass;
        r.summary = "residual zero on x^" + std::to_string(o.window->high) + "..x^" + std::to_string(o.window->low);
      } else {
        r.verdict = Verdict::fail;
        r.first_bad_power = o.first_bad_power;
        r.summary = o.note;
        if (o.first_bad_power && e - *o.first_bad_power >= 0) {
          r.summary += " (equation of u_" + std::to_string(e - *o.first_bad_power) + ")";
        }
        run.gate();
      }
      run.record(std::move(r));
    } catch (const std::exception& ex) {
      run.record_error("riccati", ex);
      run.gate();
    }
  } else {
    run.skip("riccati", "skipped after an earlier failure");
  }

  // Recurrence coefficients and polynomials. The moments are checked even when
  // the Riccati stage failed.
  if (!cert.moments.empty() && cert.moments.size() == static_cast<std::size_t>(N)) {
    try {
      Timer t(cert, "quasi-definite");
      CheckResult r;
      r.name = "quasi-definite";
      if (!in.recurrence && cert.moments[0] != 1) {
        r.verdict = Verdict::fail;
        r.summary = "moments not normalized: u_0 = " + to_string(cert.moments[0]);
        run.gate();
      } else {
        const RecurrenceCoefficients rc = in.recurrence ? *in.recurrence : recurrence_from_moments(cert.moments, levels);
        cert.data = smop_from_recurrence(rc.beta, rc.gamma, levels);
        r.verdict = Verdict::pass;
        r.summary = "gamma_1..gamma_" + std::to_string(levels) + " nonzero";
      }
      run.record(std::move(r));
    } catch (const NotQuasiDefinite& ex) {
      CheckResult r;
      r.name = "quasi-definite";
      r.verdict = Verdict::fail;
      r.level = ex.level();
      r.summary = ex.what();
      run.record(std::move(r));
      run.gate();
    } catch (const std::exception& ex) {
      run.record_error("quasi-definite", ex);
      run.gate();
    }
  } else {
    run.skip("quasi-definite", "skipped after an earlier failure");
  }

  const SMOPData empty_data;
  const SMOPData& data = cert.data ? *cert.data : empty_data;

  run.levels("liouville", 0, n_max, [&](int n) { return poly_outcome(liouville_defect(data, n)); });
  run.levels("second-kind-decay", 0, n_max, [&](int n) {
    const SecondKindCheck c = check_second_kind(data, S, n);
    LevelOutcome o;
    o.ok = c.agree && c.decays;
    o.first_bad_power = c.first_bad_power;
    o.window = LevelWindow{n, c.window_low, n - 1};
    if (!c.agree) o.note = "definition and recurrence disagree";
    if (!c.decays) o.note = "q_n does not decay: x^" + std::to_string(*c.first_bad_power) + " coefficient nonzero";
    return o;
  });

  // (a) => (b): structure coefficients from the polynomials.
  if (!run.gated()) {
    try {
      Timer t(cert, "structure-direct");
      cert.direct = structure_coeffs_direct(L, R, data, n_max, opt.exec);
      CheckResult r;
      r.name = "structure-direct";
      r.verdict = Verdict::pass;
      r.summary = "hat Theta_n free of sqrt(r), divisions exact for n = 0.." + std::to_string(n_max);
      run.record(std::move(r));
      CheckResult d;
      d.name = "theta-degree-bound";
      d.verdict = Verdict::pass;
      d.summary = "max deg hat Theta_n = " + std::to_string(max_degree(cert.direct->theta_hat)) +
                  " <= " + std::to_string(std::max(e, R.D.degree()));
      run.record(std::move(d));
    } catch (const DegreeBoundExceeded& ex) {
      run.record_error("structure-direct", ex);
      CheckResult d;
      d.name = "theta-degree-bound";
      d.verdict = Verdict::fail;
      d.level = ex.level();
      d.summary = ex.what();
      run.record(std::move(d));
      run.gate();
    } catch (const std::exception& ex) {
      run.record_error("structure-direct", ex);
      run.gate();
    }
  } else {
    run.skip("structure-direct", "skipped after an earlier failure");
  }
  const StructureCoeffs empty_coeffs;
  const StructureCoeffs& c = cert.direct ? *cert.direct : empty_coeffs;

  if (cert.direct) {
    auto l_deg = max_degree(c.l), pi_deg = max_degree(c.pi), th_deg = max_degree(c.theta);
    int a_deg = Poly::kZeroDegree;
    for (int n = 0; n <= n_max + 1; ++n) a_deg = std::max(a_deg, gathered_A(L, R, c, n).degree());
    cert.degrees.emplace_back("max_deg_l", l_deg);
    cert.degrees.emplace_back("max_deg_pi", pi_deg);
    cert.degrees.emplace_back("max_deg_theta", th_deg);
    cert.degrees.emplace_back("max_deg_theta_hat", max_degree(c.theta_hat));
    cert.degrees.emplace_back("max_deg_A_gathered", a_deg);
  }

  run.levels("initial-conditions", 0, 0, [&](int) {
    LevelOutcome o;
    for (const auto& [name, defect] : initial_condition_defects(L, R, data, c)) {
      if (!defect.is_zero()) {
        o.ok = false;
        o.note = name + " differs from its closed form by " + to_string(defect);
        break;
      }
    }
    return o;
  });

  for (int variant = 1; variant <= 2; ++variant) {
    run.levels("structure-" + std::to_string(variant), 1, n_max + 1, [&, variant](int n) {
      auto [a, b] = verify_structure_relations(L, R, data, c, n, variant);
      return surd_outcome(a, b);
    });
  }

  std::optional<SeriesContext> ctx;
  if (!run.gated()) ctx.emplace(L, S, opt.exec);

  for (int variant = 1; variant <= 2; ++variant) {
    run.levels("second-kind-" + std::to_string(variant), 0, n_max, [&, variant](int n) {
      auto res = verify_second_kind_relations(*ctx, R, data, c, n);
      const int high = std::max({R.A.degree() - 2, R.B.degree() - 2, R.C.degree() - 1, c.l_at(n - 1).degree() - 1,
                                 c.pi_at(n - 1).degree(), c.theta_at(n - 1).degree()}) -
                       n;
      return series_outcome(n, variant == 1 ? res.first : res.second, high);
    });
  }

  std::vector<GatheredResiduals> gathered;
  if (!run.gated()) {
    gathered.resize(static_cast<std::size_t>(n_max + 1));
    try {
      Timer t(cert, "gathered");
      kernels::for_each_index(
          n_max + 1, [&](int n) { gathered[static_cast<std::size_t>(n)] = gathered_relations(*ctx, R, data, c, n); },
          opt.exec);
    } catch (const std::exception& ex) {
      run.record_error("gathered", ex);
      run.gate();
    }
  }
  run.levels("gathered-p", 0, n_max, [&](int n) { return poly_outcome(gathered[static_cast<std::size_t>(n)].p); });
  run.levels("gathered-p1", 0, n_max, [&](int n) { return poly_outcome(gathered[static_cast<std::size_t>(n)].p1); });
  run.levels("gathered-q", 0, n_max, [&](int n) {
    const int high = std::max({gathered_A(L, R, c, n).degree() - 2, (c.l_at(n - 1) + R.C).degree() - 1,
                               R.B.degree() - 2, c.theta_at(n - 1).degree()}) -
                     n;
    return series_outcome(n, gathered[static_cast<std::size_t>(n)].q, high);
  });

  // Recursion oracles.
  if (!run.gated()) {
    Timer t(cert, "recursion-table");
    cert.recursion = recursion_coeffs(L, R, data, n_max);
  }
  run.levels("recursion", -1, n_max, [&](int n) {
    LevelOutcome o;
    const StructureCoeffs& k = *cert.recursion;
    o.ok = k.l_at(n) == c.l_at(n) && k.pi_at(n) == c.pi_at(n) && k.theta_at(n) == c.theta_at(n);
    if (!o.ok) o.note = "recursion differs from the direct coefficients";
    return o;
  });
  run.levels("magnus", 0, n_max - 1, [&](int n) {
    const MagnusRiccatiData next =
        magnus_step(L, magnus_data(L, R, data, c, n), data.beta.at(static_cast<std::size_t>(n + 1)),
                    data.gamma.at(static_cast<std::size_t>(n + 1)));
    LevelOutcome o;
    o.ok = next == magnus_data(L, R, data, c, n + 1);
    if (!o.ok) o.note = "update formulas disagree with the level " + std::to_string(n + 1) + " data";
    return o;
  });
  run.levels("magnus-riccati", 0, n_max - 1, [&](int n) {
    const MagnusRiccatiData M = magnus_data(L, R, data, c, n);
    const RiccatiData as{M.A, M.B, M.C, M.D};
    return series_outcome(n, magnus_riccati_residual(*ctx, data, M),
                          std::max(as.theta_degree_bound(), as.D.degree()));
  });
  run.levels("telescope-L", 0, n_max, [&](int n) { return poly_outcome(telescope_L(L, c, data, n)); });
  run.levels("telescope-T", 0, n_max, [&](int n) { return poly_outcome(telescope_T_defect(c, data, n)); });

  // (c) => (a) readback and the linear fit.
  if (!run.gated()) {
    try {
      Timer t(cert, "reconstruction");
      const RiccatiData back = reconstruct_riccati(L, c, data);
      CheckResult r;
      r.name = "reconstruction";
      r.verdict = projectively_equal(back, R) ? Verdict::pass : Verdict::fail;
      r.summary = r.verdict == Verdict::pass ? "recovered (A, B, C, D) up to a common factor"
                                             : "recovered data differs: A = " + to_string(back.A) +
                                                   ", B = " + to_string(back.B);
      run.record(std::move(r));
    } catch (const std::exception& ex) {
      run.record_error("reconstruction", ex);
    }
    try {
      Timer t(cert, "fit-contains");
      const DegreeBounds b = DegreeBounds::covering(R, opt.bounds);
      const std::vector<RiccatiData> basis = fit_riccati(L, S, b, {}, opt.exec);
      CheckResult r;
      r.name = "fit-contains";
      r.verdict = in_span(basis, R, b) ? Verdict::pass : Verdict::fail;
      r.summary = "nullspace of dimension " + std::to_string(basis.size()) +
                  (r.verdict == Verdict::pass ? " contains the data" : " misses the data");
      run.record(std::move(r));
    } catch (const std::exception& ex) {
      run.record_error("fit-contains", ex);
    }
  } else {
    run.skip("reconstruction", "skipped after an earlier failure");
    run.skip("fit-contains", "skipped after an earlier failure");
  }
  return cert;
}

}  // namespace lhsnul
