// Probes low-degree Riccati data on a lattice until the sequential moment
// solve and the full certificate succeed, then writes problem files.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "lhsnul/certify.hpp"
#include "lhsnul/problem_file.hpp"

using namespace lhsnul;

namespace {

struct Found {
  RiccatiData R;
  std::vector<Rational> moments;
};

Rational q(long p, long d = 1) {
  Rational out(p, d);
  out.canonicalize();
  return out;
}

/// D is fixed by the top coefficient of the residual with D = 0.
std::optional<Found> probe(const Lattice& L, const std::vector<int>& b_values, int n_max, int count) {
  for (int a2 : {1, 2, -1}) {
    for (int a0 : {-1, 1, 2}) {
      for (int b0 : b_values) {
        for (int c1 : {1, -1, 2, -2}) {
          for (int c0 : {1, 0, -1}) {
            RiccatiData R{Poly::from_rationals({q(a0), q(0), q(a2)}), Poly::from_rationals({q(b0)}),
                          Poly::from_rationals({q(c0), q(c1)}), Poly()};
            const int e = R.theta_degree_bound();
            const LaurentSeries one = LaurentSeries::stieltjes(std::vector<Rational>{q(1)});
            R.D = Poly::constant(riccati_residual(L, R, one).coeff(e));
            if (!R.is_rational()) continue;
            try {
              CertifyOptions opt;
              opt.n_max = n_max;
              CertifyInput in;
              in.riccati = R;
              if (!certify(L, in, opt).passed()) continue;
              return Found{R, solve_moments_from_riccati(L, R, count)};
            } catch (const std::exception&) {
              continue;
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

void write(const std::filesystem::path& dir, const std::string& name, const ProblemFile& p) {
  std::ofstream(dir / name) << to_json(p).dump(2) << '\n';
  std::cerr << "wrote " << (dir / name).string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "tests/fixtures";
  std::filesystem::create_directories(dir);
  const int n_max = 8;
  const int N = 2 * n_max + 12;

  const ConicCoefficients reference{q(1), q(-5, 4), q(1), q(0), q(0), q(1)};
  const Lattice L = build_lattice(reference);

  const auto lh = probe(L, {1, -1, 2}, n_max, 40);
  const auto sc = probe(L, {0}, n_max, 40);
  if (!lh || !sc) {
    std::cerr << "probe found no instance\n";
    return 1;
  }

  ProblemFile p;
  p.lattice = reference;
  p.riccati = lh->R;
  p.options.n_max = n_max;
  p.options.truncation = N;
  write(dir, "reference_lh.json", p);

  ProblemFile s = p;
  s.riccati = sc->R;
  write(dir, "reference_semiclassical.json", s);

  ProblemFile m;
  m.lattice = reference;
  m.moments = lh->moments;
  m.options.n_max = n_max;
  write(dir, "reference_moments.json", m);

  ProblemFile r;
  r.lattice = reference;
  const RecurrenceCoefficients rc = recurrence_from_moments(std::vector<Rational>(lh->moments.begin(),
                                                                                 lh->moments.begin() + N),
                                                            n_max + 4);
  r.recurrence = rc;
  r.riccati = lh->R;
  r.options.n_max = n_max;
  write(dir, "reference_recurrence.json", r);

  ProblemFile bad = p;
  bad.moments = std::vector<Rational>(lh->moments.begin(), lh->moments.begin() + N);
  (*bad.moments)[5] += 1;
  write(dir, "reference_perturbed.json", bad);

  const ConicCoefficients golden{q(1), q(-3, 2), q(1), q(0), q(0), q(1)};
  const Lattice G = build_lattice(golden);
  if (const auto g = probe(G, {1, -1, 2}, n_max, N)) {
    ProblemFile gp;
    gp.lattice = golden;
    gp.riccati = g->R;
    gp.options.n_max = n_max;
    write(dir, "sqrt5_lh.json", gp);
  } else {
    std::cerr << "no instance on the Q(sqrt 5) lattice\n";
  }
  return 0;
}
