// Serial reference against the OpenMP kernels. Arg 0 selects the policy.
#include <benchmark/benchmark.h>

#include <random>

#include "lhsnul/certify.hpp"
#include "lhsnul/linear_solve.hpp"

using namespace lhsnul;

namespace {

Exec policy(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-999, 999), den(1, 97);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

void BM_Convolve(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(1));
  std::vector<QuadNumber> a, b;
  for (std::size_t k = 0; k < n; ++k) {
    a.emplace_back(random_rational(rng));
    b.emplace_back(random_rational(rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(kernels::convolve(a, b, n, policy(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_RowReduce(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int n = static_cast<int>(state.range(1));
  std::vector<Row> m(static_cast<std::size_t>(n), Row(static_cast<std::size_t>(n)));
  for (auto& row : m) {
    for (auto& x : row) x = random_rational(rng);
  }
  for (auto _ : state) {
    std::vector<Row> work = m;
    benchmark::DoNotOptimize(row_reduce(work, n, policy(state)));
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_Certify(benchmark::State& state) {
  const Lattice L = build_lattice({Rational(1), Rational(-5, 4), Rational(1), Rational(0), Rational(0), Rational(1)});
  CertifyInput in;
  in.riccati = RiccatiData{Poly::from_rationals({Rational(-1), Rational(0), Rational(1)}), Poly::constant(1),
                           Poly::from_rationals({Rational(1), Rational(1)}), Poly::constant(Rational(-9, 4))};
  CertifyOptions opt;
  opt.n_max = static_cast<int>(state.range(1));
  opt.exec = policy(state);
  for (auto _ : state) {
    const Certificate c = certify(L, in, opt);
    if (!c.passed()) state.SkipWithError("certificate failed");
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_Convolve)->ArgsProduct({{0, 1}, {64, 512}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RowReduce)->ArgsProduct({{0, 1}, {24, 48}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Certify)->ArgsProduct({{0, 1}, {4, 8}})->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
