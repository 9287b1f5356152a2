#include <benchmark/benchmark.h>

#include "enriques/decompose.hpp"
#include "enriques/expression.hpp"
#include "enriques/invariants.hpp"
#include "enriques/isotropic_enum.hpp"
#include "enriques/oracle.hpp"

using namespace enriques;

namespace {

const LatticeClass kAnchor = LatticeClass::e() + 2 * LatticeClass::f();

LatticeClass doubled_pair() { return parse_class("let E1,E2 = isotropic(E1.E2=2); 2*(E1+E2)").resolved; }

void BM_EnumerateIsotropic(benchmark::State& state) {
  const CosetEnumerator e(EnriquesLattice::standard(), kAnchor);
  for (auto _ : state) benchmark::DoNotOptimize(e.count(0, state.range(0)));
}
BENCHMARK(BM_EnumerateIsotropic)->Arg(2)->Arg(4)->Arg(6);

void BM_OracleBox(benchmark::State& state) {
  const auto& lat = EnriquesLattice::standard();
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle::certified_solutions(lat, kAnchor, 0, state.range(0)));
}
BENCHMARK(BM_OracleBox)->Arg(2)->Arg(4);

void BM_Phi(benchmark::State& state) {
  const LatticeClass L = doubled_pair();
  for (auto _ : state) benchmark::DoNotOptimize(min_pairing_isotropic(L));
}
BENCHMARK(BM_Phi);

void BM_GenericGonality(benchmark::State& state) {
  const LatticeClass L = doubled_pair();
  for (auto _ : state) benchmark::DoNotOptimize(generic_gonality(L));
}
BENCHMARK(BM_GenericGonality);

void BM_Decompose(benchmark::State& state) {
  const LatticeClass L =
      parse_class("let A,B,C,D = isotropic(A.B=2, A.C=2, A.D=1, B.C=1, B.D=2, C.D=2); 2*A + B + C + D").resolved;
  for (auto _ : state) benchmark::DoNotOptimize(isotropic_decompose(L));
}
BENCHMARK(BM_Decompose);

}  // namespace

BENCHMARK_MAIN();
