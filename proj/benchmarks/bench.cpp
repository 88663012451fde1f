#include <benchmark/benchmark.h>

#include "dirackit/cartan.hpp"
#include "dirackit/expr.hpp"
#include "dirackit/gensection.hpp"
#include "dirackit/harness.hpp"

using namespace dirackit;

namespace {

const Chart c3({"x", "y", "z"});

Poly dense_poly(unsigned degree, int salt) {
  Poly p = Poly::zero(c3);
  Mono m(3, 0);
  for (unsigned a = 0; a <= degree; ++a)
    for (unsigned b = 0; a + b <= degree; ++b)
      for (unsigned c = 0; a + b + c <= degree; ++c) {
        m[0] = a;
        m[1] = b;
        m[2] = c;
        p.add_term(m, Rational(static_cast<int>(a + 2 * b + 3 * c) + salt, 1 + (a + b + c) % 3));
      }
  return p;
}

TensorField so3_bivector() {
  TensorField pi = TensorField::zero(c3, TensorKind::Multivector, 2);
  pi.add_signed({0, 1}, parse_expr("z", c3));
  pi.add_signed({1, 2}, parse_expr("x", c3));
  pi.add_signed({2, 0}, parse_expr("y", c3));
  return pi;
}

void BM_PolyMultiply(benchmark::State& state) {
  Poly a = dense_poly(static_cast<unsigned>(state.range(0)), 1);
  Poly b = dense_poly(static_cast<unsigned>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyMultiply)->Arg(3)->Arg(6);

void BM_PolyGcd(benchmark::State& state) {
  // Dense degree-3 cofactors push the subresultant chain past a minute per
  // call; degree 2 keeps one gcd in the tens of milliseconds.
  Poly g = dense_poly(2, 2);
  Poly a = g * dense_poly(2, 1);
  Poly b = g * dense_poly(2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(gcd(a, b));
}
BENCHMARK(BM_PolyGcd);

void BM_SchoutenSquare(benchmark::State& state) {
  TensorField pi = so3_bivector();
  for (auto _ : state) benchmark::DoNotOptimize(schouten_bracket(pi, pi));
}
BENCHMARK(BM_SchoutenSquare);

void BM_CourantBracket(benchmark::State& state) {
  GenSection s = GenSection::make(
      c3, {parse_expr("x*y", c3), parse_expr("z", c3), parse_expr("1", c3)},
      {parse_expr("y^2", c3), parse_expr("x", c3), parse_expr("0", c3)});
  GenSection t = GenSection::make(
      c3, {parse_expr("z^2", c3), parse_expr("x", c3), parse_expr("y", c3)},
      {parse_expr("1", c3), parse_expr("x*z", c3), parse_expr("y", c3)});
  for (auto _ : state) benchmark::DoNotOptimize(courant_bracket(s, t));
}
BENCHMARK(BM_CourantBracket);

void BM_CorpusReducible(benchmark::State& state) {
  RunOptions opt;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_corpus("reducible-r3", opt));
}
BENCHMARK(BM_CorpusReducible);

void BM_PropositionModPullback(benchmark::State& state) {
  RunOptions opt;
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_proposition("prop-mod-pullback", opt));
}
BENCHMARK(BM_PropositionModPullback);

}  // namespace

BENCHMARK_MAIN();
