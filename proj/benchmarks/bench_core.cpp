#include <benchmark/benchmark.h>

#include <random>

#include "weaktile/cyclo.hpp"
#include "weaktile/deciders.hpp"
#include "weaktile/fourier.hpp"
#include "weaktile/lift.hpp"
#include "weaktile/loghadamard.hpp"
#include "weaktile/lonely.hpp"

using namespace weaktile;
using cyclo::CyclotomicNumber;

namespace {

const lonely::LonelyInstance& instance() {
  static const auto inst = lonely::build_instance(5, 17, lonely::BSource::search());
  return inst;
}

CyclotomicNumber random_value(std::mt19937_64& rng, std::uint64_t n) {
  CyclotomicNumber x;
  for (int i = 0; i < 6; ++i)
    x += CyclotomicNumber::root_of_unity(std::int64_t(rng() % n), n).scaled(Rational(std::int64_t(rng() % 7) - 3));
  return x;
}

}  // namespace

static void BM_CycloMultiply(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::mt19937_64 rng(1);
  const auto a = random_value(rng, n), b = random_value(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CycloMultiply)->Arg(12)->Arg(102)->Arg(510);

static void BM_CycloSign(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto a = random_value(rng, 510);
  const auto r = a * a.conj();
  for (auto _ : state) benchmark::DoNotOptimize(r.sign_of_real());
}
BENCHMARK(BM_CycloSign);

static void BM_FullTransform(benchmark::State& state) {
  const auto g = make_group({6, 6, 6});
  std::vector<std::uint64_t> e{0, 1, 7, 43, 100, 150};
  const auto f = GroupFunction::indicator(ElementSet(g, e));
  for (auto _ : state) benchmark::DoNotOptimize(full_transform(f));
}
BENCHMARK(BM_FullTransform)->Unit(benchmark::kMillisecond);

static void BM_InverseTransform(benchmark::State& state) {
  const auto g = make_group({6, 6, 6});
  const auto f = GroupFunction::indicator(ElementSet(g, {0, 1, 7, 43, 100, 150}));
  const auto t = full_transform(f);
  for (auto _ : state) benchmark::DoNotOptimize(inverse_transform(g, t));
}
BENCHMARK(BM_InverseTransform)->Unit(benchmark::kMillisecond);

static void BM_DecideTile(benchmark::State& state) {
  const auto g = make_group({8, 8});
  std::vector<std::uint64_t> e;
  for (std::uint32_t a = 0; a < 2; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) e.push_back(g.index({a, b}));
  const ElementSet X(g, e);
  for (auto _ : state) benchmark::DoNotOptimize(decide_tile(X));
}
BENCHMARK(BM_DecideTile)->Unit(benchmark::kMicrosecond);

static void BM_LogHadamardSearch(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(search_log_hadamard(p, d, Budget{50'000'000}));
}
BENCHMARK(BM_LogHadamardSearch)->Args({3, 5})->Args({5, 4})->Unit(benchmark::kMillisecond);

static void BM_BuildInstance(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lonely::build_instance(5, 17, lonely::BSource::search()));
}
BENCHMARK(BM_BuildInstance)->Unit(benchmark::kMillisecond);

static void BM_FtPtClosedForm(benchmark::State& state) {
  const auto& inst = instance();
  std::mt19937_64 rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(lonely::ft_Pt(inst, rng() % inst.G.size(), rng() % inst.H.size()));
}
BENCHMARK(BM_FtPtClosedForm)->Unit(benchmark::kMicrosecond);

static void BM_FtPtDirect(benchmark::State& state) {
  const auto& inst = instance();
  std::mt19937_64 rng(3);
  for (auto _ : state)
    benchmark::DoNotOptimize(lonely::ft_Pt_direct(inst, rng() % inst.G.size(), rng() % inst.H.size()));
}
BENCHMARK(BM_FtPtDirect)->Unit(benchmark::kMillisecond);

static void BM_NonVanishingSampled(benchmark::State& state) {
  const auto& inst = instance();
  for (auto _ : state) benchmark::DoNotOptimize(lonely::verify_non_vanishing(inst, SweepMode::sampled(1000, 0)));
}
BENCHMARK(BM_NonVanishingSampled)->Unit(benchmark::kMillisecond);

static void BM_CosetCheck(benchmark::State& state) {
  const auto& inst = instance();
  const auto f = lonely::factor_witnesses(inst);
  for (auto _ : state) benchmark::DoNotOptimize(lonely::certify_pd_tiling(inst, f.w_A, f.w_B));
}
BENCHMARK(BM_CosetCheck)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_LiftPoints(benchmark::State& state) {
  const auto& inst = instance();
  const lift::CrtMap m(5, 17);
  const auto f = lonely::factor_witnesses(inst);
  const auto pd = lonely::certify_pd_tiling(inst, f.w_A, f.w_B);
  const auto P = lift::flatten(inst);
  const auto w = lift::flatten(m, pd.witness.h);
  VerificationReport ok{"external", 0, {}};
  const auto L = lift::periodize(P, w, 2, ok);
  for (auto _ : state) benchmark::DoNotOptimize(lift::verify_lift(L, SweepMode::sampled(100, 0)));
}
BENCHMARK(BM_LiftPoints)->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();
