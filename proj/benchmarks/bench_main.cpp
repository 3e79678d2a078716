#include <benchmark/benchmark.h>

#include <map>

#include "lociso/ball.hpp"
#include "lociso/census.hpp"
#include "lociso/generators.hpp"
#include "lociso/iso.hpp"
#include "lociso/rigidity.hpp"
#include "lociso/symmetry.hpp"

using namespace lociso;

namespace {

const Structure& sturmian_window(std::int64_t w) {
  static std::map<std::int64_t, Structure> cache;
  auto it = cache.find(w);
  if (it == cache.end())
    it = cache.emplace(w, gen_sturmian(parse_quadratic("sqrt(2)"), parse_quadratic("0"), w)).first;
  return it->second;
}

void BM_GenSturmian(benchmark::State& st) {
  const auto r = parse_quadratic("sqrt(2)"), s = parse_quadratic("1/4");
  for (auto _ : st) benchmark::DoNotOptimize(gen_sturmian(r, s, st.range(0)));
  st.SetItemsProcessed(st.iterations() * (2 * st.range(0) + 1));
}
BENCHMARK(BM_GenSturmian)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Census(benchmark::State& st) {
  const auto& m = sturmian_window(10000);
  const auto h = static_cast<std::uint32_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(census(m, h));
}
BENCHMARK(BM_Census)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_CensusGrid(benchmark::State& st) {
  auto m = gen_grid({101, 101}, false, GridColoring::checkerboard(2));
  const auto h = static_cast<std::uint32_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(census(m, h));
}
BENCHMARK(BM_CensusGrid)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Signature(benchmark::State& st) {
  auto m = gen_grid({41, 41}, false, GridColoring::checkerboard(2));
  const auto h = static_cast<std::uint32_t>(st.range(0));
  auto b = ball(m, m.require("0:0"), h);
  for (auto _ : st) benchmark::DoNotOptimize(signature(b));
}
BENCHMARK(BM_Signature)->DenseRange(1, 7, 2);

void BM_PointedIso(benchmark::State& st) {
  auto m = gen_kary_tree(2, AddressSequence::parse("tm", 1, 2), 30, 10);
  const auto h = static_cast<std::uint32_t>(st.range(0));
  auto a = ball(m, m.require("u0"), h), b = ball(m, m.require("u0"), h);
  for (auto _ : st) benchmark::DoNotOptimize(pointed_iso(a, b));
}
BENCHMARK(BM_PointedIso)->DenseRange(2, 8, 2);

void BM_FindSymmetries(benchmark::State& st) {
  auto m = gen_sturmian(parse_quadratic("sqrt(2)"), parse_quadratic("0"), 10000, SturmianOrientation::Symmetric);
  SymmetryOptions opt;
  opt.anchor = m.require("0");
  for (auto _ : st) benchmark::DoNotOptimize(find_symmetries(m, 4, static_cast<std::uint32_t>(st.range(0)), opt));
}
BENCHMARK(BM_FindSymmetries)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_LipCheck(benchmark::State& st) {
  const auto& m = sturmian_window(10000);
  for (auto _ : st) benchmark::DoNotOptimize(lip_check(m, static_cast<std::uint32_t>(st.range(0))));
}
BENCHMARK(BM_LipCheck)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_PropertyQ(benchmark::State& st) {
  const auto& m = sturmian_window(10000);
  for (auto _ : st) benchmark::DoNotOptimize(property_Q_check(m, 3, static_cast<std::uint32_t>(st.range(0))));
}
BENCHMARK(BM_PropertyQ)->Arg(5)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
