#include "bsw/construct.hpp"
#include "bsw/spec_io.hpp"
#include "bsw/testseq.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

using namespace bsw;

namespace {

  std::string fx(char const* name) {
    return (std::filesystem::path(BSW_FIXTURE_DIR) / name).string();
  }

  std::vector<Letter> raw_word(std::size_t len, int rank, unsigned seed) {
    std::mt19937                       rng(seed);
    std::uniform_int_distribution<int> g(1, rank), s(0, 1);
    std::vector<Letter>                v(len);
    for (auto& x : v) {
      x = g(rng) * (s(rng) ? 1 : -1);
    }
    return v;
  }

  void BM_FreeReduce(benchmark::State& state) {
    auto raw = raw_word(static_cast<std::size_t>(state.range(0)), 2, 1);
    for (auto _ : state) {
      benchmark::DoNotOptimize(Word(raw));
    }
    state.SetComplexityN(state.range(0));
  }
  BENCHMARK(BM_FreeReduce)->RangeMultiplier(4)->Range(64, 1 << 14)->Complexity();

  void BM_Hermite(benchmark::State& state) {
    auto         n = static_cast<std::size_t>(state.range(0));
    std::mt19937 rng(7);
    IntMatrix    m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = static_cast<long long>(rng() % 11) - 5;
      }
    }
    for (auto _ : state) {
      benchmark::DoNotOptimize(hnf(m));
    }
  }
  BENCHMARK(BM_Hermite)->DenseRange(2, 8, 2);

  void BM_Smith(benchmark::State& state) {
    auto         n = static_cast<std::size_t>(state.range(0));
    std::mt19937 rng(11);
    IntMatrix    m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = static_cast<long long>(rng() % 11) - 5;
      }
    }
    for (auto _ : state) {
      benchmark::DoNotOptimize(snf(m));
    }
  }
  BENCHMARK(BM_Smith)->DenseRange(2, 8, 2);

  void BM_PieceRatio(benchmark::State& state) {
    auto fam = gen_smallcanc_family(3, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
      benchmark::DoNotOptimize(max_piece_ratio(fam));
    }
  }
  BENCHMARK(BM_PieceRatio)->Arg(2)->Arg(10)->Arg(20)->Arg(50);

  void BM_TwinTower(benchmark::State& state) {
    auto spec = parse_tower_spec(read_text_file(fx("nonabelian.json")));
    for (auto _ : state) {
      benchmark::DoNotOptimize(twin_tower(spec.tower, spec.twin_names));
    }
  }
  BENCHMARK(BM_TwinTower);

  void BM_WordVerdict(benchmark::State& state) {
    Tower t         = parse_tower_spec(read_text_file(fx("closure.json"))).resolved();
    auto  witnesses = t.witnesses();
    Word  w(raw_word(static_cast<std::size_t>(state.range(0)), static_cast<int>(t.names().rank()), 3));
    for (auto _ : state) {
      benchmark::DoNotOptimize(word_verdict(t.structure(), w, witnesses));
    }
  }
  BENCHMARK(BM_WordVerdict)->Arg(6)->Arg(24)->Arg(96);

}  // namespace

BENCHMARK_MAIN();
