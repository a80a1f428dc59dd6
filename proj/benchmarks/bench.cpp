#include <benchmark/benchmark.h>

#include <cmath>
#include <string>

#include "revana/classifier.hpp"
#include "revana/corpus.hpp"
#include "revana/features.hpp"
#include "revana/mic.hpp"
#include "revana/rng.hpp"
#include "revana/stats.hpp"
#include "revana/svm.hpp"
#include "revana/synth.hpp"

namespace {

revana::Corpus demo_corpus(int n_reviews) {
  revana::SynthOptions opt;
  opt.seed = 7;
  opt.n_reviews = n_reviews;
  return revana::synth_corpus(opt);
}

void BM_TokenizeFallback(benchmark::State& state) {
  const std::string text =
      "The room was spotless 服务 很 好 and the breakfast arrived on time";
  for (auto _ : state)
    benchmark::DoNotOptimize(revana::tokenize_fallback(text));
}
BENCHMARK(BM_TokenizeFallback);

void BM_CountOccurrences(benchmark::State& state) {
  const auto corpus = demo_corpus(static_cast<int>(state.range(0)));
  const auto docs = revana::labeled_sentences(corpus);
  for (auto _ : state) {
    auto table = revana::count_occurrences(docs);
    revana::compute_entropies(table);
    benchmark::DoNotOptimize(table);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(docs.size()));
}
BENCHMARK(BM_CountOccurrences)->Arg(100)->Arg(400);

void BM_TrainSvm(benchmark::State& state) {
  const auto corpus = demo_corpus(static_cast<int>(state.range(0)));
  const auto docs = revana::labeled_sentences(corpus);
  auto counts = revana::count_occurrences(docs);
  revana::compute_entropies(counts);
  const auto table = revana::select_keywords(counts, 1.5, 1.5);
  const auto words = table.combined();
  const auto xs = revana::vectorize_all(docs, words);
  const auto ys = revana::labels_of(docs);
  revana::SvmOptions opt;
  for (auto _ : state)
    benchmark::DoNotOptimize(revana::train_svm(xs, ys, opt));
}
BENCHMARK(BM_TrainSvm)->Arg(100)->Arg(400);

void BM_Kendall(benchmark::State& state) {
  revana::Rng rng(3);
  revana::PairedSample s;
  for (long i = 0; i < state.range(0); ++i) {
    s.x.push_back(rng.uniform_real());
    s.y.push_back(rng.uniform_real());
  }
  for (auto _ : state) benchmark::DoNotOptimize(revana::kendall(s));
}
BENCHMARK(BM_Kendall)->Arg(1000)->Arg(10000);

void BM_Mic(benchmark::State& state) {
  revana::Rng rng(11);
  revana::PairedSample s;
  for (long i = 0; i < state.range(0); ++i) {
    const double x = rng.uniform_real(-1.0, 1.0);
    s.x.push_back(x);
    s.y.push_back(std::sin(4.0 * x) + rng.normal(0.0, 0.1));
  }
  for (auto _ : state) benchmark::DoNotOptimize(revana::mic(s));
}
BENCHMARK(BM_Mic)->Arg(100)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
