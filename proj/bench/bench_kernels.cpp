// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "heaps/corpus_io.hpp"
#include "heaps/experiments.hpp"
#include "heaps/preprocess.hpp"
#include "heaps/synth.hpp"

namespace {

using namespace heaps;

const std::vector<Document>& raw_corpus() {
  static const std::vector<Document> docs = [] {
    SynthSpec s;
    s.zipf_exponent = 1.6;
    s.n_docs = 4'000;
    s.doc_len = 170;
    s.seed = 1;
    std::vector<Document> out;
    SynthCorpus corpus(s);
    int i = 0;
    while (auto doc = corpus.next()) {
      std::string text;
      for (const auto& t : doc->tokens) {
        // Mixed case and punctuation so every normalization step has work.
        text += (i++ % 7 == 0) ? "Café-" : "";
        text += t;
        text += (i % 11 == 0) ? ", " : " ";
      }
      out.push_back({doc->id, std::move(text)});
    }
    return out;
  }();
  return docs;
}

const std::vector<TokenizedDoc>& tokenized_corpus() {
  static const std::vector<TokenizedDoc> docs = preprocess_batch_serial(raw_corpus()).docs;
  return docs;
}

void BM_PreprocessSerial(benchmark::State& state) {
  const auto& docs = raw_corpus();
  for (auto _ : state) benchmark::DoNotOptimize(preprocess_batch_serial(docs));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(docs.size()));
}

void BM_PreprocessParallel(benchmark::State& state) {
  const auto& docs = raw_corpus();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(preprocess_batch(docs, {}, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(docs.size()));
}

void BM_ShuffleSerial(benchmark::State& state) {
  ProfileOptions opts;
  opts.execution = Execution::serial;
  for (auto _ : state) benchmark::DoNotOptimize(shuffle_study(tokenized_corpus(), 8, 7, opts));
}

void BM_ShuffleParallel(benchmark::State& state) {
  ProfileOptions opts;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shuffle_study(tokenized_corpus(), 8, 7, opts));
}

void thread_args(benchmark::internal::Benchmark* b) {
  for (int t = 1; t <= omp_get_num_procs(); t *= 2) b->Arg(t);
}

}  // namespace

BENCHMARK(BM_PreprocessSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreprocessParallel)->Apply(thread_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ShuffleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShuffleParallel)->Apply(thread_args)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
