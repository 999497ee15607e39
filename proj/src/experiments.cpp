#include "heaps/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <set>

#include "heaps/error.hpp"
#include "heaps/random.hpp"

namespace heaps {

namespace {

PreprocessedBatch run_batch(std::span<const Document> docs, const ProfileOptions& opts) {
  if (opts.execution == Execution::serial) return preprocess_batch_serial(docs, opts.preprocess);
  return preprocess_batch(docs, opts.preprocess, opts.threads);
}

int thread_count(const ProfileOptions& opts) {
  if (opts.execution == Execution::serial) return 1;
  return opts.threads > 0 ? opts.threads : omp_get_max_threads();
}

}  // namespace

CorpusProfile profile_source(const CorpusSource& source, const ProfileOptions& opts) {
  CorpusReader reader(source, opts.read);
  GrowthAccumulator acc(opts.sampling);
  CorpusProfile out;
  const std::size_t batch_size = std::max<std::size_t>(opts.batch_size, 1);

  std::vector<Document> batch;
  batch.reserve(batch_size);
  auto flush = [&] {
    PreprocessedBatch done = run_batch(batch, opts);
    out.dropped_documents += done.dropped;
    for (const auto& doc : done.docs) acc.add(doc);
    batch.clear();
  };
  while (auto doc = reader.next()) {
    batch.push_back(std::move(*doc));
    if (batch.size() == batch_size) flush();
  }
  if (!batch.empty()) flush();

  out.curve = acc.finish();
  out.skipped_records = reader.skipped();
  out.warnings = reader.warnings();
  return out;
}

ProfileResult profile_corpus(const CorpusSource& source, const ProfileOptions& opts) {
  ProfileResult result{profile_source(source, opts), {}};
  result.fit = fit_heaps(result.profile.curve, opts.fit);
  return result;
}

CorpusProfile profile_documents(std::span<const Document> docs, const ProfileOptions& opts) {
  PreprocessedBatch done = run_batch(docs, opts);
  CorpusProfile out;
  out.dropped_documents = done.dropped;
  out.curve = accumulate(done.docs, opts.sampling);
  return out;
}

ComparisonTable compare(std::span<const LabeledSource> sources, const ProfileOptions& opts) {
  if (sources.empty()) throw Error("compare needs at least one corpus");
  std::set<std::string> seen;
  for (const auto& s : sources) {
    if (!seen.insert(s.label).second) throw Error("duplicate corpus label: " + s.label);
  }

  ComparisonTable table;
  table.rows.resize(sources.size());
  // Rows run one after another; each row's preprocessing is parallel inside.
  for (std::size_t i = 0; i < sources.size(); ++i) {
    auto& row = table.rows[i];
    row.label = sources[i].label;
    try {
      ProfileResult r = profile_corpus(sources[i].source, opts);
      row.fit = r.fit;
      row.stats = r.profile.curve.stats;
    } catch (const std::exception& e) {
      row.fit.reset();
      row.stats.reset();
      row.error = e.what();
    }
  }
  return table;
}

ParameterSpread spread_of(std::span<const double> values) {
  ParameterSpread s;
  if (values.empty()) return s;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  s.range = s.max - s.min;
  if (values.size() >= 2) {
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                        static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

ShuffleReport shuffle_study(std::span<const TokenizedDoc> docs, std::size_t n_shuffles,
                            std::uint64_t seed, const ProfileOptions& opts) {
  const GrowthCurve base = accumulate(docs, opts.sampling);
  if (!base.stats) throw FitError("shuffle study: corpus has no surviving documents");

  ShuffleReport report;
  report.n_shuffles = n_shuffles;
  report.seed = seed;
  report.base_fit = fit_heaps(base, opts.fit);
  report.base_stats = *base.stats;
  report.beta_values.resize(n_shuffles);
  report.alpha_values.resize(n_shuffles);

  std::vector<std::optional<CorpusStats>> stats(n_shuffles);
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(n_shuffles);
  // Each shuffle owns its seed and its output slot, so results do not depend
  // on scheduling.
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count(opts))
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      std::vector<std::size_t> order(docs.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      Rng rng(seed + static_cast<std::uint64_t>(k));
      rng.shuffle(std::span<std::size_t>(order));

      GrowthAccumulator acc(opts.sampling);
      for (auto idx : order) acc.add(docs[idx]);
      const GrowthCurve curve = acc.finish();
      const HeapsFit fit = fit_heaps(curve, opts.fit);
      const auto slot = static_cast<std::size_t>(k);
      report.beta_values[slot] = fit.beta;
      report.alpha_values[slot] = fit.alpha;
      stats[slot] = curve.stats;
    } catch (...) {
#pragma omp critical(heaps_shuffle_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t k = 0; k < n_shuffles; ++k) {
    if (stats[k] != base.stats)
      throw Error("shuffle " + std::to_string(k) + " changed the corpus statistics");
  }
  report.beta_spread = spread_of(report.beta_values);
  report.alpha_spread = spread_of(report.alpha_values);
  return report;
}

ShuffleReport shuffle_study(const CorpusSource& source, std::size_t n_shuffles,
                            std::uint64_t seed, const ProfileOptions& opts) {
  const auto raw = read_all(source, opts.read);
  PreprocessedBatch docs = run_batch(raw, opts);
  return shuffle_study(docs.docs, n_shuffles, seed, opts);
}

}  // namespace heaps
