#include "heaps/growth.hpp"

#include <algorithm>
#include <cmath>

namespace heaps {

std::uint64_t CorpusStats::avg_len_rounded() const {
  return static_cast<std::uint64_t>(std::llround(avg_len));
}

std::vector<std::size_t> sample_indices(std::size_t n_docs, const CurveSampling& sampling) {
  std::vector<std::size_t> out;
  const std::size_t cap = sampling.max_points;
  if (cap == 0 || n_docs <= cap) {
    out.resize(n_docs);
    for (std::size_t i = 0; i < n_docs; ++i) out[i] = i;
    return out;
  }
  if (cap == 1) return {n_docs - 1};

  // Document numbers 1..n_docs spaced geometrically; collisions at the dense
  // start are pushed forward, and each index leaves room for the rest.
  out.reserve(cap);
  const double log_n = std::log(static_cast<double>(n_docs));
  std::size_t prev = 0;
  for (std::size_t j = 0; j < cap; ++j) {
    const double frac = static_cast<double>(j) / static_cast<double>(cap - 1);
    auto idx = static_cast<std::size_t>(std::llround(std::exp(log_n * frac))) - 1;
    if (j > 0) idx = std::max(idx, prev + 1);
    idx = std::min(idx, n_docs - cap + j);
    out.push_back(idx);
    prev = idx;
  }
  return out;
}

std::uint64_t singleton_count(const TermFrequencies& term_freqs) {
  return static_cast<std::uint64_t>(std::count_if(
      term_freqs.begin(), term_freqs.end(), [](const auto& kv) { return kv.second == 1; }));
}

GrowthAccumulator::GrowthAccumulator(CurveSampling sampling) : sampling_(sampling) {}

void GrowthAccumulator::add(std::span<const std::string> tokens) {
  for (const auto& t : tokens) ++freqs_[t];
  collection_ += tokens.size();
  points_.push_back({collection_, static_cast<std::uint64_t>(freqs_.size())});
}

GrowthCurve GrowthAccumulator::finish() const {
  GrowthCurve curve;
  if (points_.empty()) return curve;

  for (auto idx : sample_indices(points_.size(), sampling_)) curve.points.push_back(points_[idx]);

  CorpusStats stats;
  stats.documents = points_.size();
  stats.collection = collection_;
  stats.vocab = freqs_.size();
  stats.avg_len = static_cast<double>(collection_) / static_cast<double>(stats.documents);
  stats.singletons = singleton_count(freqs_);
  curve.stats = stats;
  return curve;
}

GrowthCurve accumulate(std::span<const TokenizedDoc> docs, CurveSampling sampling) {
  GrowthAccumulator acc(sampling);
  for (const auto& doc : docs) acc.add(doc);
  return acc.finish();
}

}  // namespace heaps
