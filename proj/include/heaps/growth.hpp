#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "heaps/preprocess.hpp"

namespace heaps {

/// One point of a vocabulary growth curve: after i documents the corpus
/// holds `collection` terms (with multiplicity) of which `vocab` are distinct.
struct GrowthPoint {
  std::uint64_t collection = 0;
  std::uint64_t vocab = 0;

  friend bool operator==(const GrowthPoint&, const GrowthPoint&) = default;
};

/// Final-state statistics of a corpus.
struct CorpusStats {
  std::uint64_t documents = 0;    // d
  std::uint64_t collection = 0;   // N_d
  std::uint64_t vocab = 0;        // V(N_d)
  double avg_len = 0.0;           // N_d / d, full precision
  std::uint64_t singletons = 0;   // w1

  /// Average document length as shown in tables (nearest integer).
  std::uint64_t avg_len_rounded() const;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

/// Ordered growth points plus corpus statistics. `stats` is empty exactly
/// when no document was accumulated.
struct GrowthCurve {
  std::vector<GrowthPoint> points;
  std::optional<CorpusStats> stats;

  friend bool operator==(const GrowthCurve&, const GrowthCurve&) = default;
};

/// How many curve points to keep. `max_points == 0` keeps every document.
/// Otherwise, when the corpus has more than `max_points` documents, a
/// geometrically spaced subset of exactly `max_points` points is kept; the
/// first and final documents are always included.
struct CurveSampling {
  std::size_t max_points = 10'000;

  static CurveSampling all() { return {0}; }
};

/// Zero-based indices of the documents retained out of `n_docs` under
/// `sampling`. Strictly increasing; includes 0 and n_docs - 1 when n_docs > 0.
std::vector<std::size_t> sample_indices(std::size_t n_docs, const CurveSampling& sampling);

using TermFrequencies = std::unordered_map<std::string, std::uint64_t>;

/// |{t : freq(t) == 1}|
std::uint64_t singleton_count(const TermFrequencies& term_freqs);

/// Streaming accumulator for the growth curve. Documents must be added in
/// corpus order. Memory is O(vocabulary) for the term map plus 16 bytes per
/// document for the raw point list, which is thinned on finish().
class GrowthAccumulator {
 public:
  explicit GrowthAccumulator(CurveSampling sampling = {});

  void add(std::span<const std::string> tokens);
  void add(const TokenizedDoc& doc) { add(doc.tokens); }

  std::uint64_t documents() const { return points_.size(); }
  std::uint64_t collection() const { return collection_; }
  std::uint64_t vocab() const { return freqs_.size(); }
  const TermFrequencies& term_frequencies() const { return freqs_; }

  /// Curve (sampled) and exact final stats. The accumulator can keep
  /// receiving documents afterwards.
  GrowthCurve finish() const;

 private:
  CurveSampling sampling_;
  TermFrequencies freqs_;
  std::uint64_t collection_ = 0;
  std::vector<GrowthPoint> points_;
};

/// Accumulates an in-memory sequence of documents.
GrowthCurve accumulate(std::span<const TokenizedDoc> docs, CurveSampling sampling = {});

}  // namespace heaps
