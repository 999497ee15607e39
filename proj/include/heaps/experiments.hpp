#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heaps/corpus_io.hpp"
#include "heaps/growth.hpp"
#include "heaps/powerfit.hpp"
#include "heaps/preprocess.hpp"

namespace heaps {

enum class Execution { serial, parallel };

struct ProfileOptions {
  ReadOptions read;
  PreprocessOptions preprocess;
  CurveSampling sampling;
  FitOptions fit;
  Execution execution = Execution::parallel;
  int threads = 0;                 // 0: OpenMP default
  std::size_t batch_size = 4096;   // raw documents preprocessed per parallel batch
};

/// Growth curve and corpus bookkeeping, before fitting.
struct CorpusProfile {
  GrowthCurve curve;
  std::uint64_t dropped_documents = 0;  // removed by the short-document filter
  std::uint64_t skipped_records = 0;    // malformed input records
  std::vector<ReadWarning> warnings;
};

struct ProfileResult {
  CorpusProfile profile;
  HeapsFit fit;
};

/// Streams the source through preprocessing into the growth accumulator.
/// Memory is bounded by one preprocessing batch plus the vocabulary.
CorpusProfile profile_source(const CorpusSource& source, const ProfileOptions& opts = {});

/// profile_source followed by fit_heaps on the emitted curve.
ProfileResult profile_corpus(const CorpusSource& source, const ProfileOptions& opts = {});

/// Same pipeline over documents already in memory.
CorpusProfile profile_documents(std::span<const Document> docs, const ProfileOptions& opts = {});

struct LabeledSource {
  std::string label;
  CorpusSource source;
};

/// One comparison row. Exactly one of `result` and `error` is set.
struct ComparisonRow {
  std::string label;
  std::optional<HeapsFit> fit;
  std::optional<CorpusStats> stats;
  std::optional<std::string> error;

  bool ok() const { return !error.has_value(); }
  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  friend bool operator==(const ComparisonTable&, const ComparisonTable&) = default;
};

/// Profiles every source independently. A failing source yields an error
/// row; rows keep input order. Labels must be unique.
ComparisonTable compare(std::span<const LabeledSource> sources, const ProfileOptions& opts = {});

struct ParameterSpread {
  double min = 0.0;
  double max = 0.0;
  double range = 0.0;   // max - min
  double stddev = 0.0;  // sample standard deviation (n - 1); 0 when n < 2
};

ParameterSpread spread_of(std::span<const double> values);

struct ShuffleReport {
  std::size_t n_shuffles = 0;
  std::uint64_t seed = 0;
  HeapsFit base_fit;
  CorpusStats base_stats;
  std::vector<double> beta_values;
  std::vector<double> alpha_values;
  ParameterSpread beta_spread;
  ParameterSpread alpha_spread;
};

/// Refits the corpus under `n_shuffles` seeded uniform permutations of its
/// surviving documents. Shuffle k uses seed + k. Throws Error if any
/// shuffle's corpus statistics differ from the original order's.
ShuffleReport shuffle_study(std::span<const TokenizedDoc> docs, std::size_t n_shuffles,
                            std::uint64_t seed, const ProfileOptions& opts = {});

/// Loads and preprocesses the source into memory, then runs the study.
ShuffleReport shuffle_study(const CorpusSource& source, std::size_t n_shuffles,
                            std::uint64_t seed, const ProfileOptions& opts = {});

}  // namespace heaps
