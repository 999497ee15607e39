#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heaps/growth.hpp"
#include "heaps/preprocess.hpp"
#include "heaps/random.hpp"

namespace heaps {

enum class SynthKind { zipf_iid, monkey, exact_powerlaw };

std::optional<SynthKind> parse_synth_kind(std::string_view name);
std::string_view to_string(SynthKind kind);

/// Parameters of a synthetic corpus. Only the fields of the selected kind
/// matter; the seed fully determines the output.
struct SynthSpec {
  SynthKind kind = SynthKind::zipf_iid;

  // zipf-iid: P(rank k) proportional to k^-a for k <= vocab_bound.
  double zipf_exponent = 1.5;
  std::optional<std::uint64_t> vocab_bound;  // empty: unbounded, needs a > 1

  // monkey: uniform letters from an alphabet of size 2..26, each step ends
  // the token with probability space_prob.
  unsigned alphabet_size = 26;
  double space_prob = 0.2;

  // exact-powerlaw: V = round(alpha * N^beta) at n_docs geometrically
  // spaced collection sizes from min_collection to max_collection.
  double alpha = 2.0;
  double beta = 0.5;
  std::uint64_t min_collection = 100;
  std::uint64_t max_collection = 1'000'000;

  std::size_t doc_len = 150;  // zipf-iid and monkey
  std::size_t n_docs = 1;
  std::uint64_t seed = 0;

  /// Throws SynthError on any invariant violation.
  void validate() const;
};

/// Sequential document stream for one spec. Documents are fixed-length
/// slices of the token stream with ids "0", "1", ...
class SynthCorpus {
 public:
  explicit SynthCorpus(const SynthSpec& spec);
  ~SynthCorpus();
  SynthCorpus(SynthCorpus&&) noexcept;
  SynthCorpus& operator=(SynthCorpus&&) noexcept;

  std::optional<TokenizedDoc> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// zipf-iid corpus, fully materialized.
std::vector<TokenizedDoc> gen_zipf_corpus(const SynthSpec& spec);
/// monkey corpus, fully materialized.
std::vector<TokenizedDoc> gen_monkey_corpus(const SynthSpec& spec);
/// Any kind, fully materialized.
std::vector<TokenizedDoc> generate_corpus(const SynthSpec& spec);

/// Growth points (N_i, round(alpha * N_i^beta)) for an exact-powerlaw spec.
/// The stats are those of the corpus gen_exact_powerlaw_corpus builds.
GrowthCurve gen_exact_powerlaw_points(const SynthSpec& spec);

/// A corpus whose growth curve is exactly gen_exact_powerlaw_points(spec).
/// Document i holds the V_i - V_{i-1} new terms plus repeats of the first
/// term. Throws SynthError if a document would be shorter than the short-doc
/// filter allows or would need more new terms than it has tokens.
std::vector<TokenizedDoc> gen_exact_powerlaw_corpus(const SynthSpec& spec);

/// Draws one rank from the unbounded Zipf distribution with exponent a > 1
/// by rejection. The rank is returned as a double since heavy tails can
/// exceed the 64-bit range.
double sample_zipf_rank(Rng& rng, double a);

/// Writes the documents of `spec` as JSONL (tokens joined by single spaces).
void write_synth_jsonl(std::ostream& out, const SynthSpec& spec);

}  // namespace heaps
