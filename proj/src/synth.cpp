#include "heaps/synth.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "heaps/corpus_io.hpp"
#include "heaps/error.hpp"

namespace heaps {

std::optional<SynthKind> parse_synth_kind(std::string_view name) {
  if (name == "zipf" || name == "zipf-iid") return SynthKind::zipf_iid;
  if (name == "monkey") return SynthKind::monkey;
  if (name == "exact-powerlaw" || name == "exact") return SynthKind::exact_powerlaw;
  return std::nullopt;
}

std::string_view to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::zipf_iid: return "zipf-iid";
    case SynthKind::monkey: return "monkey";
    case SynthKind::exact_powerlaw: return "exact-powerlaw";
  }
  return "?";
}

void SynthSpec::validate() const {
  if (n_docs < 1) throw SynthError("n_docs must be >= 1");
  switch (kind) {
    case SynthKind::zipf_iid:
      if (!(zipf_exponent > 0.0)) throw SynthError("zipf exponent must be > 0");
      if (vocab_bound && *vocab_bound < 1) throw SynthError("vocab bound must be >= 1");
      if (!vocab_bound && !(zipf_exponent > 1.0))
        throw SynthError("unbounded zipf needs exponent > 1 (rank distribution not normalizable)");
      if (doc_len < 1) throw SynthError("doc_len must be >= 1");
      break;
    case SynthKind::monkey:
      if (alphabet_size < 2 || alphabet_size > 26)
        throw SynthError("alphabet size must be in [2, 26]");
      if (!(space_prob > 0.0 && space_prob < 1.0))
        throw SynthError("space probability must be in (0, 1)");
      if (doc_len < 1) throw SynthError("doc_len must be >= 1");
      break;
    case SynthKind::exact_powerlaw:
      if (!(alpha > 0.0)) throw SynthError("alpha must be > 0");
      if (!(beta > 0.0 && beta <= 1.0)) throw SynthError("beta must be in (0, 1]");
      if (min_collection < 1) throw SynthError("min collection must be >= 1");
      if (n_docs > 1 && max_collection <= min_collection)
        throw SynthError("max collection must exceed min collection");
      if (n_docs > 1 && max_collection - min_collection < n_docs - 1)
        throw SynthError("collection range too narrow for the requested point count");
      break;
  }
}

double sample_zipf_rank(Rng& rng, double a) {
  // Devroye, rejection from the continuous Pareto envelope.
  const double am1 = a - 1.0;
  const double b = std::pow(2.0, am1);
  for (;;) {
    const double u = rng.uniform01_open_low();
    const double v = rng.uniform01_open_low();
    const double x = std::floor(std::pow(u, -1.0 / am1));
    if (!std::isfinite(x)) continue;
    const double t = std::pow(1.0 + 1.0 / x, am1);
    if (v * x * (t - 1.0) / (b - 1.0) <= t / b) return x;
  }
}

namespace {

std::string rank_token(double rank) {
  char buf[400];
  buf[0] = 'w';
  auto [end, ec] = std::to_chars(buf + 1, buf + sizeof buf, rank, std::chars_format::fixed, 0);
  return std::string(buf, end);
}

std::string rank_token(std::uint64_t rank) { return "w" + std::to_string(rank); }

/// Vose alias table over ranks 1..W with weights k^-a.
class AliasTable {
 public:
  AliasTable(std::uint64_t size, double a) : prob_(size), alias_(size) {
    std::vector<double> scaled(size);
    double total = 0.0;
    for (std::uint64_t k = 0; k < size; ++k) {
      scaled[k] = std::pow(static_cast<double>(k + 1), -a);
      total += scaled[k];
    }
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t k = 0; k < size; ++k) {
      scaled[k] *= static_cast<double>(size) / total;
      (scaled[k] < 1.0 ? small : large).push_back(k);
    }
    while (!small.empty() && !large.empty()) {
      const auto s = small.back();
      small.pop_back();
      const auto l = large.back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (auto k : large) prob_[k] = 1.0;
    for (auto k : small) prob_[k] = 1.0;
  }

  /// Rank in 1..W.
  std::uint64_t sample(Rng& rng) const {
    const auto col = rng.uniform_below(prob_.size());
    return (rng.uniform01() < prob_[col] ? col : alias_[col]) + 1;
  }

 private:
  std::vector<double> prob_;
  std::vector<std::uint64_t> alias_;
};

std::vector<std::uint64_t> geometric_collections(const SynthSpec& spec) {
  std::vector<std::uint64_t> out;
  if (spec.n_docs == 1) return {spec.max_collection};
  const double lo = std::log(static_cast<double>(spec.min_collection));
  const double hi = std::log(static_cast<double>(spec.max_collection));
  for (std::size_t i = 0; i < spec.n_docs; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(spec.n_docs - 1);
    auto n = static_cast<std::uint64_t>(std::llround(std::exp(lo + (hi - lo) * frac)));
    if (i == 0) n = spec.min_collection;
    if (i + 1 == spec.n_docs) n = spec.max_collection;
    if (!out.empty() && n <= out.back()) n = out.back() + 1;
    out.push_back(n);
  }
  return out;
}

}  // namespace

struct SynthCorpus::Impl {
  SynthSpec spec;
  Rng rng;
  std::optional<AliasTable> alias;
  std::size_t emitted = 0;
  std::vector<TokenizedDoc> exact;  // exact-powerlaw is materialized up front

  explicit Impl(const SynthSpec& s) : spec(s), rng(s.seed) {
    if (spec.kind == SynthKind::zipf_iid && spec.vocab_bound)
      alias.emplace(*spec.vocab_bound, spec.zipf_exponent);
    if (spec.kind == SynthKind::exact_powerlaw) exact = gen_exact_powerlaw_corpus(spec);
  }

  std::string next_token() {
    if (spec.kind == SynthKind::zipf_iid) {
      if (alias) return rank_token(alias->sample(rng));
      return rank_token(sample_zipf_rank(rng, spec.zipf_exponent));
    }
    std::string token;
    for (;;) {
      if (rng.uniform01() < spec.space_prob) {
        if (!token.empty()) return token;
        continue;
      }
      token.push_back(static_cast<char>('a' + rng.uniform_below(spec.alphabet_size)));
    }
  }
};

SynthCorpus::SynthCorpus(const SynthSpec& spec) {
  spec.validate();
  impl_ = std::make_unique<Impl>(spec);
}
SynthCorpus::~SynthCorpus() = default;
SynthCorpus::SynthCorpus(SynthCorpus&&) noexcept = default;
SynthCorpus& SynthCorpus::operator=(SynthCorpus&&) noexcept = default;

std::optional<TokenizedDoc> SynthCorpus::next() {
  auto& s = *impl_;
  if (s.emitted >= s.spec.n_docs) return std::nullopt;
  if (s.spec.kind == SynthKind::exact_powerlaw) return std::move(s.exact[s.emitted++]);
  TokenizedDoc doc;
  doc.id = std::to_string(s.emitted++);
  doc.tokens.reserve(s.spec.doc_len);
  for (std::size_t i = 0; i < s.spec.doc_len; ++i) doc.tokens.push_back(s.next_token());
  return doc;
}

std::vector<TokenizedDoc> generate_corpus(const SynthSpec& spec) {
  SynthCorpus corpus(spec);
  std::vector<TokenizedDoc> docs;
  docs.reserve(spec.n_docs);
  while (auto doc = corpus.next()) docs.push_back(std::move(*doc));
  return docs;
}

std::vector<TokenizedDoc> gen_zipf_corpus(const SynthSpec& spec) {
  if (spec.kind != SynthKind::zipf_iid) throw SynthError("spec kind is not zipf-iid");
  return generate_corpus(spec);
}

std::vector<TokenizedDoc> gen_monkey_corpus(const SynthSpec& spec) {
  if (spec.kind != SynthKind::monkey) throw SynthError("spec kind is not monkey");
  return generate_corpus(spec);
}

GrowthCurve gen_exact_powerlaw_points(const SynthSpec& spec) {
  if (spec.kind != SynthKind::exact_powerlaw) throw SynthError("spec kind is not exact-powerlaw");
  spec.validate();
  GrowthCurve curve;
  std::uint64_t prev_v = 0;
  for (auto n : geometric_collections(spec)) {
    auto v = static_cast<std::uint64_t>(
        std::llround(spec.alpha * std::pow(static_cast<double>(n), spec.beta)));
    v = std::max<std::uint64_t>({v, prev_v, 1});
    curve.points.push_back({n, v});
    prev_v = v;
  }
  const auto& last = curve.points.back();
  CorpusStats stats;
  stats.documents = curve.points.size();
  stats.collection = last.collection;
  stats.vocab = last.vocab;
  stats.avg_len = static_cast<double>(stats.collection) / static_cast<double>(stats.documents);
  // Every term occurs once except the filler term, which absorbs all repeats.
  stats.singletons = last.vocab - (last.collection > last.vocab ? 1 : 0);
  curve.stats = stats;
  return curve;
}

std::vector<TokenizedDoc> gen_exact_powerlaw_corpus(const SynthSpec& spec) {
  const GrowthCurve curve = gen_exact_powerlaw_points(spec);
  std::vector<TokenizedDoc> docs;
  docs.reserve(curve.points.size());
  GrowthPoint prev;
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    const auto len = p.collection - prev.collection;
    const auto fresh = p.vocab - prev.vocab;
    if (len < kMinDocumentTokens)
      throw SynthError("document " + std::to_string(i) + " would hold " + std::to_string(len) +
                       " tokens and be removed by the short-document filter");
    if (fresh > len)
      throw SynthError("document " + std::to_string(i) + " needs " + std::to_string(fresh) +
                       " new terms but holds only " + std::to_string(len) + " tokens");
    TokenizedDoc doc;
    doc.id = std::to_string(i);
    doc.tokens.reserve(len);
    for (auto k = prev.vocab; k < p.vocab; ++k) doc.tokens.push_back("t" + std::to_string(k));
    while (doc.tokens.size() < len) doc.tokens.emplace_back("t0");
    docs.push_back(std::move(doc));
    prev = p;
  }
  return docs;
}

void write_synth_jsonl(std::ostream& out, const SynthSpec& spec) {
  SynthCorpus corpus(spec);
  while (auto doc = corpus.next()) {
    std::string text;
    for (const auto& t : doc->tokens) {
      if (!text.empty()) text.push_back(' ');
      text += t;
    }
    write_jsonl_record(out, Document{doc->id, std::move(text)});
  }
}

}  // namespace heaps
