#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace heaps {

struct Document;

/// Which Unicode general categories count as punctuation and are replaced
/// by a space during normalization.
enum class PunctClass {
  punct,          // P*
  punct_symbols,  // P* and S*
};

std::optional<PunctClass> parse_punct_class(std::string_view name);
std::string_view to_string(PunctClass cls);

/// Minimum token count for a document to survive filtering. Documents with
/// five words or fewer are dropped.
inline constexpr std::size_t kMinDocumentTokens = 6;

struct PreprocessOptions {
  PunctClass punct_class = PunctClass::punct_symbols;
  bool filter_short = true;
};

struct TokenizedDoc {
  std::string id;
  std::vector<std::string> tokens;

  std::size_t length() const { return tokens.size(); }

  friend bool operator==(const TokenizedDoc&, const TokenizedDoc&) = default;
};

/// True when `cp` belongs to the removal class.
bool is_punctuation(char32_t cp, PunctClass cls = PunctClass::punct_symbols);

/// NFC, then full lowercase mapping, then every punctuation code point
/// replaced by one space. Input must be UTF-8; ill-formed sequences become
/// U+FFFD. Idempotent.
std::string normalize_text(std::string_view raw, PunctClass cls = PunctClass::punct_symbols);

/// Splits on runs of Unicode White_Space. Never yields empty tokens.
std::vector<std::string> tokenize(std::string_view normalized);

/// Drops documents with fewer than kMinDocumentTokens tokens, counting them.
class ShortDocFilter {
 public:
  std::optional<TokenizedDoc> operator()(TokenizedDoc doc);
  std::uint64_t dropped() const { return dropped_; }

 private:
  std::uint64_t dropped_ = 0;
};

std::optional<TokenizedDoc> filter_short(TokenizedDoc doc, std::uint64_t& dropped);

/// normalize_text + tokenize for one document; never filters.
TokenizedDoc preprocess_document(const Document& doc, PunctClass cls);

/// Result of preprocessing a batch: surviving documents in input order.
struct PreprocessedBatch {
  std::vector<TokenizedDoc> docs;
  std::uint64_t dropped = 0;
};

/// Serial reference kernel.
PreprocessedBatch preprocess_batch_serial(std::span<const Document> docs,
                                          const PreprocessOptions& opts = {});

/// OpenMP kernel. Output is identical to preprocess_batch_serial.
/// `threads == 0` uses the OpenMP default.
PreprocessedBatch preprocess_batch(std::span<const Document> docs,
                                   const PreprocessOptions& opts = {}, int threads = 0);

}  // namespace heaps
