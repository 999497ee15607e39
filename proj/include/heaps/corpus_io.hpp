#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heaps/growth.hpp"

namespace heaps {

struct Document {
  std::string id;
  std::string text;

  friend bool operator==(const Document&, const Document&) = default;
};

enum class CorpusFormat { jsonl, text_lines, text_dir };

std::optional<CorpusFormat> parse_corpus_format(std::string_view name);
std::string_view to_string(CorpusFormat format);

struct CorpusSource {
  CorpusFormat format = CorpusFormat::jsonl;
  std::filesystem::path location;

  /// Directory -> text-dir, *.jsonl / *.json -> jsonl, anything else -> text-lines.
  static CorpusSource detect(const std::filesystem::path& location);
};

struct ReadOptions {
  /// Abort on the first malformed record instead of skipping it.
  bool strict = false;
};

struct ReadWarning {
  std::uint64_t line = 0;  // 1-based
  std::string message;
};

/// Lazy, sequential reader over one corpus source. Documents are produced
/// in stored order; only the current record is held in memory.
///
/// JSONL records are objects with a required string "text" and an optional
/// non-empty string "id" (zero-based record ordinal when absent). Blank lines
/// are ignored. text-lines uses one document per line with the zero-based
/// line ordinal as id. text-dir reads every regular *.txt file in
/// lexicographic filename order, one document per file, id = filename.
class CorpusReader {
 public:
  explicit CorpusReader(CorpusSource source, ReadOptions opts = {});

  std::optional<Document> next();

  /// Malformed records skipped so far (non-strict mode).
  std::uint64_t skipped() const { return skipped_; }
  /// First few warnings, capped to keep memory bounded.
  const std::vector<ReadWarning>& warnings() const { return warnings_; }

  static constexpr std::size_t kMaxStoredWarnings = 64;

 private:
  std::optional<Document> next_jsonl();
  std::optional<Document> next_line();
  std::optional<Document> next_file();
  void malformed(std::string message);

  CorpusSource source_;
  ReadOptions opts_;
  std::ifstream in_;
  std::vector<std::filesystem::path> files_;
  std::size_t file_pos_ = 0;
  std::uint64_t line_no_ = 0;
  std::uint64_t ordinal_ = 0;
  std::uint64_t skipped_ = 0;
  std::vector<ReadWarning> warnings_;
};

/// Convenience for bounded-size studies: reads the whole source.
std::vector<Document> read_all(const CorpusSource& source, ReadOptions opts = {});

/// One JSONL record, newline-terminated.
void write_jsonl_record(std::ostream& out, const Document& doc);

enum class CurveFormat { csv, json };

std::optional<CurveFormat> parse_curve_format(std::string_view name);

/// CSV: header `N,V` then one row per point (stats are not representable).
/// JSON: {"points": [[N,V],...], "stats": {d, vocab, collection, avg_len,
/// singletons} | null}.
std::string write_curve(const GrowthCurve& curve, CurveFormat format);
GrowthCurve parse_curve(std::string_view bytes, CurveFormat format);

/// Reads a curve file, choosing the format by extension (.csv or JSON).
GrowthCurve load_curve(const std::filesystem::path& path);

}  // namespace heaps
