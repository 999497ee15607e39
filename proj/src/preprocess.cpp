#include "heaps/preprocess.hpp"

#include <omp.h>

#include <exception>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "heaps/corpus_io.hpp"
#include "heaps/error.hpp"

namespace heaps {

std::optional<PunctClass> parse_punct_class(std::string_view name) {
  if (name == "punct") return PunctClass::punct;
  if (name == "punct+symbols") return PunctClass::punct_symbols;
  return std::nullopt;
}

std::string_view to_string(PunctClass cls) {
  return cls == PunctClass::punct ? "punct" : "punct+symbols";
}

bool is_punctuation(char32_t cp, PunctClass cls) {
  const auto mask = U_GET_GC_MASK(static_cast<UChar32>(cp));
  if (mask & U_GC_P_MASK) return true;
  return cls == PunctClass::punct_symbols && (mask & U_GC_S_MASK) != 0;
}

namespace {

const icu::Normalizer2& nfc() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw Error(std::string("ICU NFC unavailable: ") + u_errorName(status));
    return n;
  }();
  return *instance;
}

icu::UnicodeString to_nfc(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  if (nfc().isNormalized(s, status) && U_SUCCESS(status)) return s;
  status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc().normalize(s, status);
  if (U_FAILURE(status)) throw Error(std::string("NFC normalization failed: ") + u_errorName(status));
  return out;
}

void append_utf8(std::string& out, UChar32 cp) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  U8_APPEND_UNSAFE(buf, len, cp);
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

std::string normalize_text(std::string_view raw, PunctClass cls) {
  icu::UnicodeString text =
      icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  text = to_nfc(text);
  text.toLower(icu::Locale::getRoot());
  // Full lowercase mappings can leave a composable pair behind.
  text = to_nfc(text);

  std::string out;
  out.reserve(raw.size());
  for (int32_t i = 0; i < text.length();) {
    const UChar32 cp = text.char32At(i);
    i += U16_LENGTH(cp);
    if (is_punctuation(static_cast<char32_t>(cp), cls))
      out.push_back(' ');
    else
      append_utf8(out, cp);
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view normalized) {
  std::vector<std::string> tokens;
  const auto* s = reinterpret_cast<const uint8_t*>(normalized.data());
  const auto len = static_cast<int32_t>(normalized.size());
  int32_t start = -1;
  for (int32_t i = 0; i < len;) {
    const int32_t at = i;
    UChar32 cp = 0;
    U8_NEXT(s, i, len, cp);
    if (cp >= 0 && u_isUWhiteSpace(cp)) {
      if (start >= 0) {
        tokens.emplace_back(normalized.substr(start, at - start));
        start = -1;
      }
    } else if (start < 0) {
      start = at;
    }
  }
  if (start >= 0) tokens.emplace_back(normalized.substr(start));
  return tokens;
}

std::optional<TokenizedDoc> ShortDocFilter::operator()(TokenizedDoc doc) {
  return filter_short(std::move(doc), dropped_);
}

std::optional<TokenizedDoc> filter_short(TokenizedDoc doc, std::uint64_t& dropped) {
  if (doc.length() < kMinDocumentTokens) {
    ++dropped;
    return std::nullopt;
  }
  return doc;
}

TokenizedDoc preprocess_document(const Document& doc, PunctClass cls) {
  return TokenizedDoc{doc.id, tokenize(normalize_text(doc.text, cls))};
}

namespace {

PreprocessedBatch compact(std::vector<TokenizedDoc>&& all, const PreprocessOptions& opts) {
  PreprocessedBatch batch;
  batch.docs.reserve(all.size());
  for (auto& doc : all) {
    if (!opts.filter_short) {
      batch.docs.push_back(std::move(doc));
    } else if (auto kept = filter_short(std::move(doc), batch.dropped)) {
      batch.docs.push_back(std::move(*kept));
    }
  }
  return batch;
}

}  // namespace

PreprocessedBatch preprocess_batch_serial(std::span<const Document> docs,
                                          const PreprocessOptions& opts) {
  std::vector<TokenizedDoc> all;
  all.reserve(docs.size());
  for (const auto& doc : docs) all.push_back(preprocess_document(doc, opts.punct_class));
  return compact(std::move(all), opts);
}

PreprocessedBatch preprocess_batch(std::span<const Document> docs, const PreprocessOptions& opts,
                                   int threads) {
  const auto n = static_cast<std::ptrdiff_t>(docs.size());
  std::vector<TokenizedDoc> all(docs.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 32) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      all[static_cast<std::size_t>(i)] =
          preprocess_document(docs[static_cast<std::size_t>(i)], opts.punct_class);
    } catch (...) {
#pragma omp critical(heaps_preprocess_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return compact(std::move(all), opts);
}

}  // namespace heaps
