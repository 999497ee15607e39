#include <doctest.h>

#include <random>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "heaps/corpus_io.hpp"
#include "heaps/preprocess.hpp"

using namespace heaps;

namespace {

std::string utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

icu::UnicodeString ustr(const std::string& s) { return icu::UnicodeString::fromUTF8(s); }

std::string upper(const std::string& s) {
  auto u = ustr(s);
  u.toUpper(icu::Locale::getRoot());
  return utf8(u);
}

std::string nfd(const std::string& s) {
  UErrorCode st = U_ZERO_ERROR;
  return utf8(icu::Normalizer2::getNFDInstance(st)->normalize(ustr(s), st));
}

std::string nfc(const std::string& s) {
  UErrorCode st = U_ZERO_ERROR;
  return utf8(icu::Normalizer2::getNFCInstance(st)->normalize(ustr(s), st));
}

// Code points whose lowercase is stable under an uppercase round trip.
// Excluded on purpose: sharp s, micro sign, sigma forms, dotless i,
// ligatures; their uppercase maps to a different lowercase.
const std::vector<char32_t> kAlphabet = [] {
  std::vector<char32_t> v;
  for (char32_t c = 0x20; c < 0x7F; ++c) v.push_back(c);
  for (char32_t c : {0x09, 0x0A, 0xA0, 0x2009, 0x3000}) v.push_back(c);  // whitespace
  for (char32_t c = 0xC0; c <= 0xFE; ++c)
    if (c != 0xD7 && c != 0xDF && c != 0xF7) v.push_back(c);
  for (char32_t c : {0xA7, 0xB0, 0xB1, 0xA9, 0xBF, 0xAB, 0xBB}) v.push_back(c);
  for (char32_t c : {0x301, 0x308, 0x327, 0x323, 0x30A}) v.push_back(c);  // combining marks
  for (char32_t c = 0x391; c <= 0x3A9; ++c)
    if (c != 0x3A2 && c != 0x3A3) v.push_back(c);
  for (char32_t c = 0x410; c <= 0x44F; ++c) v.push_back(c);
  for (char32_t c : {0x212B, 0x2126, 0x130}) v.push_back(c);  // angstrom, ohm, dotted I
  for (char32_t c : {0x2013, 0x2014, 0x2018, 0x2019, 0x201C, 0x2026, 0x2212, 0x20AC, 0x2192, 0x221E})
    v.push_back(c);
  for (char32_t c : {0x4E2D, 0x6587, 0x3001, 0x3002, 0x1F600, 0x1F9EC}) v.push_back(c);
  return v;
}();

std::string random_text(std::mt19937_64& gen, std::size_t max_len = 40) {
  icu::UnicodeString s;
  const std::size_t len = gen() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) s.append(static_cast<UChar32>(kAlphabet[gen() % kAlphabet.size()]));
  return utf8(s);
}

}  // namespace

TEST_CASE("normalize_text examples") {
  CHECK(normalize_text("The quick, Brown FOX!") == "the quick  brown fox ");
  CHECK(normalize_text("Cafe\u0301") == "caf\u00e9");
  CHECK(normalize_text("Cafe\u0301") == normalize_text("Caf\u00e9"));
  // Expected value from an independent per-character category lookup.
  CHECK(normalize_text("p<0.05 (n=12)") == "p 0 05  n 12 ");
}

TEST_CASE("punctuation class choice") {
  CHECK(is_punctuation(U'-', PunctClass::punct));
  CHECK(is_punctuation(U'_', PunctClass::punct));
  CHECK_FALSE(is_punctuation(U'<', PunctClass::punct));
  CHECK(is_punctuation(U'<', PunctClass::punct_symbols));
  CHECK(is_punctuation(U'±', PunctClass::punct_symbols));
  CHECK(is_punctuation(U'\U0001F600', PunctClass::punct_symbols));
  CHECK_FALSE(is_punctuation(U'7'));
  CHECK_FALSE(is_punctuation(U'é'));
  CHECK(normalize_text("p<0.05", PunctClass::punct) == "p<0 05");
  CHECK(normalize_text("state-of-the-art") == "state of the art");
}

TEST_CASE("punctuation predicate agrees with a brute-force category scan") {
  for (UChar32 cp = 0; cp < 0x3000; ++cp) {
    const int8_t cat = u_charType(cp);
    const bool p = cat == U_DASH_PUNCTUATION || cat == U_START_PUNCTUATION ||
                   cat == U_END_PUNCTUATION || cat == U_CONNECTOR_PUNCTUATION ||
                   cat == U_OTHER_PUNCTUATION || cat == U_INITIAL_PUNCTUATION ||
                   cat == U_FINAL_PUNCTUATION;
    const bool s = cat == U_MATH_SYMBOL || cat == U_CURRENCY_SYMBOL ||
                   cat == U_MODIFIER_SYMBOL || cat == U_OTHER_SYMBOL;
    REQUIRE(is_punctuation(char32_t(cp), PunctClass::punct) == p);
    REQUIRE(is_punctuation(char32_t(cp), PunctClass::punct_symbols) == (p || s));
  }
}

TEST_CASE("tokenize examples") {
  CHECK(tokenize("the quick  brown fox ") == std::vector<std::string>{"the", "quick", "brown", "fox"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("   \t\n ").empty());
  CHECK(tokenize("a b a") == std::vector<std::string>{"a", "b", "a"});
  CHECK(tokenize("x y　z") == std::vector<std::string>{"x", "y", "z"});
}

TEST_CASE("filter boundary at five words") {
  std::uint64_t dropped = 0;
  auto doc = [](std::size_t n) { return TokenizedDoc{"d", std::vector<std::string>(n, "w")}; };
  CHECK_FALSE(filter_short(doc(5), dropped).has_value());
  CHECK(dropped == 1);
  auto kept = filter_short(doc(6), dropped);
  REQUIRE(kept.has_value());
  CHECK(*kept == doc(6));
  CHECK_FALSE(filter_short(doc(0), dropped).has_value());
  CHECK(dropped == 2);

  ShortDocFilter f;
  for (std::size_t n = 0; n < 12; ++n) CHECK(f(doc(n)).has_value() == (n >= 6));
  CHECK(f.dropped() == 6);
}

TEST_CASE("filter counts words after the full pipeline") {
  // Six tokens only once punctuation splits the hyphenated word.
  auto batch = preprocess_batch_serial(std::vector<Document>{{"x", "one two three four five-six"},
                                                             {"y", "one two three four five"},
                                                             {"z", "!!! ... ,,, ;;; ??? :::"}});
  REQUIRE(batch.docs.size() == 1);
  CHECK(batch.docs[0].id == "x");
  CHECK(batch.dropped == 2);
  auto unfiltered = preprocess_batch_serial(std::vector<Document>{{"y", "a b"}}, {.filter_short = false});
  CHECK(unfiltered.docs.size() == 1);
}

TEST_CASE("case mapping exceptions are documented behaviour") {
  // Full lowercase mapping keeps sharp s; its uppercase is "SS".
  CHECK(normalize_text("Straße") == "straße");
  CHECK(normalize_text(upper("Straße")) == "strasse");
  CHECK(normalize_text("ΟΔΟΣ") == "οδος");
}

TEST_CASE("property: idempotence, case-insensitivity, canonical equivalence") {
  std::mt19937_64 gen(20240601);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::string x = random_text(gen);
    const std::string nx = normalize_text(x);
    INFO("input: " << x);
    REQUIRE(normalize_text(nx) == nx);
    REQUIRE(normalize_text(upper(x)) == nx);
    REQUIRE(nfc(nx) == nx);
    REQUIRE(tokenize(normalize_text(nfd(x))) == tokenize(nx));
    REQUIRE(tokenize(normalize_text(nfc(x))) == tokenize(nx));
    for (const auto& tok : tokenize(nx)) {
      REQUIRE_FALSE(tok.empty());
      auto u = ustr(tok);
      for (int32_t i = 0; i < u.length(); i = u.moveIndex32(i, 1)) {
        const UChar32 cp = u.char32At(i);
        REQUIRE_FALSE(is_punctuation(char32_t(cp)));
        REQUIRE_FALSE(u_isUWhiteSpace(cp));
      }
      auto lowered = ustr(tok);
      lowered.toLower(icu::Locale::getRoot());
      REQUIRE(utf8(lowered) == tok);
    }
  }
}

TEST_CASE("combining mark order does not matter") {
  CHECK(normalize_text("e\u0327\u0301") == normalize_text("e\u0301\u0327"));
  CHECK(normalize_text("A\u030A") == normalize_text("\u00e5"));
  CHECK(normalize_text("\u212B") == "\u00e5");
}

TEST_CASE("ill-formed UTF-8 does not crash") {
  const std::string bad = "abc\xff\xfe def";
  CHECK(tokenize(normalize_text(bad)) == std::vector<std::string>{"abc", "def"});
}
