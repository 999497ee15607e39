#include "heaps/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "heaps/error.hpp"

namespace heaps {

using nlohmann::json;
namespace fs = std::filesystem;

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::jsonl;
  if (name == "text-lines") return CorpusFormat::text_lines;
  if (name == "text-dir") return CorpusFormat::text_dir;
  return std::nullopt;
}

std::string_view to_string(CorpusFormat format) {
  switch (format) {
    case CorpusFormat::jsonl: return "jsonl";
    case CorpusFormat::text_lines: return "text-lines";
    case CorpusFormat::text_dir: return "text-dir";
  }
  return "?";
}

CorpusSource CorpusSource::detect(const fs::path& location) {
  std::error_code ec;
  if (fs::is_directory(location, ec)) return {CorpusFormat::text_dir, location};
  auto ext = location.extension().string();
  if (ext == ".jsonl" || ext == ".json") return {CorpusFormat::jsonl, location};
  return {CorpusFormat::text_lines, location};
}

CorpusReader::CorpusReader(CorpusSource source, ReadOptions opts)
    : source_(std::move(source)), opts_(opts) {
  const auto& loc = source_.location;
  std::error_code ec;
  if (source_.format == CorpusFormat::text_dir) {
    if (!fs::is_directory(loc, ec))
      throw CorpusError("not a directory: " + loc.string());
    for (const auto& entry : fs::directory_iterator(loc)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt")
        files_.push_back(entry.path());
    }
    std::sort(files_.begin(), files_.end(), [](const fs::path& a, const fs::path& b) {
      return a.filename().string() < b.filename().string();
    });
    return;
  }
  if (fs::is_directory(loc, ec))
    throw CorpusError("expected a file but got a directory: " + loc.string());
  in_.open(loc, std::ios::binary);
  if (!in_) throw CorpusError("cannot open corpus: " + loc.string());
}

std::optional<Document> CorpusReader::next() {
  switch (source_.format) {
    case CorpusFormat::jsonl: return next_jsonl();
    case CorpusFormat::text_lines: return next_line();
    case CorpusFormat::text_dir: return next_file();
  }
  return std::nullopt;
}

void CorpusReader::malformed(std::string message) {
  std::string where = source_.location.string() + ":" + std::to_string(line_no_) + ": ";
  if (opts_.strict) throw CorpusError(where + message);
  ++skipped_;
  if (warnings_.size() < kMaxStoredWarnings)
    warnings_.push_back({line_no_, std::move(message)});
}

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  });
}

}  // namespace

std::optional<Document> CorpusReader::next_jsonl() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    strip_cr(line);
    if (is_blank(line)) continue;
    const std::uint64_t ordinal = ordinal_++;

    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      malformed(std::string("invalid JSON: ") + e.what());
      continue;
    }
    if (!rec.is_object()) {
      malformed("record is not a JSON object");
      continue;
    }
    auto text = rec.find("text");
    if (text == rec.end() || !text->is_string()) {
      malformed("missing or non-string \"text\"");
      continue;
    }
    Document doc;
    auto id = rec.find("id");
    if (id == rec.end() || id->is_null()) {
      doc.id = std::to_string(ordinal);
    } else if (id->is_string() && !id->get_ref<const std::string&>().empty()) {
      doc.id = id->get<std::string>();
    } else {
      malformed("\"id\" must be a non-empty string");
      continue;
    }
    doc.text = text->get<std::string>();
    return doc;
  }
  if (in_.bad()) throw CorpusError("read error: " + source_.location.string());
  return std::nullopt;
}

std::optional<Document> CorpusReader::next_line() {
  std::string line;
  if (!std::getline(in_, line)) {
    if (in_.bad()) throw CorpusError("read error: " + source_.location.string());
    return std::nullopt;
  }
  ++line_no_;
  strip_cr(line);
  return Document{std::to_string(ordinal_++), std::move(line)};
}

std::optional<Document> CorpusReader::next_file() {
  if (file_pos_ >= files_.size()) return std::nullopt;
  const fs::path& path = files_[file_pos_++];
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CorpusError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return Document{path.filename().string(), std::move(ss).str()};
}

std::vector<Document> read_all(const CorpusSource& source, ReadOptions opts) {
  CorpusReader reader(source, opts);
  std::vector<Document> docs;
  while (auto doc = reader.next()) docs.push_back(std::move(*doc));
  return docs;
}

void write_jsonl_record(std::ostream& out, const Document& doc) {
  json rec = {{"id", doc.id}, {"text", doc.text}};
  out << rec.dump() << '\n';
}

std::optional<CurveFormat> parse_curve_format(std::string_view name) {
  if (name == "csv") return CurveFormat::csv;
  if (name == "json") return CurveFormat::json;
  return std::nullopt;
}

namespace {

json stats_to_json(const std::optional<CorpusStats>& stats) {
  if (!stats) return nullptr;
  return {
      {"d", stats->documents},
      {"vocab", stats->vocab},
      {"collection", stats->collection},
      {"avg_len", stats->avg_len},
      {"singletons", stats->singletons},
  };
}

std::optional<CorpusStats> stats_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  CorpusStats s;
  s.documents = j.at("d").get<std::uint64_t>();
  s.vocab = j.at("vocab").get<std::uint64_t>();
  s.collection = j.at("collection").get<std::uint64_t>();
  s.avg_len = j.at("avg_len").get<double>();
  s.singletons = j.at("singletons").get<std::uint64_t>();
  return s;
}

std::uint64_t parse_count(std::string_view field, std::size_t line) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.remove_suffix(1);
  std::uint64_t value = 0;
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size())
    throw CorpusError("curve csv line " + std::to_string(line) + ": bad count '" +
                      std::string(field) + "'");
  return value;
}

}  // namespace

std::string write_curve(const GrowthCurve& curve, CurveFormat format) {
  if (format == CurveFormat::csv) {
    std::string out = "N,V\n";
    for (const auto& p : curve.points) {
      out += std::to_string(p.collection);
      out += ',';
      out += std::to_string(p.vocab);
      out += '\n';
    }
    return out;
  }
  json points = json::array();
  for (const auto& p : curve.points) points.push_back({p.collection, p.vocab});
  json doc = {{"points", std::move(points)}, {"stats", stats_to_json(curve.stats)}};
  return doc.dump() + "\n";
}

GrowthCurve parse_curve(std::string_view bytes, CurveFormat format) {
  GrowthCurve curve;
  if (format == CurveFormat::csv) {
    std::istringstream in{std::string(bytes)};
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
      ++line_no;
      strip_cr(line);
      if (line.empty()) continue;
      if (!header) {
        if (line != "N,V") throw CorpusError("curve csv: expected header 'N,V'");
        header = true;
        continue;
      }
      auto comma = line.find(',');
      if (comma == std::string::npos)
        throw CorpusError("curve csv line " + std::to_string(line_no) + ": expected N,V");
      std::string_view sv(line);
      curve.points.push_back(
          {parse_count(sv.substr(0, comma), line_no), parse_count(sv.substr(comma + 1), line_no)});
    }
    if (!header) throw CorpusError("curve csv: missing header");
    return curve;
  }
  try {
    json doc = json::parse(bytes);
    for (const auto& p : doc.at("points")) {
      if (!p.is_array() || p.size() != 2) throw CorpusError("curve json: point must be [N,V]");
      curve.points.push_back({p[0].get<std::uint64_t>(), p[1].get<std::uint64_t>()});
    }
    if (doc.contains("stats")) curve.stats = stats_from_json(doc["stats"]);
  } catch (const json::exception& e) {
    throw CorpusError(std::string("curve json: ") + e.what());
  }
  return curve;
}

GrowthCurve load_curve(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CorpusError("cannot open curve file: " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  auto format = path.extension() == ".csv" ? CurveFormat::csv : CurveFormat::json;
  return parse_curve(ss.str(), format);
}

}  // namespace heaps
