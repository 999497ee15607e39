#pragma once

// Independent reference computations used as test oracles. Nothing here
// calls into the library code paths being checked.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct NaiveStats {
  std::uint64_t documents = 0;
  std::uint64_t collection = 0;
  std::uint64_t vocab = 0;
  double avg_len = 0.0;
  std::uint64_t singletons = 0;
};

/// Concatenates every document and recounts with an ordered map.
inline NaiveStats recount(const std::vector<std::vector<std::string>>& docs) {
  std::vector<std::string> all;
  for (const auto& d : docs) all.insert(all.end(), d.begin(), d.end());
  std::map<std::string, std::uint64_t> freq;
  for (const auto& t : all) freq[t] += 1;
  NaiveStats s;
  s.documents = docs.size();
  s.collection = all.size();
  s.vocab = freq.size();
  s.avg_len = docs.empty() ? 0.0 : double(s.collection) / double(s.documents);
  for (const auto& [t, c] : freq) s.singletons += (c == 1);
  return s;
}

/// Vocabulary after each document, by rescanning the prefix every time.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> naive_curve(
    const std::vector<std::vector<std::string>>& docs) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::size_t i = 1; i <= docs.size(); ++i) {
    std::vector<std::vector<std::string>> prefix(docs.begin(), docs.begin() + i);
    auto s = recount(prefix);
    out.emplace_back(s.collection, s.vocab);
  }
  return out;
}

/// Pearson r from raw power sums (not the centered two-pass form).
inline double pearson_raw_sums(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

/// Least squares by shrinking grid search over (slope, intercept).
inline std::pair<double, double> grid_least_squares(const std::vector<double>& x,
                                                    const std::vector<double>& y) {
  auto sse = [&](double b, double c) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::pow(y[i] - (b * x[i] + c), 2);
    return s;
  };
  double b = 0.0, c = 0.0, span_b = 4.0, span_c = 10.0;
  for (int round = 0; round < 60; ++round) {
    double best_b = b, best_c = c, best = sse(b, c);
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double cb = b + span_b * i / 10.0, cc = c + span_c * j / 10.0;
        const double v = sse(cb, cc);
        if (v < best) best = v, best_b = cb, best_c = cc;
      }
    }
    b = best_b;
    c = best_c;
    span_b *= 0.5;
    span_c *= 0.5;
  }
  return {b, c};
}

}  // namespace oracle

namespace testutil {

/// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("heaps_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path data_dir() { return HEAPS_TEST_DATA_DIR; }

}  // namespace testutil
