#include "heaps/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "heaps/corpus_io.hpp"
#include "heaps/error.hpp"
#include "heaps/experiments.hpp"
#include "heaps/powerfit.hpp"
#include "heaps/report.hpp"
#include "heaps/synth.hpp"

namespace heaps::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultSeed = 42;

struct GlobalArgs {
  std::optional<std::uint64_t> seed;
  bool strict = false;
  std::string format = "text";
  int threads = 0;
};

struct PipelineArgs {
  std::string input_format;  // empty: detect
  std::string punct_class = "punct+symbols";
  bool no_filter = false;
  std::size_t max_points = CurveSampling{}.max_points;
  std::size_t skip_first = 0;
  bool serial = false;
};

void add_pipeline_options(CLI::App* sub, PipelineArgs& args) {
  sub->add_option("--input-format", args.input_format, "Corpus format (default: by extension)")
      ->check(CLI::IsMember({"jsonl", "text-lines", "text-dir"}));
  sub->add_option("--punct-class", args.punct_class, "Characters replaced by spaces")
      ->check(CLI::IsMember({"punct", "punct+symbols"}))
      ->capture_default_str();
  sub->add_flag("--no-filter", args.no_filter, "Keep documents with five tokens or fewer");
  sub->add_option("--max-points", args.max_points, "Curve point cap (0 keeps every document)")
      ->capture_default_str();
  sub->add_option("--skip-first", args.skip_first, "Curve points excluded from the fit")
      ->capture_default_str();
  sub->add_flag("--serial", args.serial, "Use the serial reference kernels");
}

ProfileOptions make_options(const GlobalArgs& g, const PipelineArgs& p) {
  ProfileOptions opts;
  opts.read.strict = g.strict;
  opts.preprocess.punct_class = *parse_punct_class(p.punct_class);
  opts.preprocess.filter_short = !p.no_filter;
  opts.sampling.max_points = p.max_points;
  opts.fit.skip_first = p.skip_first;
  opts.execution = p.serial ? Execution::serial : Execution::parallel;
  opts.threads = g.threads;
  return opts;
}

CorpusSource make_source(const std::string& path, const PipelineArgs& p) {
  if (p.input_format.empty()) return CorpusSource::detect(path);
  return {*parse_corpus_format(p.input_format), path};
}

/// Writes to --out when given, stdout otherwise.
void emit(const std::string& bytes, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << bytes;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error("cannot write " + out_path);
  f << bytes;
  if (!f) throw Error("write failed: " + out_path);
}

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json fit_json(const HeapsFit& f) {
  return {{"beta", f.beta}, {"beta_ci90", f.beta_ci90}, {"alpha", f.alpha},
          {"alpha_ci90", f.alpha_ci90}, {"r", f.r}, {"n_points", f.n_points}};
}

json stats_json(const CorpusStats& s) {
  return {{"d", s.documents}, {"vocab", s.vocab}, {"collection", s.collection},
          {"avg_len", s.avg_len}, {"singletons", s.singletons}};
}

std::string render_fit(const HeapsFit& f, const std::string& format) {
  if (format == "json") return fit_json(f).dump(2) + "\n";
  if (format == "csv")
    return "beta,beta_ci90,alpha,alpha_ci90,r,n_points\n" + full(f.beta) + "," +
           full(f.beta_ci90) + "," + full(f.alpha) + "," + full(f.alpha_ci90) + "," + full(f.r) +
           "," + std::to_string(f.n_points) + "\n";
  std::ostringstream s;
  s << "beta:     " << format_estimate(f.beta, f.beta_ci90) << "\n"
    << "alpha:    " << format_estimate(f.alpha, f.alpha_ci90) << "\n";
  char r[32];
  std::snprintf(r, sizeof r, "%.4f", f.r);
  s << "r:        " << r << "\n"
    << "n_points: " << f.n_points << "\n";
  return s.str();
}

void report_warnings(const CorpusProfile& p, std::ostream& err) {
  for (const auto& w : p.warnings) err << "warning: line " << w.line << ": " << w.message << "\n";
  if (p.skipped_records > p.warnings.size())
    err << "warning: " << p.skipped_records << " malformed records skipped in total\n";
}

int cmd_profile(const GlobalArgs& g, const PipelineArgs& p, const std::string& in,
                const std::string& curve_out, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
  const ProfileOptions opts = make_options(g, p);
  const CorpusSource source = make_source(in, p);
  CorpusProfile profile = profile_source(source, opts);
  report_warnings(profile, err);
  if (!curve_out.empty()) {
    const auto fmt = fs::path(curve_out).extension() == ".csv" ? CurveFormat::csv : CurveFormat::json;
    emit(write_curve(profile.curve, fmt), curve_out, out);
  }
  if (!profile.curve.stats) throw FitError("no documents survived preprocessing");
  const HeapsFit fit = fit_heaps(profile.curve, opts.fit);
  const CorpusStats& stats = *profile.curve.stats;

  std::string bytes;
  if (g.format == "json") {
    json points = json::array();
    for (const auto& pt : profile.curve.points) points.push_back({pt.collection, pt.vocab});
    json doc = {{"source", in},
                {"stats", stats_json(stats)},
                {"fit", fit_json(fit)},
                {"dropped_documents", profile.dropped_documents},
                {"skipped_records", profile.skipped_records},
                {"points", std::move(points)}};
    bytes = doc.dump(2) + "\n";
  } else if (g.format == "csv") {
    ComparisonTable t{{ComparisonRow{in, fit, stats, std::nullopt}}};
    bytes = render_table(t, TableFormat::csv);
  } else {
    std::ostringstream s;
    s << "corpus:      " << in << "\n"
      << "documents:   " << with_thousands(stats.documents) << " (dropped "
      << profile.dropped_documents << ", skipped records " << profile.skipped_records << ")\n"
      << "collection:  " << with_thousands(stats.collection) << "\n"
      << "vocabulary:  " << with_thousands(stats.vocab) << "\n"
      << "avg length:  " << with_thousands(stats.avg_len_rounded()) << "\n"
      << "singletons:  " << with_thousands(stats.singletons) << "\n"
      << render_fit(fit, "text");
    bytes = s.str();
  }
  emit(bytes, out_path, out);
  return 0;
}

int cmd_fit(const GlobalArgs& g, const std::string& in, std::size_t skip_first,
            const std::string& out_path, std::ostream& out) {
  const GrowthCurve curve = load_curve(in);
  const HeapsFit fit = fit_heaps(curve, FitOptions{skip_first});
  emit(render_fit(fit, g.format), out_path, out);
  return 0;
}

struct SynthArgs {
  std::string kind = "zipf";
  double a = 1.5;
  std::optional<std::uint64_t> vocab_bound;
  unsigned alphabet = 26;
  double q = 0.2;
  double alpha = 2.0;
  double beta = 0.5;
  std::uint64_t n_min = 100;
  std::uint64_t n_max = 1'000'000;
  std::optional<std::uint64_t> n_tokens;
  std::optional<std::size_t> n_docs;
  std::size_t doc_len = 150;
  std::string out;
};

int cmd_synth(const GlobalArgs& g, const SynthArgs& a, std::ostream& out, std::ostream& err) {
  SynthSpec spec;
  spec.kind = *parse_synth_kind(a.kind);
  spec.zipf_exponent = a.a;
  spec.vocab_bound = a.vocab_bound;
  spec.alphabet_size = a.alphabet;
  spec.space_prob = a.q;
  spec.alpha = a.alpha;
  spec.beta = a.beta;
  spec.min_collection = a.n_min;
  spec.max_collection = a.n_max;
  spec.doc_len = a.doc_len;
  spec.seed = g.seed.value_or(kDefaultSeed);
  if (a.n_docs) {
    spec.n_docs = *a.n_docs;
  } else if (a.n_tokens) {
    if (spec.kind == SynthKind::exact_powerlaw)
      throw SynthError("--n-tokens does not apply to exact-powerlaw; use --n-max");
    if (spec.doc_len == 0) throw SynthError("doc_len must be >= 1");
    spec.n_docs = static_cast<std::size_t>((*a.n_tokens + spec.doc_len - 1) / spec.doc_len);
  } else {
    spec.n_docs = spec.kind == SynthKind::exact_powerlaw ? 100 : 1000;
  }
  spec.validate();
  err << "seed: " << spec.seed << "\n";

  if (a.out.empty()) {
    write_synth_jsonl(out, spec);
    return 0;
  }
  std::ofstream f(a.out, std::ios::binary);
  if (!f) throw Error("cannot write " + a.out);
  write_synth_jsonl(f, spec);
  if (!f) throw Error("write failed: " + a.out);
  return 0;
}

std::pair<std::string, std::string> split_labeled(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0) return {fs::path(arg).stem().string(), arg};
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

int cmd_compare(const GlobalArgs& g, const PipelineArgs& p, const std::vector<std::string>& corpora,
                const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::vector<LabeledSource> sources;
  for (const auto& c : corpora) {
    auto [label, path] = split_labeled(c);
    sources.push_back({label, make_source(path, p)});
  }
  const ComparisonTable table = compare(sources, make_options(g, p));
  emit(render_table(table, *parse_table_format(g.format)), out_path, out);
  int status = 0;
  for (const auto& row : table.rows) {
    if (!row.ok()) {
      err << "error: " << row.label << ": " << *row.error << "\n";
      status = 2;
    }
  }
  return status;
}

int cmd_shuffle(const GlobalArgs& g, const PipelineArgs& p, const std::string& in, std::size_t n,
                const std::string& out_path, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = g.seed.value_or(kDefaultSeed);
  err << "seed: " << seed << "\n";
  const ShuffleReport rep = shuffle_study(make_source(in, p), n, seed, make_options(g, p));

  std::string bytes;
  if (g.format == "json") {
    auto spread = [](const ParameterSpread& s) {
      return json{{"min", s.min}, {"max", s.max}, {"range", s.range}, {"stddev", s.stddev}};
    };
    json doc = {{"n_shuffles", rep.n_shuffles},     {"seed", rep.seed},
                {"base_fit", fit_json(rep.base_fit)}, {"stats", stats_json(rep.base_stats)},
                {"beta_values", rep.beta_values},   {"alpha_values", rep.alpha_values},
                {"beta_spread", spread(rep.beta_spread)},
                {"alpha_spread", spread(rep.alpha_spread)}};
    bytes = doc.dump(2) + "\n";
  } else if (g.format == "csv") {
    std::string s = "shuffle,seed,beta,alpha\n";
    for (std::size_t k = 0; k < rep.n_shuffles; ++k)
      s += std::to_string(k) + "," + std::to_string(rep.seed + k) + "," +
           full(rep.beta_values[k]) + "," + full(rep.alpha_values[k]) + "\n";
    bytes = s;
  } else {
    std::ostringstream s;
    char buf[160];
    s << "shuffles:    " << rep.n_shuffles << " (seed " << rep.seed << ")\n"
      << "documents:   " << with_thousands(rep.base_stats.documents) << "\n"
      << "base fit:\n"
      << render_fit(rep.base_fit, "text");
    std::snprintf(buf, sizeof buf, "beta spread:  min %.4f  max %.4f  range %.4f  sd %.4f\n",
                  rep.beta_spread.min, rep.beta_spread.max, rep.beta_spread.range,
                  rep.beta_spread.stddev);
    s << buf;
    std::snprintf(buf, sizeof buf, "alpha spread: min %.4f  max %.4f  range %.4f  sd %.4f\n",
                  rep.alpha_spread.min, rep.alpha_spread.max, rep.alpha_spread.range,
                  rep.alpha_spread.stddev);
    s << buf << "corpus statistics identical across all shuffles\n";
    bytes = s.str();
  }
  emit(bytes, out_path, out);
  return 0;
}

int cmd_plot(const std::string& scale, const std::vector<std::string>& curves, double width,
             double height, const std::string& out_path, std::ostream& out) {
  PlotSpec spec;
  spec.scale = *parse_plot_scale(scale);
  spec.width = width;
  spec.height = height;
  for (const auto& c : curves) {
    auto [label, path] = split_labeled(c);
    spec.curves.push_back({label, load_curve(path)});
  }
  emit(render_plot(spec), out_path, out);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vocabulary growth profiler: Heaps' law fits, corpus statistics, synthetic corpora"};
  app.name("heapsprof");
  app.require_subcommand(1, 1);
  app.fallthrough();

  GlobalArgs g;
  app.add_option("--seed", g.seed, "Seed for randomized subcommands (default 42)");
  app.add_flag("--strict", g.strict, "Abort on malformed corpus records");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0: OpenMP default)")
      ->check(CLI::NonNegativeNumber);

  // profile
  auto* profile = app.add_subcommand("profile", "Growth curve, corpus statistics and Heaps fit");
  PipelineArgs profile_p;
  std::string profile_in, profile_curve_out, profile_out;
  profile->add_option("--in", profile_in, "Corpus path")->required();
  profile->add_option("--curve-out", profile_curve_out, "Also write the curve (.csv or .json)");
  profile->add_option("--out", profile_out, "Output path (default stdout)");
  add_pipeline_options(profile, profile_p);

  // fit
  auto* fit = app.add_subcommand("fit", "Fit Heaps' law to a curve file");
  std::string fit_in, fit_out;
  std::size_t fit_skip = 0;
  fit->add_option("curve", fit_in, "Curve file (.csv or .json)")->required();
  fit->add_option("--skip-first", fit_skip, "Curve points excluded from the fit");
  fit->add_option("--out", fit_out, "Output path (default stdout)");

  // synth
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus as JSONL");
  SynthArgs sa;
  synth->add_option("--kind", sa.kind, "Generator")
      ->check(CLI::IsMember({"zipf", "zipf-iid", "monkey", "exact-powerlaw"}))
      ->capture_default_str();
  synth->add_option("--a", sa.a, "Zipf exponent")->capture_default_str();
  synth->add_option("--vocab-bound", sa.vocab_bound, "Zipf vocabulary bound (default unbounded)");
  synth->add_option("--alphabet", sa.alphabet, "Monkey alphabet size")->capture_default_str();
  synth->add_option("--q", sa.q, "Monkey space probability")->capture_default_str();
  synth->add_option("--alpha", sa.alpha, "Exact power law prefactor")->capture_default_str();
  synth->add_option("--beta", sa.beta, "Exact power law exponent")->capture_default_str();
  synth->add_option("--n-min", sa.n_min, "Exact power law first collection size")
      ->capture_default_str();
  synth->add_option("--n-max", sa.n_max, "Exact power law last collection size")
      ->capture_default_str();
  auto* n_tokens = synth->add_option("--n-tokens", sa.n_tokens, "Total tokens (whole documents)");
  auto* n_docs = synth->add_option("--n-docs", sa.n_docs, "Document count");
  n_tokens->excludes(n_docs);
  synth->add_option("--doc-len", sa.doc_len, "Tokens per document")->capture_default_str();
  synth->add_option("--out", sa.out, "Output JSONL path (default stdout)");

  // compare
  auto* cmp = app.add_subcommand("compare", "Comparison table over several corpora");
  PipelineArgs cmp_p;
  std::vector<std::string> cmp_corpora;
  std::string cmp_out;
  cmp->add_option("--corpus", cmp_corpora, "label=path, repeatable")->required();
  cmp->add_option("--out", cmp_out, "Output path (default stdout)");
  add_pipeline_options(cmp, cmp_p);

  // shuffle-test
  auto* shuf = app.add_subcommand("shuffle-test", "Refit under seeded document shuffles");
  PipelineArgs shuf_p;
  std::string shuf_in, shuf_out;
  std::size_t shuf_n = 20;
  shuf->add_option("--in", shuf_in, "Corpus path")->required();
  shuf->add_option("--n", shuf_n, "Number of shuffles")->capture_default_str();
  shuf->add_option("--out", shuf_out, "Output path (default stdout)");
  add_pipeline_options(shuf, shuf_p);

  // plot
  auto* plot = app.add_subcommand("plot", "Render growth curves as SVG");
  std::string plot_scale = "loglog10", plot_out;
  std::vector<std::string> plot_curves;
  double plot_w = 800, plot_h = 600;
  plot->add_option("--scale", plot_scale, "Axis scale")
      ->check(CLI::IsMember({"loglog10", "natural"}))
      ->capture_default_str();
  plot->add_option("--out", plot_out, "Output SVG path (default stdout)");
  plot->add_option("--width", plot_w, "Width")->check(CLI::PositiveNumber)->capture_default_str();
  plot->add_option("--height", plot_h, "Height")->check(CLI::PositiveNumber)->capture_default_str();
  plot->add_option("curves", plot_curves, "Curve files, optionally label=path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*profile) return cmd_profile(g, profile_p, profile_in, profile_curve_out, profile_out, out, err);
    if (*fit) return cmd_fit(g, fit_in, fit_skip, fit_out, out);
    if (*synth) return cmd_synth(g, sa, out, err);
    if (*cmp) return cmd_compare(g, cmp_p, cmp_corpora, cmp_out, out, err);
    if (*shuf) return cmd_shuffle(g, shuf_p, shuf_in, shuf_n, shuf_out, out, err);
    if (*plot) return cmd_plot(plot_scale, plot_curves, plot_w, plot_h, plot_out, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace heaps::cli
