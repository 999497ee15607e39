#include "heaps/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "heaps/error.hpp"

namespace heaps {

using nlohmann::json;

std::optional<TableFormat> parse_table_format(std::string_view name) {
  if (name == "text") return TableFormat::text;
  if (name == "csv") return TableFormat::csv;
  if (name == "json") return TableFormat::json;
  return std::nullopt;
}

std::optional<PlotScale> parse_plot_scale(std::string_view name) {
  if (name == "loglog10") return PlotScale::loglog10;
  if (name == "natural") return PlotScale::natural;
  return std::nullopt;
}

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::size_t display_width(std::string_view s) {
  // Counts code points; good enough for the labels and the ± sign.
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json fit_to_json(const HeapsFit& f) {
  return {{"beta", f.beta},       {"beta_ci90", f.beta_ci90}, {"alpha", f.alpha},
          {"alpha_ci90", f.alpha_ci90}, {"r", f.r},           {"n_points", f.n_points}};
}

HeapsFit fit_from_json(const json& j) {
  HeapsFit f;
  f.beta = j.at("beta").get<double>();
  f.beta_ci90 = j.at("beta_ci90").get<double>();
  f.alpha = j.at("alpha").get<double>();
  f.alpha_ci90 = j.at("alpha_ci90").get<double>();
  f.r = j.at("r").get<double>();
  f.n_points = j.at("n_points").get<std::size_t>();
  return f;
}

json stats_to_json(const CorpusStats& s) {
  return {{"d", s.documents},        {"vocab", s.vocab},         {"collection", s.collection},
          {"avg_len", s.avg_len},    {"singletons", s.singletons}};
}

CorpusStats stats_from_json(const json& j) {
  CorpusStats s;
  s.documents = j.at("d").get<std::uint64_t>();
  s.vocab = j.at("vocab").get<std::uint64_t>();
  s.collection = j.at("collection").get<std::uint64_t>();
  s.avg_len = j.at("avg_len").get<double>();
  s.singletons = j.at("singletons").get<std::uint64_t>();
  return s;
}

std::string render_text(const ComparisonTable& table) {
  const std::vector<std::string> header = {"Corpus", "beta",     "alpha", "r",
                                           "V(N_d)", "N_d",      "k",     "w1"};
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> errors(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    if (!row.ok()) {
      cells.push_back({row.label});
      errors[i] = "error: " + *row.error;
      continue;
    }
    const auto& f = *row.fit;
    const auto& s = *row.stats;
    cells.push_back({row.label, format_estimate(f.beta, f.beta_ci90),
                     format_estimate(f.alpha, f.alpha_ci90), fixed(f.r, 4),
                     with_thousands(s.vocab), with_thousands(s.collection),
                     with_thousands(s.avg_len_rounded()), with_thousands(s.singletons)});
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = display_width(header[c]);
  for (const auto& r : cells)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], display_width(r[c]));

  auto line = [&](const std::vector<std::string>& r, const std::string& tail) {
    std::string out;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c > 0) out += "  ";
      const std::string pad(width[c] - display_width(r[c]), ' ');
      // Label column left-aligned, numbers right-aligned.
      out += c == 0 ? r[c] + pad : pad + r[c];
    }
    if (!tail.empty()) out += "  " + tail;
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };

  std::string out = line(header, "");
  for (std::size_t i = 0; i < cells.size(); ++i) out += line(cells[i], errors[i]);
  return out;
}

std::string render_csv(const ComparisonTable& table) {
  std::string out =
      "corpus,beta,beta_ci90,alpha,alpha_ci90,r,vocab,collection,avg_len,singletons,error\n";
  for (const auto& row : table.rows) {
    out += csv_field(row.label);
    if (row.ok()) {
      const auto& f = *row.fit;
      const auto& s = *row.stats;
      out += "," + fixed(f.beta, 4) + "," + fixed(f.beta_ci90, 4) + "," + fixed(f.alpha, 4) +
             "," + fixed(f.alpha_ci90, 4) + "," + fixed(f.r, 4) + "," + std::to_string(s.vocab) +
             "," + std::to_string(s.collection) + "," + std::to_string(s.avg_len_rounded()) +
             "," + std::to_string(s.singletons) + ",";
    } else {
      out += ",,,,,,,,,," + csv_field(*row.error);
    }
    out += "\n";
  }
  return out;
}

std::string render_json(const ComparisonTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = {{"corpus", row.label}};
    r["fit"] = row.fit ? fit_to_json(*row.fit) : json(nullptr);
    r["stats"] = row.stats ? stats_to_json(*row.stats) : json(nullptr);
    r["error"] = row.error ? json(*row.error) : json(nullptr);
    rows.push_back(std::move(r));
  }
  return json{{"rows", std::move(rows)}}.dump(2) + "\n";
}

}  // namespace

std::string format_estimate(double value, double half_width, int decimals) {
  return fixed(value, decimals) + " ± " + fixed(half_width, decimals);
}

std::string with_thousands(std::uint64_t value) {
  std::string digits = std::to_string(value);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

std::string render_table(const ComparisonTable& table, TableFormat format) {
  switch (format) {
    case TableFormat::text: return render_text(table);
    case TableFormat::csv: return render_csv(table);
    case TableFormat::json: return render_json(table);
  }
  return {};
}

ComparisonTable parse_table_json(std::string_view bytes) {
  ComparisonTable table;
  try {
    const json doc = json::parse(bytes);
    for (const auto& r : doc.at("rows")) {
      ComparisonRow row;
      row.label = r.at("corpus").get<std::string>();
      if (!r.at("fit").is_null()) row.fit = fit_from_json(r["fit"]);
      if (!r.at("stats").is_null()) row.stats = stats_from_json(r["stats"]);
      if (!r.at("error").is_null()) row.error = r["error"].get<std::string>();
      table.rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("table json: ") + e.what());
  }
  return table;
}

// ---------------------------------------------------------------------------
// SVG plot

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) { return fixed(v, 2); }

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> ticks;  // in axis coordinates
};

Axis decade_axis(double lo_log, double hi_log) {
  Axis a;
  a.lo = std::floor(lo_log);
  a.hi = std::ceil(hi_log);
  if (a.hi <= a.lo) a.hi = a.lo + 1.0;
  for (double t = a.lo; t <= a.hi + 1e-9; t += 1.0) a.ticks.push_back(t);
  return a;
}

/// [0, 4 * step] with step the smallest of {1, 2, 2.5, 5} x 10^k covering max / 4.
Axis linear_axis(double max_value) {
  Axis a;
  const double raw = std::max(max_value, 1.0) / 4.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = 10.0 * mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  a.lo = 0.0;
  a.hi = 4.0 * step;
  for (int i = 0; i <= 4; ++i) a.ticks.push_back(step * i);
  return a;
}

std::string linear_tick_label(double v) {
  char buf[64];
  if (v >= 1e6 || (v != 0.0 && v < 1e-2))
    std::snprintf(buf, sizeof buf, "%.3g", v);
  else
    std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string render_plot(const PlotSpec& spec) {
  if (spec.curves.empty()) throw PlotError("plot needs at least one curve");
  if (!(spec.width > 0.0 && spec.height > 0.0)) throw PlotError("plot dimensions must be positive");
  const bool log = spec.scale == PlotScale::loglog10;

  auto tx = [log](std::uint64_t v) { return log ? std::log10(static_cast<double>(v)) : double(v); };

  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& lc : spec.curves) {
    if (lc.curve.points.empty()) throw PlotError("curve '" + lc.label + "' has no points");
    for (std::size_t i = 0; i < lc.curve.points.size(); ++i) {
      const auto& p = lc.curve.points[i];
      if (log && (p.collection == 0 || p.vocab == 0))
        throw PlotError("curve '" + lc.label + "' point " + std::to_string(i) +
                        " is zero; log-log axes need values >= 1");
      xmin = std::min(xmin, tx(p.collection));
      xmax = std::max(xmax, tx(p.collection));
      ymin = std::min(ymin, tx(p.vocab));
      ymax = std::max(ymax, tx(p.vocab));
    }
  }
  const Axis xa = log ? decade_axis(xmin, xmax) : linear_axis(xmax);
  const Axis ya = log ? decade_axis(ymin, ymax) : linear_axis(ymax);

  const double left = 90.0, right = 190.0, top = 30.0, bottom = 70.0;
  const double pw = std::max(spec.width - left - right, 10.0);
  const double ph = std::max(spec.height - top - bottom, 10.0);
  auto px = [&](double x) { return left + (x - xa.lo) / (xa.hi - xa.lo) * pw; };
  auto py = [&](double y) { return top + ph - (y - ya.lo) / (ya.hi - ya.lo) * ph; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(spec.width) << "\" height=\""
      << num(spec.height) << "\" viewBox=\"0 0 " << num(spec.width) << ' ' << num(spec.height)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(spec.width) << "\" height=\"" << num(spec.height)
      << "\" fill=\"white\"/>\n";

  svg << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n"
      << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\"/>\n</g>\n";

  svg << "<g class=\"ticks\">\n";
  for (double t : xa.ticks) {
    const double x = px(t);
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(x)
        << "\" y2=\"" << num(top + ph + 5) << "\" stroke=\"black\"/>\n"
        << "<text class=\"xtick\" x=\"" << num(x) << "\" y=\"" << num(top + ph + 20)
        << "\" text-anchor=\"middle\">";
    if (log)
      svg << "10<tspan baseline-shift=\"super\" font-size=\"9\">" << static_cast<int>(t)
          << "</tspan>";
    else
      svg << linear_tick_label(t);
    svg << "</text>\n";
  }
  for (double t : ya.ticks) {
    const double y = py(t);
    svg << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left)
        << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n"
        << "<text class=\"ytick\" x=\"" << num(left - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\">";
    if (log)
      svg << "10<tspan baseline-shift=\"super\" font-size=\"9\">" << static_cast<int>(t)
          << "</tspan>";
    else
      svg << linear_tick_label(t);
    svg << "</text>\n";
  }
  svg << "</g>\n";

  svg << "<text class=\"xlabel\" x=\"" << num(left + pw / 2) << "\" y=\"" << num(spec.height - 20)
      << "\" text-anchor=\"middle\">" << xml_escape(spec.x_label) << "</text>\n"
      << "<text class=\"ylabel\" x=\"20\" y=\"" << num(top + ph / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << num(top + ph / 2) << ")\">"
      << xml_escape(spec.y_label) << "</text>\n";

  for (std::size_t c = 0; c < spec.curves.size(); ++c) {
    const auto& lc = spec.curves[c];
    const char* color = kPalette[c % std::size(kPalette)];
    svg << "<polyline class=\"curve\" data-label=\"" << xml_escape(lc.label)
        << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < lc.curve.points.size(); ++i) {
      const auto& p = lc.curve.points[i];
      if (i > 0) svg << ' ';
      svg << num(px(tx(p.collection))) << ',' << num(py(tx(p.vocab)));
    }
    svg << "\"/>\n";
  }

  svg << "<g class=\"legend\">\n";
  for (std::size_t c = 0; c < spec.curves.size(); ++c) {
    const double y = top + 10 + 20.0 * static_cast<double>(c);
    const double x = left + pw + 15;
    svg << "<line class=\"legend-entry\" x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(x + 25) << "\" y2=\"" << num(y) << "\" stroke=\""
        << kPalette[c % std::size(kPalette)] << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << num(x + 32) << "\" y=\"" << num(y + 4) << "\">"
        << xml_escape(spec.curves[c].label) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace heaps
