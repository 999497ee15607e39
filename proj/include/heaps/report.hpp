#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heaps/experiments.hpp"
#include "heaps/growth.hpp"

namespace heaps {

enum class TableFormat { text, csv, json };

std::optional<TableFormat> parse_table_format(std::string_view name);

/// Comparison table with columns corpus, beta +- ci, alpha +- ci, r, V(N_d),
/// N_d, avg length, singletons. Text and CSV print estimates, bounds and r
/// with 4 decimals and the average length rounded; text adds thousands
/// separators to counts. JSON keeps full precision.
std::string render_table(const ComparisonTable& table, TableFormat format);

/// Inverse of render_table(..., TableFormat::json).
ComparisonTable parse_table_json(std::string_view bytes);

/// "0.6381 ± 0.0000"
std::string format_estimate(double value, double half_width, int decimals = 4);

/// 71600633 -> "71,600,633"
std::string with_thousands(std::uint64_t value);

enum class PlotScale { loglog10, natural };

std::optional<PlotScale> parse_plot_scale(std::string_view name);

struct LabeledCurve {
  std::string label;
  GrowthCurve curve;
};

struct PlotSpec {
  std::vector<LabeledCurve> curves;
  PlotScale scale = PlotScale::loglog10;
  double width = 800.0;
  double height = 600.0;
  std::string x_label = "N (collection size)";
  std::string y_label = "V(N) (vocabulary size)";
};

/// Self-contained SVG: one <polyline> per curve (one vertex per point), a
/// legend entry per curve and axis ticks (decades on log-log, five linear
/// ticks on natural). Output bytes depend only on the spec.
std::string render_plot(const PlotSpec& spec);

}  // namespace heaps
