#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forge/ccsv.hpp"
#include "forge/rdf.hpp"
#include "forge/vocab.hpp"

namespace forge::dashboard {

using Iri = std::string;

enum class ChartType { kBar, kLine, kTable, kNumber };

std::string_view to_string(ChartType t);
std::optional<ChartType> chart_type_from_string(std::string_view s);

// Documents are named by their file stem (local name of the records class).
struct DimensionBinding {
  std::string document;
  std::string column;  // identifier column of the dimension document
  bool operator==(const DimensionBinding&) const = default;
};

struct MeasureBinding {
  std::string document;
  std::string column;  // identifier column for count, value column otherwise
  vocab::AggregateFunction function = vocab::AggregateFunction::kCount;
  bool operator==(const MeasureBinding&) const = default;
};

// Measure-document reference column -> dimension-document identifier column.
struct JoinPath {
  std::string measure_column;
  std::string dimension_column;
  bool operator==(const JoinPath&) const = default;
};

struct VizSpec {
  std::string id;
  std::string title;
  ChartType chart_type = ChartType::kBar;
  std::optional<DimensionBinding> dimension_binding;
  MeasureBinding measure_binding;
  std::optional<JoinPath> join_path;
  bool operator==(const VizSpec&) const = default;
};

struct DashboardSpec {
  std::string id;
  std::string title;
  std::vector<VizSpec> visualizations;
  bool operator==(const DashboardSpec&) const = default;
};

enum class FilterOp { kEq, kIn, kRange };

std::string_view to_string(FilterOp op);
std::optional<FilterOp> filter_op_from_string(std::string_view s);

// eq takes one value, in any number, range two numeric bounds (inclusive).
struct FilterExpr {
  std::string document;
  std::string column;
  FilterOp op = FilterOp::kEq;
  std::vector<std::string> values;
  bool operator==(const FilterExpr&) const = default;
};

inline constexpr std::string_view kUnlinkedLabel = "(unlinked)";

// dimension is the dimension identifier; nullopt for number charts and for
// the "(unlinked)" group of rows with an empty join cell.
struct Group {
  std::optional<std::string> dimension;
  std::string label;
  double value = 0;
  bool operator==(const Group&) const = default;
};

struct AggregateResult {
  std::vector<Group> groups;
  std::size_t total_rows_considered = 0;
  bool operator==(const AggregateResult&) const = default;
};

// One visualization per suitable indicator and per reference column of the
// measure document pointing at the dimension document; a number chart for
// indicators without dimensions. Throws UnresolvableBindingError.
DashboardSpec generate_specs(const rdf::Graph& discovered, const ccsv::CcsvBundle& bundle,
                             const vocab::VocabularyRegistry& reg);

// Checks that every binding resolves in the bundle. Throws UnknownColumnError
// and UnresolvableBindingError.
void validate_viz(const ccsv::CcsvBundle& bundle, const VizSpec& viz);

// Filters on the measure document apply to each row; filters on the dimension
// document restrict which dimension values are kept; filters on other
// documents of the bundle do not affect this visualization.
//
// Groups are sorted by dimension identifier with "(unlinked)" last. count
// counts rows with a non-empty measure cell; sum/avg/min/max skip empty cells
// and drop groups without values.
//
// Throws UnknownColumnError, InvalidFilterError, NonNumericCellError.
AggregateResult aggregate(const ccsv::CcsvBundle& bundle, const VizSpec& viz,
                          const std::vector<FilterExpr>& filters);

// Cross-filtering: every visualization recomputed under the selection.
std::map<std::string, AggregateResult> apply_selection(const ccsv::CcsvBundle& bundle,
                                                       const DashboardSpec& spec,
                                                       const std::vector<FilterExpr>& selection);

// Strict decimal: optional sign, digits with optional point, optional
// exponent. No inf/nan, no surrounding spaces.
std::optional<double> parse_number(std::string_view text);

}  // namespace forge::dashboard
