#include "forge/dashboard.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <set>

#include "forge/error.hpp"
#include "forge/namespaces.hpp"

namespace forge::dashboard {

using ccsv::CcsvBundle;
using ccsv::CcsvDocument;
using vocab::AggregateFunction;

std::string_view to_string(ChartType t) {
  switch (t) {
    case ChartType::kBar: return "bar";
    case ChartType::kLine: return "line";
    case ChartType::kTable: return "table";
    case ChartType::kNumber: return "number";
  }
  return "bar";
}

std::optional<ChartType> chart_type_from_string(std::string_view s) {
  for (auto t : {ChartType::kBar, ChartType::kLine, ChartType::kTable, ChartType::kNumber}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::string_view to_string(FilterOp op) {
  switch (op) {
    case FilterOp::kEq: return "eq";
    case FilterOp::kIn: return "in";
    case FilterOp::kRange: return "range";
  }
  return "eq";
}

std::optional<FilterOp> filter_op_from_string(std::string_view s) {
  for (auto op : {FilterOp::kEq, FilterOp::kIn, FilterOp::kRange}) {
    if (to_string(op) == s) return op;
  }
  return std::nullopt;
}

std::optional<double> parse_number(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  std::size_t mantissa = 0;
  auto digits = [&] {
    std::size_t n = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++n;
    return n;
  };
  mantissa += digits();
  if (i < text.size() && text[i] == '.') {
    ++i;
    mantissa += digits();
  }
  if (mantissa == 0) return std::nullopt;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    if (digits() == 0) return std::nullopt;
  }
  if (i != text.size()) return std::nullopt;

  // from_chars rejects a leading '+'.
  std::string_view body = text.front() == '+' ? text.substr(1) : text;
  double out = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
  if (ec == std::errc::result_out_of_range) {
    return std::nullopt;
  }
  if (ec != std::errc() || ptr != body.data() + body.size()) return std::nullopt;
  return out;
}

namespace {

const CcsvDocument& document_named(const CcsvBundle& bundle, std::string_view name) {
  if (const auto* d = bundle.find(name)) return *d;
  throw UnknownColumnError("no document named '" + std::string(name) + "' in the bundle");
}

std::size_t column_in(const CcsvDocument& doc, std::string_view column) {
  if (auto pos = doc.column_position(column)) return *pos;
  throw UnknownColumnError("document '" + doc.name() + "' has no column '" +
                           std::string(column) + "'");
}

// Cell values, split when the column is multi-valued; empty cells give none.
std::vector<std::string> cell_values(const CcsvDocument& doc, std::size_t pos,
                                     const std::string& cell) {
  const auto* b = doc.binding_for(doc.header()[pos]);
  if (b && b->value_separator) return ccsv::split_values(cell, *b->value_separator);
  if (cell.empty()) return {};
  return {cell};
}

std::string noun_plural(std::string_view cls) {
  std::string local = ns::local_name(cls);
  auto cut = local.find_last_of("_-");
  std::string noun = cut == std::string::npos ? local : local.substr(cut + 1);
  for (auto& c : noun) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return noun + "s";
}

std::optional<std::size_t> label_column(const CcsvDocument& doc) {
  const Iri label = ns::iri(ns::kRdfs, "label");
  for (const auto& b : doc.bindings()) {
    const auto* a = std::get_if<ccsv::AttributeRole>(&b.role);
    if (a && a->property == label) return b.index - 1;
  }
  return doc.column_position("label");
}

bool is_temporal(const std::optional<Iri>& datatype) {
  if (!datatype) return false;
  for (const char* t : {"date", "dateTime", "dateTimeStamp", "gYearMonth", "gYear", "time"}) {
    if (*datatype == ns::iri(ns::kXsd, t)) return true;
  }
  return false;
}

const CcsvDocument& providing_document(const rdf::Graph& discovered, const CcsvBundle& bundle,
                                       const vocab::VocabularyRegistry& reg, const Iri& node,
                                       const Iri& cls) {
  const auto subject =
      node.starts_with("_:") ? rdf::Term::blank(node.substr(2)) : rdf::Term::iri(node);
  for (const auto& o : discovered.objects(subject, rdf::iri(ns::kQoe, "coveredBy"))) {
    if (const auto* d = bundle.find_by_dataset(o.value())) return *d;
  }
  for (const auto& d : bundle.documents) {
    if (!reg.has_class(d.records_class())) continue;
    if (subclass_closure(reg, d.records_class()).contains(cls)) return d;
  }
  throw UnresolvableBindingError("spec " + node + " (" + cls + ") has no providing document");
}

}  // namespace

DashboardSpec generate_specs(const rdf::Graph& discovered, const CcsvBundle& bundle,
                             const vocab::VocabularyRegistry& reg) {
  DashboardSpec spec{"generated", "Discovered indicators", {}};
  for (const auto& ind : vocab::load_indicator_catalog(discovered, reg)) {
    const std::string ind_local = ns::local_name(ind.iri);
    for (const auto& m : ind.measures) {
      const auto& mdoc = providing_document(discovered, bundle, reg, m.node, m.entity_class);
      MeasureBinding mb{mdoc.name(), mdoc.identifier().name, m.function};
      std::string what = noun_plural(m.entity_class);
      if (m.function != AggregateFunction::kCount) {
        const ccsv::ColumnBinding* value = nullptr;
        for (const auto& b : mdoc.bindings()) {
          const auto* a = std::get_if<ccsv::AttributeRole>(&b.role);
          if (a && m.value_property && a->property == *m.value_property) value = &b;
        }
        if (!value) {
          throw UnresolvableBindingError("spec " + m.node + ": document '" + mdoc.name() +
                                         "' has no column for " +
                                         m.value_property.value_or("(no value property)"));
        }
        mb.column = value->name;
        what = std::string(vocab::to_string(m.function)) + " " +
               ns::local_name(*m.value_property) + " of " + what;
      }
      std::string prefix = ind_local;
      if (ind.measures.size() > 1) prefix += "." + ns::local_name(m.node);

      if (ind.dimensions.empty()) {
        spec.visualizations.push_back(
            {prefix, ind.label, ChartType::kNumber, std::nullopt, mb, std::nullopt});
        continue;
      }
      // Grouping uses the first dimension; further dimensions switch to a table.
      const auto& dim = ind.dimensions.front();
      const auto& ddoc = providing_document(discovered, bundle, reg, dim.node, dim.entity_class);
      const std::string& did = ddoc.identifier().name;
      ChartType chart = ind.dimensions.size() > 1 ? ChartType::kTable : ChartType::kBar;
      auto display = label_column(ddoc).value_or(ddoc.identifier().index - 1);
      const auto* display_binding = ddoc.binding_for(ddoc.header()[display]);
      if (chart == ChartType::kBar && display_binding && is_temporal(display_binding->datatype)) {
        chart = ChartType::kLine;
      }

      if (&ddoc == &mdoc) {
        spec.visualizations.push_back({prefix + "." + did, what + " by " + did, chart,
                                       DimensionBinding{ddoc.name(), did}, mb, std::nullopt});
        continue;
      }
      std::set<Iri> dim_supers;
      if (reg.has_class(ddoc.records_class())) {
        dim_supers = subclass_closure(reg, ddoc.records_class());
      }
      dim_supers.insert(ddoc.records_class());
      std::size_t added = 0;
      for (const auto& b : mdoc.bindings()) {
        const auto* ref = std::get_if<ccsv::ReferenceRole>(&b.role);
        if (!ref || !dim_supers.contains(ref->target_class)) continue;
        spec.visualizations.push_back({prefix + "." + b.name, what + " by " + b.name, chart,
                                       DimensionBinding{ddoc.name(), did}, mb,
                                       JoinPath{b.name, did}});
        ++added;
      }
      if (added == 0) {
        throw UnresolvableBindingError("spec " + dim.node + ": no column of '" + mdoc.name() +
                                       "' references " + ddoc.records_class());
      }
    }
  }
  return spec;
}

void validate_viz(const CcsvBundle& bundle, const VizSpec& viz) {
  if (viz.id.empty()) throw UnresolvableBindingError("visualization without id");
  const auto& mdoc = document_named(bundle, viz.measure_binding.document);
  column_in(mdoc, viz.measure_binding.column);
  const bool number = viz.chart_type == ChartType::kNumber;
  if (number != !viz.dimension_binding) {
    throw UnresolvableBindingError("visualization '" + viz.id +
                                   "': number charts, and only they, have no dimension");
  }
  if (!viz.dimension_binding) return;
  const auto& ddoc = document_named(bundle, viz.dimension_binding->document);
  column_in(ddoc, viz.dimension_binding->column);
  if (&ddoc == &mdoc) return;
  if (!viz.join_path) {
    throw UnresolvableBindingError("visualization '" + viz.id +
                                   "': dimension and measure documents differ but no join path");
  }
  column_in(mdoc, viz.join_path->measure_column);
  column_in(ddoc, viz.join_path->dimension_column);
}

namespace {

struct CompiledFilter {
  std::size_t pos;
  FilterOp op;
  std::set<std::string> accepted;
  double lo = 0, hi = 0;
};

CompiledFilter compile(const CcsvDocument& doc, const FilterExpr& f) {
  CompiledFilter c{column_in(doc, f.column), f.op, {}, 0, 0};
  switch (f.op) {
    case FilterOp::kEq:
      if (f.values.size() != 1) {
        throw InvalidFilterError("eq filter on '" + f.column + "' needs exactly one value");
      }
      c.accepted.insert(f.values.front());
      break;
    case FilterOp::kIn:
      c.accepted.insert(f.values.begin(), f.values.end());
      break;
    case FilterOp::kRange: {
      std::optional<double> lo, hi;
      if (f.values.size() == 2) {
        lo = parse_number(f.values[0]);
        hi = parse_number(f.values[1]);
      }
      if (!lo || !hi || *lo > *hi) {
        throw InvalidFilterError("range filter on '" + f.column +
                                 "' needs two ordered numeric bounds");
      }
      c.lo = *lo;
      c.hi = *hi;
      break;
    }
  }
  return c;
}

bool passes(const CcsvDocument& doc, const CompiledFilter& f, const csv::Row& row) {
  for (const auto& v : cell_values(doc, f.pos, row[f.pos])) {
    if (f.op == FilterOp::kRange) {
      auto x = parse_number(v);
      if (x && *x >= f.lo && *x <= f.hi) return true;
    } else if (f.accepted.contains(v)) {
      return true;
    }
  }
  return false;
}

struct Accumulator {
  bool touched = false;
  double count = 0;
  double sum = 0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  std::size_t numeric = 0;

  void add_number(double x) {
    sum += x;
    min = std::min(min, x);
    max = std::max(max, x);
    ++numeric;
  }

  std::optional<double> result(AggregateFunction fn) const {
    if (fn == AggregateFunction::kCount) return count;
    if (numeric == 0) return std::nullopt;
    switch (fn) {
      case AggregateFunction::kSum: return sum;
      case AggregateFunction::kAvg: return sum / static_cast<double>(numeric);
      case AggregateFunction::kMin: return min;
      case AggregateFunction::kMax: return max;
      default: return count;
    }
  }
};

}  // namespace

AggregateResult aggregate(const CcsvBundle& bundle, const VizSpec& viz,
                          const std::vector<FilterExpr>& filters) {
  const auto& mdoc = document_named(bundle, viz.measure_binding.document);
  const std::size_t mpos = column_in(mdoc, viz.measure_binding.column);
  const auto fn = viz.measure_binding.function;

  const CcsvDocument* ddoc = nullptr;
  std::optional<std::size_t> key_pos;  // column of the measure row holding the key
  if (viz.dimension_binding) {
    ddoc = &document_named(bundle, viz.dimension_binding->document);
    if (ddoc == &mdoc) {
      key_pos = column_in(mdoc, viz.dimension_binding->column);
    } else {
      if (!viz.join_path) {
        throw UnresolvableBindingError("visualization '" + viz.id + "' has no join path");
      }
      key_pos = column_in(mdoc, viz.join_path->measure_column);
    }
  }

  std::vector<CompiledFilter> row_filters, dim_filters;
  for (const auto& f : filters) {
    const auto& target = document_named(bundle, f.document);
    if (&target == &mdoc) {
      row_filters.push_back(compile(mdoc, f));
    } else if (&target == ddoc) {
      dim_filters.push_back(compile(*ddoc, f));
    } else {
      compile(target, f);  // validated, but unrelated to this visualization
    }
  }

  // Dimension rows: identifier -> display label, restricted by dim filters.
  std::map<std::string, std::string> labels;
  std::optional<std::set<std::string>> allowed;
  if (ddoc) {
    const std::size_t id_pos = viz.join_path && ddoc != &mdoc
                                   ? column_in(*ddoc, viz.join_path->dimension_column)
                                   : column_in(*ddoc, viz.dimension_binding->column);
    const auto lpos = label_column(*ddoc);
    if (!dim_filters.empty()) allowed.emplace();
    for (const auto& row : ddoc->rows()) {
      const std::string& id = row[id_pos];
      labels[id] = lpos && !row[*lpos].empty() ? row[*lpos] : id;
      if (allowed && std::all_of(dim_filters.begin(), dim_filters.end(),
                                 [&](const auto& f) { return passes(*ddoc, f, row); })) {
        allowed->insert(id);
      }
    }
  }

  AggregateResult out;
  std::map<std::string, Accumulator> groups;
  Accumulator unlinked, total;
  const std::string& mcol = viz.measure_binding.column;
  for (std::size_t r = 0; r < mdoc.rows().size(); ++r) {
    const auto& row = mdoc.rows()[r];
    if (!std::all_of(row_filters.begin(), row_filters.end(),
                     [&](const auto& f) { return passes(mdoc, f, row); })) {
      continue;
    }
    std::vector<Accumulator*> targets;
    if (!ddoc) {
      targets.push_back(&total);
    } else {
      auto keys = cell_values(mdoc, *key_pos, row[*key_pos]);
      if (allowed) {
        std::erase_if(keys, [&](const std::string& k) { return !allowed->contains(k); });
        if (keys.empty()) continue;
      }
      if (keys.empty()) targets.push_back(&unlinked);
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      for (const auto& k : keys) targets.push_back(&groups[k]);
    }
    ++out.total_rows_considered;

    const auto values = cell_values(mdoc, mpos, row[mpos]);
    std::vector<double> numbers;
    if (fn != AggregateFunction::kCount) {
      for (const auto& v : values) {
        auto x = parse_number(v);
        if (!x) throw NonNumericCellError(r + 1, mcol, v);
        numbers.push_back(*x);
      }
    }
    for (auto* acc : targets) {
      acc->touched = true;
      if (!values.empty()) acc->count += 1;
      for (double x : numbers) acc->add_number(x);
    }
  }

  if (!ddoc) {
    if (auto v = total.result(fn)) out.groups.push_back({std::nullopt, "", *v});
    return out;
  }
  for (const auto& [key, acc] : groups) {
    auto v = acc.result(fn);
    if (!v) continue;
    auto it = labels.find(key);
    out.groups.push_back({key, it == labels.end() ? key : it->second, *v});
  }
  if (unlinked.touched) {
    if (auto v = unlinked.result(fn)) {
      out.groups.push_back({std::nullopt, std::string(kUnlinkedLabel), *v});
    }
  }
  return out;
}

std::map<std::string, AggregateResult> apply_selection(const CcsvBundle& bundle,
                                                       const DashboardSpec& spec,
                                                       const std::vector<FilterExpr>& selection) {
  std::map<std::string, AggregateResult> out;
  for (const auto& viz : spec.visualizations) out.emplace(viz.id, aggregate(bundle, viz, selection));
  return out;
}

}  // namespace forge::dashboard
