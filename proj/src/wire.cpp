#include "forge/wire.hpp"

#include "forge/error.hpp"
#include "forge/namespaces.hpp"

namespace forge::wire {

using dashboard::ChartType;
using dashboard::FilterOp;

namespace {

[[noreturn]] void bad(const std::string& what) { throw ConfigError(what); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where + " lacks \"" + key + "\"");
  return *it;
}

std::string text(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_string()) bad(where + "." + key + " must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_text(const json& j, const char* key,
                                         const std::string& where) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return text(j, key, where);
}

std::string expand(const std::string& name, const std::string& where) {
  try {
    return ns::expand(name);
  } catch (const Error& e) {
    bad(where + ": " + e.what());
  }
}

// Empty answers stay empty so characterize() can name them.
std::string expand_nonempty(const std::optional<std::string>& name, const std::string& where) {
  return name && !name->empty() ? expand(*name, where) : std::string();
}

json nullable(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

vocab::AggregateFunction function_named(const std::string& s, const std::string& where) {
  auto f = vocab::function_from_string(s);
  if (!f) bad(where + ": unknown function '" + s + "'");
  return *f;
}

}  // namespace

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

json to_json(const vocab::IndicatorDef& def) {
  json dims = json::array(), measures = json::array();
  for (const auto& d : def.dimensions) {
    dims.push_back({{"node", d.node}, {"entity_class", d.entity_class}});
  }
  for (const auto& m : def.measures) {
    measures.push_back({{"node", m.node},
                        {"entity_class", m.entity_class},
                        {"function", vocab::to_string(m.function)},
                        {"value_property", nullable(m.value_property)}});
  }
  return {{"iri", def.iri}, {"label", def.label}, {"dimensions", dims}, {"measures", measures}};
}

json to_json(const discovery::SuitabilityResult& r) {
  json covered = json::object();
  for (const auto& [node, c] : r.covered) {
    covered[node] = {{"entity_class", c.entity_class}, {"document", c.document}};
  }
  return {{"indicator", to_json(r.indicator)}, {"covered", covered}, {"suitable", r.suitable}};
}

json to_json(const dashboard::VizSpec& viz) {
  json j = {{"id", viz.id}, {"title", viz.title}, {"chart_type", dashboard::to_string(viz.chart_type)}};
  j["dimension_binding"] =
      viz.dimension_binding
          ? json{{"document", viz.dimension_binding->document},
                 {"column", viz.dimension_binding->column}}
          : json(nullptr);
  j["measure_binding"] = {{"document", viz.measure_binding.document},
                          {"column", viz.measure_binding.column},
                          {"function", vocab::to_string(viz.measure_binding.function)}};
  j["join_path"] = viz.join_path ? json{{"measure_column", viz.join_path->measure_column},
                                        {"dimension_column", viz.join_path->dimension_column}}
                                 : json(nullptr);
  return j;
}

json to_json(const dashboard::DashboardSpec& spec) {
  json vizs = json::array();
  for (const auto& v : spec.visualizations) vizs.push_back(to_json(v));
  return {{"id", spec.id}, {"title", spec.title}, {"visualizations", vizs}};
}

json to_json(const dashboard::FilterExpr& f) {
  return {{"target", {{"document", f.document}, {"column", f.column}}},
          {"op", dashboard::to_string(f.op)},
          {"values", f.values}};
}

json to_json(const dashboard::AggregateResult& r) {
  json groups = json::array();
  for (const auto& g : r.groups) {
    groups.push_back({{"dimension", nullable(g.dimension)}, {"label", g.label}, {"value", g.value}});
  }
  return {{"groups", groups}, {"total_rows_considered", r.total_rows_considered}};
}

dashboard::VizSpec viz_from_json(const json& j) {
  const std::string where = "visualization";
  dashboard::VizSpec v;
  v.id = text(j, "id", where);
  v.title = optional_text(j, "title", where).value_or(v.id);
  auto chart = dashboard::chart_type_from_string(text(j, "chart_type", where));
  if (!chart) bad(where + " '" + v.id + "': unknown chart_type");
  v.chart_type = *chart;
  if (j.contains("dimension_binding") && !j.at("dimension_binding").is_null()) {
    const auto& d = j.at("dimension_binding");
    v.dimension_binding = dashboard::DimensionBinding{text(d, "document", "dimension_binding"),
                                                      text(d, "column", "dimension_binding")};
  }
  const auto& m = field(j, "measure_binding", where);
  v.measure_binding = {text(m, "document", "measure_binding"), text(m, "column", "measure_binding"),
                       function_named(text(m, "function", "measure_binding"), "measure_binding")};
  if (j.contains("join_path") && !j.at("join_path").is_null()) {
    const auto& p = j.at("join_path");
    v.join_path = dashboard::JoinPath{text(p, "measure_column", "join_path"),
                                      text(p, "dimension_column", "join_path")};
  }
  return v;
}

dashboard::DashboardSpec dashboard_from_json(const json& j) {
  dashboard::DashboardSpec spec;
  spec.id = text(j, "id", "dashboard");
  spec.title = optional_text(j, "title", "dashboard").value_or(spec.id);
  const auto& vizs = field(j, "visualizations", "dashboard");
  if (!vizs.is_array()) bad("dashboard.visualizations must be an array");
  for (const auto& v : vizs) spec.visualizations.push_back(viz_from_json(v));
  return spec;
}

dashboard::FilterExpr filter_from_json(const json& j) {
  dashboard::FilterExpr f;
  const auto& target = field(j, "target", "filter");
  f.document = text(target, "document", "filter.target");
  f.column = text(target, "column", "filter.target");
  auto op = dashboard::filter_op_from_string(text(j, "op", "filter"));
  if (!op) bad("filter: op must be eq, in or range");
  f.op = *op;
  const auto& values = field(j, "values", "filter");
  if (!values.is_array()) bad("filter.values must be an array");
  for (const auto& v : values) {
    if (v.is_string()) {
      f.values.push_back(v.get<std::string>());
    } else if (v.is_number()) {
      f.values.push_back(v.dump());
    } else {
      bad("filter.values must hold strings or numbers");
    }
  }
  return f;
}

std::vector<dashboard::FilterExpr> filters_from_json(const json& j) {
  if (j.is_null()) return {};
  if (!j.is_array()) bad("filters must be an array");
  std::vector<dashboard::FilterExpr> out;
  for (const auto& f : j) out.push_back(filter_from_json(f));
  return out;
}

DatasetConfig dataset_config_from_json(const json& j) {
  DatasetConfig c;
  c.id = optional_text(j, "id", "config").value_or("");

  const auto& m = field(j, "mapping", "config");
  c.mapping.records_class = expand(text(m, "records_class", "mapping"), "mapping.records_class");
  const auto& cols = field(m, "columns", "mapping");
  if (!cols.is_array()) bad("mapping.columns must be an array");
  for (const auto& col : cols) {
    ingest::ColumnMapping cm;
    cm.column = text(col, "column", "mapping.columns[]");
    const std::string where = "column '" + cm.column + "'";
    const std::string role = text(col, "role", where);
    if (role == "identifier") {
      auto cls = optional_text(col, "entity_class", where);
      cm.role = ccsv::IdentifierRole{cls ? expand(*cls, where) : c.mapping.records_class};
    } else if (role == "attribute") {
      cm.role = ccsv::AttributeRole{expand(text(col, "property", where), where)};
    } else if (role == "reference") {
      auto prop = optional_text(col, "property", where);
      cm.role = ccsv::ReferenceRole{expand(text(col, "target_class", where), where),
                                    prop ? std::optional(expand(*prop, where)) : std::nullopt};
    } else {
      bad(where + ": role must be identifier, attribute or reference");
    }
    cm.value_separator = optional_text(col, "value_separator", where);
    if (auto dt = optional_text(col, "datatype", where)) cm.datatype = expand(*dt, where);
    cm.language = optional_text(col, "language", where);
    c.mapping.columns.push_back(std::move(cm));
  }

  if (!j.contains("characterization") || j.at("characterization").is_null()) return c;
  const auto& ch = j.at("characterization");
  if (!ch.is_object()) bad("characterization must be an object");
  const std::string where = "characterization";
  if (ch.contains("data_source") && !ch.at("data_source").is_null()) {
    const auto& s = ch.at("data_source");
    c.answers.data_source = ingest::DataSource{
        expand_nonempty(optional_text(s, "platform_iri", where), where),
        optional_text(s, "platform_label", where).value_or(""),
        optional_text(s, "annotator_label", where).value_or("")};
  }
  if (auto kind = optional_text(ch, "acquisition_kind", where)) {
    c.answers.acquisition_kind = ingest::acquisition_kind_from_string(*kind);
    if (!c.answers.acquisition_kind) {
      bad("characterization.acquisition_kind must be native or manual_annotation");
    }
  }
  if (ch.contains("study") && !ch.at("study").is_null()) {
    const auto& s = ch.at("study");
    c.answers.study = ingest::StudyInfo{expand_nonempty(optional_text(s, "iri", where), where),
                                        optional_text(s, "label", where).value_or("")};
  }
  if (ch.contains("time_frame") && !ch.at("time_frame").is_null()) {
    const auto& t = ch.at("time_frame");
    c.answers.time_frame = ingest::TimeFrame{optional_text(t, "start", where).value_or(""),
                                             optional_text(t, "end", where).value_or("")};
  }
  return c;
}

json to_json(const DatasetConfig& c) {
  json cols = json::array();
  for (const auto& col : c.mapping.columns) {
    json jc = {{"column", col.column}};
    std::visit(
        [&](const auto& role) {
          using T = std::decay_t<decltype(role)>;
          if constexpr (std::is_same_v<T, ccsv::IdentifierRole>) {
            jc["role"] = "identifier";
            jc["entity_class"] = role.entity_class;
          } else if constexpr (std::is_same_v<T, ccsv::AttributeRole>) {
            jc["role"] = "attribute";
            jc["property"] = role.property;
          } else {
            jc["role"] = "reference";
            jc["target_class"] = role.target_class;
            if (role.property) jc["property"] = *role.property;
          }
        },
        col.role);
    if (col.value_separator) jc["value_separator"] = *col.value_separator;
    if (col.datatype) jc["datatype"] = *col.datatype;
    if (col.language) jc["language"] = *col.language;
    cols.push_back(std::move(jc));
  }
  json j = {{"id", c.id},
            {"mapping", {{"records_class", c.mapping.records_class}, {"columns", cols}}}};
  json ch = json::object();
  const auto& a = c.answers;
  if (a.data_source) {
    ch["data_source"] = {{"platform_iri", a.data_source->platform_iri},
                         {"platform_label", a.data_source->platform_label},
                         {"annotator_label", a.data_source->annotator_label}};
  }
  if (a.acquisition_kind) ch["acquisition_kind"] = ingest::to_string(*a.acquisition_kind);
  if (a.study) ch["study"] = {{"iri", a.study->iri}, {"label", a.study->label}};
  if (a.time_frame) {
    ch["time_frame"] = {{"start", a.time_frame->start}, {"end", a.time_frame->end}};
  }
  j["characterization"] = std::move(ch);
  return j;
}

}  // namespace forge::wire
