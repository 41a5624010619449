#include "forge/workspace.hpp"

#include <regex>

#include "forge/error.hpp"
#include "forge/ingest.hpp"
#include "forge/io.hpp"
#include "forge/kg_serializer.hpp"
#include "forge/namespaces.hpp"
#include "forge/turtle.hpp"

namespace forge::workspace {

namespace fs = std::filesystem;
using wire::json;

namespace {

constexpr const char* kKgFile = "kg.ttl";
constexpr const char* kManifestFile = "manifest.json";

bool valid_id(const std::string& id) {
  static const std::regex pattern(R"(^[A-Za-z0-9_-][A-Za-z0-9_.-]*$)");
  return std::regex_match(id, pattern);
}

std::vector<fs::path> files_with_extension(const fs::path& dir, const std::string& ext) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string role_name(const ccsv::ColumnRole& role) {
  switch (role.index()) {
    case 0: return "identifier";
    case 1: return "attribute";
    default: return "reference";
  }
}

std::vector<std::string> typed_subjects(const rdf::Graph& g,
                                        std::initializer_list<rdf::Term> classes) {
  std::set<std::string> out;
  for (const auto& cls : classes) {
    for (const auto& s : g.subjects(rdf::rdf_type(), cls)) out.insert(s.to_string());
  }
  return {out.begin(), out.end()};
}

}  // namespace

std::string manifest_json(const ccsv::CcsvBundle& bundle, const rdf::Graph& discovered,
                          const std::vector<std::string>& files,
                          const vocab::VocabularyRegistry& reg) {
  json docs = json::array(), classes = json::array();
  for (const auto& d : bundle.documents) {
    json cols = json::array();
    for (const auto& b : d.bindings()) {
      json c = {{"index", b.index}, {"name", b.name}, {"role", role_name(b.role)}};
      if (const auto* ref = std::get_if<ccsv::ReferenceRole>(&b.role)) {
        c["target_class"] = ref->target_class;
      }
      cols.push_back(std::move(c));
    }
    docs.push_back({{"file", d.name() + ".ccsv"},
                    {"name", d.name()},
                    {"records_class", d.records_class()},
                    {"dataset_iri", d.dataset_iri()},
                    {"header", d.header()},
                    {"columns", cols},
                    {"rows", d.rows().size()}});
    classes.push_back(d.records_class());
  }
  const auto& m = bundle.shared_metadata;
  json metadata = {
      {"studies", typed_subjects(m, {rdf::iri(ns::kHasco, "Study")})},
      {"deployments", typed_subjects(m, {rdf::iri(ns::kVstoi, "Deployment")})},
      {"acquisitions", typed_subjects(m, {rdf::iri(ns::kHasco, "DataAcquisition"),
                                          rdf::iri(ns::kHacito, "ManualDataAnnotation")})},
      {"triples", m.size()}};
  json indicators = json::array();
  for (const auto& def : vocab::load_indicator_catalog(discovered, reg)) {
    indicators.push_back({{"iri", def.iri}, {"label", def.label}});
  }
  json out = {{"documents", docs},
              {"classes", classes},
              {"metadata", metadata},
              {"indicators", indicators},
              {"files", files}};
  return out.dump(2) + "\n";
}

Workspace::Workspace(fs::path data_dir, Options options)
    : dir_(std::move(data_dir)), registry_(vocab::load_registry(options.extra_ontologies)) {
  rdf::Graph catalog = options.catalog ? *options.catalog : vocab::sample_catalog_graph();
  catalog_ = vocab::load_indicator_catalog(catalog, registry_);
  fs::create_directories(dir_);
  load_state();
}

void Workspace::load_state() {
  auto s = std::make_shared<Snapshot>();
  if (fs::exists(dir_ / kKgFile)) s->kg = rdf::parse_turtle(io::read_file(dir_ / kKgFile));
  for (const auto& p : files_with_extension(dir_ / "datasets", ".json")) {
    s->datasets.push_back(p.stem().string());
  }
  const fs::path bundle_dir = dir_ / "bundle";
  if (fs::exists(bundle_dir / kManifestFile)) {
    s->bundle = std::make_shared<const ccsv::CcsvBundle>(kg::load_bundle(bundle_dir));
    s->discovered = rdf::parse_turtle(io::read_file(bundle_dir / kg::kDiscoveredFile));
    s->manifest = io::read_file(bundle_dir / kManifestFile);
  }
  for (const auto& p : files_with_extension(dir_ / "dashboards", ".json")) {
    auto spec = wire::dashboard_from_json(wire::parse(io::read_file(p)));
    s->dashboards.emplace(spec.id, std::move(spec));
  }
  publish(std::move(s));
}

std::shared_ptr<const Snapshot> Workspace::snapshot() const {
  std::lock_guard lock(snap_mu_);
  return snap_;
}

void Workspace::publish(std::shared_ptr<const Snapshot> next) {
  std::lock_guard lock(snap_mu_);
  snap_ = std::move(next);
}

std::shared_ptr<const ccsv::CcsvBundle> Workspace::require_bundle(const Snapshot& s) const {
  if (!s.bundle) throw NotFoundError("the KG has not been serialized yet");
  return s.bundle;
}

std::string Workspace::ingest(const std::string& csv_text, const wire::DatasetConfig& config) {
  std::lock_guard writer(write_mu_);
  auto current = snapshot();
  std::string id = config.id.empty() ? ns::local_name(config.mapping.records_class) : config.id;
  if (!valid_id(id)) throw ConfigError("invalid dataset id '" + id + "'");
  if (std::binary_search(current->datasets.begin(), current->datasets.end(), id)) {
    throw ConflictError("dataset '" + id + "' already exists");
  }
  auto ch = ingest::characterize(config.answers);
  auto next = std::make_shared<Snapshot>();
  next->kg = ingest::load_dataset(csv_text, config.mapping, ch, current->kg, registry_);
  next->datasets = current->datasets;
  next->datasets.insert(
      std::upper_bound(next->datasets.begin(), next->datasets.end(), id), id);
  next->dashboards = current->dashboards;

  wire::DatasetConfig stored = config;
  stored.id = id;
  io::write_file(dir_ / "datasets" / (id + ".csv"), csv_text);
  io::write_file(dir_ / "datasets" / (id + ".json"), wire::to_json(stored).dump(2) + "\n");
  io::write_file(dir_ / kKgFile, rdf::serialize_turtle(next->kg));
  // The previous serialization no longer reflects the KG.
  fs::remove_all(dir_ / "bundle");
  publish(std::move(next));
  return id;
}

std::string Workspace::serialize() {
  std::lock_guard writer(write_mu_);
  auto current = snapshot();
  auto result = kg::serialize_and_discover(current->kg, registry_, catalog_);
  const fs::path bundle_dir = dir_ / "bundle";
  auto files = kg::write_output(bundle_dir, result.bundle, result.discovered);
  std::string manifest = manifest_json(result.bundle, result.discovered, files, registry_);
  io::write_file(bundle_dir / kManifestFile, manifest);

  auto next = std::make_shared<Snapshot>(*current);
  next->bundle = std::make_shared<const ccsv::CcsvBundle>(std::move(result.bundle));
  next->discovered = std::move(result.discovered);
  next->manifest = manifest;
  publish(std::move(next));
  return manifest;
}

dashboard::DashboardSpec Workspace::create_dashboard(std::optional<std::string> id,
                                                     std::optional<std::string> title,
                                                     const std::vector<dashboard::VizSpec>& edits) {
  std::lock_guard writer(write_mu_);
  auto current = snapshot();
  auto bundle = require_bundle(*current);
  auto spec = dashboard::generate_specs(*current->discovered, *bundle, registry_);
  for (const auto& edit : edits) {
    dashboard::validate_viz(*bundle, edit);
    auto it = std::find_if(spec.visualizations.begin(), spec.visualizations.end(),
                           [&](const auto& v) { return v.id == edit.id; });
    if (it != spec.visualizations.end()) {
      *it = edit;
    } else {
      spec.visualizations.push_back(edit);
    }
  }
  if (id) {
    if (!valid_id(*id)) throw ConfigError("invalid dashboard id '" + *id + "'");
    if (current->dashboards.contains(*id)) {
      throw ConflictError("dashboard '" + *id + "' already exists");
    }
    spec.id = *id;
  } else {
    std::size_t n = current->dashboards.size() + 1;
    while (current->dashboards.contains("dashboard-" + std::to_string(n))) ++n;
    spec.id = "dashboard-" + std::to_string(n);
  }
  if (title) spec.title = *title;

  io::write_file(dir_ / "dashboards" / (spec.id + ".json"), wire::to_json(spec).dump(2) + "\n");
  auto next = std::make_shared<Snapshot>(*current);
  next->dashboards[spec.id] = spec;
  publish(std::move(next));
  return spec;
}

dashboard::DashboardSpec Workspace::get_dashboard(const std::string& id) const {
  auto s = snapshot();
  auto it = s->dashboards.find(id);
  if (it == s->dashboards.end()) throw NotFoundError("no dashboard '" + id + "'");
  return it->second;
}

dashboard::AggregateResult Workspace::query(const std::string& dashboard_id,
                                            const std::string& viz_id,
                                            const std::vector<dashboard::FilterExpr>& filters) const {
  auto s = snapshot();
  auto it = s->dashboards.find(dashboard_id);
  if (it == s->dashboards.end()) throw NotFoundError("no dashboard '" + dashboard_id + "'");
  const auto& vizs = it->second.visualizations;
  auto v = std::find_if(vizs.begin(), vizs.end(), [&](const auto& x) { return x.id == viz_id; });
  if (v == vizs.end()) {
    throw NotFoundError("dashboard '" + dashboard_id + "' has no visualization '" + viz_id + "'");
  }
  return dashboard::aggregate(*require_bundle(*s), *v, filters);
}

std::map<std::string, dashboard::AggregateResult> Workspace::select(
    const std::string& dashboard_id, const std::vector<dashboard::FilterExpr>& selection) const {
  auto s = snapshot();
  auto it = s->dashboards.find(dashboard_id);
  if (it == s->dashboards.end()) throw NotFoundError("no dashboard '" + dashboard_id + "'");
  return dashboard::apply_selection(*require_bundle(*s), it->second, selection);
}

json Workspace::discovered_json() const {
  auto s = snapshot();
  if (!s->discovered) throw NotFoundError("the KG has not been serialized yet");
  const auto& g = *s->discovered;
  json out = json::array();
  for (const auto& def : vocab::load_indicator_catalog(g, registry_)) {
    discovery::SuitabilityResult r{def, {}, true};
    auto note = [&](const std::string& node) {
      auto subject = node.starts_with("_:") ? rdf::Term::blank(node.substr(2))
                                            : rdf::Term::iri(node);
      auto docs = g.objects(subject, rdf::iri(ns::kQoe, "coveredBy"));
      auto classes = g.objects(subject, rdf::iri(ns::kQoe, "coveringClass"));
      if (!docs.empty() && !classes.empty()) {
        r.covered.emplace(node, discovery::Coverage{classes.front().value(), docs.front().value()});
      }
    };
    for (const auto& d : def.dimensions) note(d.node);
    for (const auto& m : def.measures) note(m.node);
    out.push_back(wire::to_json(r));
  }
  return out;
}

}  // namespace forge::workspace
