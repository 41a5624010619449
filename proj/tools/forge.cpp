// forge: command-line front end for the ingest -> serialize -> discover ->
// dashboard pipeline. Every subcommand works on a data directory laid out as
// described in forge/workspace.hpp.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "forge/error.hpp"
#include "forge/io.hpp"
#include "forge/kg_serializer.hpp"
#include "forge/service.hpp"
#include "forge/turtle.hpp"
#include "forge/wire.hpp"
#include "forge/workspace.hpp"

namespace fs = std::filesystem;
using namespace forge;

namespace {

struct Common {
  std::string data_dir;
  std::string catalog;
  std::vector<std::string> ontologies;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--data-dir", c.data_dir, "Working directory (default: $FORGE_DATA_DIR or ./forge-data)");
  cmd->add_option("--catalog", c.catalog, "Indicator catalog (Turtle); the sample catalog by default");
  cmd->add_option("--ontology", c.ontologies, "Extra ontology (Turtle); repeatable");
}

workspace::Options options_for(const Common& c) {
  workspace::Options o;
  if (!c.catalog.empty()) o.catalog = rdf::parse_turtle(io::read_file(c.catalog));
  for (const auto& p : c.ontologies) o.extra_ontologies.push_back(rdf::parse_turtle(io::read_file(p)));
  return o;
}

fs::path data_dir_for(const Common& c) {
  if (!c.data_dir.empty()) return c.data_dir;
  if (const char* env = std::getenv("FORGE_DATA_DIR"); env && *env) return env;
  return "forge-data";
}

std::vector<dashboard::FilterExpr> read_filters(const std::string& arg) {
  if (arg.empty()) return {};
  std::string text = fs::exists(arg) ? io::read_file(arg) : arg;
  return wire::filters_from_json(wire::parse(text));
}

service::Server* running_server = nullptr;

extern "C" void on_signal(int) {
  if (running_server) running_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: city data to indicator dashboards"};
  app.require_subcommand(1);
  Common common;

  auto* ingest_cmd = app.add_subcommand("ingest", "Load a CSV dataset into the KG");
  add_common(ingest_cmd, common);
  std::string config_path, csv_path;
  ingest_cmd->add_option("--config", config_path, "Mapping and characterization (JSON)")->required();
  ingest_cmd->add_option("csv", csv_path, "CSV file")->required();

  auto* serialize_cmd = app.add_subcommand("serialize", "Serialize the KG to CCSV and discover indicators");
  add_common(serialize_cmd, common);
  std::string out_dir;
  serialize_cmd->add_option("--out", out_dir, "Also write the bundle to this directory");

  auto* discover_cmd = app.add_subcommand("discover", "Discover suitable indicators for a bundle");
  add_common(discover_cmd, common);
  std::string bundle_dir, discover_out;
  discover_cmd->add_option("--bundle", bundle_dir, "Bundle directory (default: <data-dir>/bundle)");
  discover_cmd->add_option("--out", discover_out, "Write the Turtle here instead of stdout");

  auto* dashboard_cmd = app.add_subcommand("dashboard", "Generate a dashboard or query one");
  add_common(dashboard_cmd, common);
  std::string edits_path, dashboard_id, query_viz, filters_arg;
  dashboard_cmd->add_option("--config", edits_path, "Visualization edits (JSON, as POST /dashboards)");
  dashboard_cmd->add_option("--id", dashboard_id, "Dashboard id");
  dashboard_cmd->add_option("--query", query_viz, "Aggregate this visualization of dashboard --id");
  dashboard_cmd->add_option("--filters", filters_arg, "Filters: JSON array or a file holding one");

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  add_common(serve_cmd, common);
  int port = 8080;
  std::string host = "127.0.0.1";
  serve_cmd->add_option("--port", port, "Port (0 picks a free one)");
  serve_cmd->add_option("--host", host, "Address to bind");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*discover_cmd) {
      // Works on a bundle alone; no data directory state is touched.
      fs::path dir = bundle_dir.empty() ? data_dir_for(common) / "bundle" : fs::path(bundle_dir);
      auto opts = options_for(common);
      auto reg = vocab::load_registry(opts.extra_ontologies);
      auto catalog = vocab::load_indicator_catalog(
          opts.catalog ? *opts.catalog : vocab::sample_catalog_graph(), reg);
      auto bundle = kg::load_bundle(dir);
      auto results = discovery::discover(discovery::extract_facts(bundle, catalog, reg));
      std::string turtle = rdf::serialize_turtle(discovery::export_discovered(results));
      if (discover_out.empty()) {
        std::cout << turtle;
      } else {
        io::write_file(discover_out, turtle);
      }
      return 0;
    }

    workspace::Workspace ws(data_dir_for(common), options_for(common));

    if (*ingest_cmd) {
      auto config = wire::dataset_config_from_json(wire::parse(io::read_file(config_path)));
      std::cout << ws.ingest(io::read_file(csv_path), config) << "\n";
    } else if (*serialize_cmd) {
      std::string manifest = ws.serialize();
      if (!out_dir.empty()) {
        auto s = ws.snapshot();
        kg::write_output(out_dir, *s->bundle, *s->discovered);
      }
      std::cout << manifest;
    } else if (*dashboard_cmd) {
      if (!query_viz.empty()) {
        if (dashboard_id.empty()) throw ConfigError("--query needs --id");
        auto result = ws.query(dashboard_id, query_viz, read_filters(filters_arg));
        std::cout << wire::to_json(result).dump(2) << "\n";
        return 0;
      }
      std::optional<std::string> id, title;
      if (!dashboard_id.empty()) id = dashboard_id;
      std::vector<dashboard::VizSpec> edits;
      if (!edits_path.empty()) {
        auto body = wire::parse(io::read_file(edits_path));
        if (body.contains("title") && body["title"].is_string()) title = body["title"];
        if (!id && body.contains("id") && body["id"].is_string()) id = body["id"];
        for (const auto& e : body.value("visualizations", wire::json::array())) {
          edits.push_back(wire::viz_from_json(e));
        }
      }
      std::cout << wire::to_json(ws.create_dashboard(id, title, edits)).dump(2) << "\n";
    } else if (*serve_cmd) {
      service::Server server(ws);
      int bound = server.bind(host, port);
      if (bound < 0) {
        std::cerr << "forge: cannot bind " << host << ":" << port << "\n";
        return 1;
      }
      running_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening on http://" << host << ":" << bound << std::endl;
      server.run();
      running_server = nullptr;
    }
  } catch (const Error& e) {
    std::cerr << "forge: " << e.name() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "forge: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
