#include "forge/service.hpp"

#include <httplib.h>

#include "forge/error.hpp"
#include "forge/turtle.hpp"
#include "forge/wire.hpp"

namespace forge::service {

using wire::json;

int status_for(const std::string& name) {
  if (name == "NotFoundError") return 404;
  if (name == "ConflictError" || name == "EmptyKgError") return 409;
  if (name == "IncompleteCharacterizationError" || name == "InvalidCharacterizationError") {
    return 422;
  }
  return 400;
}

namespace {

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", kJson);
}

void send_error(httplib::Response& res, int status, const std::string& name,
                const std::string& detail) {
  send_json(res, {{"error", name}, {"detail", detail}}, status);
}

json body_of(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  auto j = wire::parse(req.body);
  if (!j.is_object()) throw ConfigError("request body must be a JSON object");
  return j;
}

// Runs a handler, mapping pipeline errors onto status codes.
template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, status_for(e.name()), e.name(), e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "InternalError", e.what());
    }
  };
}

}  // namespace

struct Server::Impl {
  workspace::Workspace& ws;
  httplib::Server http;

  explicit Impl(workspace::Workspace& w) : ws(w) { routes(); }

  void routes() {
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    http.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    http.Post("/datasets", guarded([this](const auto& req, auto& res) {
      json body = body_of(req);
      auto csv = body.find("csv");
      if (csv == body.end() || !csv->is_string()) {
        throw ConfigError("request lacks a \"csv\" string");
      }
      auto config = wire::dataset_config_from_json(body);
      auto id = ws.ingest(csv->template get<std::string>(), config);
      send_json(res, {{"id", id}}, 201);
    }));
    http.Get("/datasets", guarded([this](const auto&, auto& res) {
      send_json(res, {{"datasets", ws.snapshot()->datasets}});
    }));

    http.Post("/kg/serialize", guarded([this](const auto&, auto& res) {
      res.set_content(ws.serialize(), kJson);
    }));
    http.Get("/kg/manifest", guarded([this](const auto&, auto& res) {
      auto s = ws.snapshot();
      if (!s->manifest) throw NotFoundError("the KG has not been serialized yet");
      res.set_content(*s->manifest, kJson);
    }));

    http.Get("/indicators/discovered", guarded([this](const auto& req, auto& res) {
      auto indicators = ws.discovered_json();
      std::string turtle = rdf::serialize_turtle(*ws.snapshot()->discovered);
      if (req.get_param_value("format") == "turtle") {
        res.set_content(turtle, "text/turtle");
        return;
      }
      send_json(res, {{"turtle", turtle}, {"indicators", indicators}});
    }));

    http.Post("/dashboards", guarded([this](const auto& req, auto& res) {
      json body = body_of(req);
      std::optional<std::string> id, title;
      if (body.contains("id") && body["id"].is_string()) id = body["id"].template get<std::string>();
      if (body.contains("title") && body["title"].is_string()) {
        title = body["title"].template get<std::string>();
      }
      std::vector<dashboard::VizSpec> edits;
      if (body.contains("visualizations")) {
        const auto& v = body["visualizations"];
        if (!v.is_array()) throw ConfigError("visualizations must be an array");
        for (const auto& e : v) edits.push_back(wire::viz_from_json(e));
      }
      send_json(res, wire::to_json(ws.create_dashboard(id, title, edits)), 201);
    }));
    http.Get("/dashboards", guarded([this](const auto&, auto& res) {
      json ids = json::array();
      for (const auto& [id, spec] : ws.snapshot()->dashboards) ids.push_back(id);
      send_json(res, {{"dashboards", ids}});
    }));
    http.Get(R"(/dashboards/([A-Za-z0-9_.-]+))", guarded([this](const auto& req, auto& res) {
      send_json(res, wire::to_json(ws.get_dashboard(req.matches[1])));
    }));
    http.Post(R"(/dashboards/([A-Za-z0-9_.-]+)/query)",
              guarded([this](const auto& req, auto& res) {
                json body = body_of(req);
                auto viz = body.find("viz");
                if (viz == body.end() || !viz->is_string()) {
                  throw ConfigError("request lacks a \"viz\" string");
                }
                auto filters = wire::filters_from_json(body.value("filters", json()));
                send_json(res, wire::to_json(ws.query(req.matches[1],
                                                      viz->template get<std::string>(), filters)));
              }));
    http.Post(R"(/dashboards/([A-Za-z0-9_.-]+)/select)",
              guarded([this](const auto& req, auto& res) {
                json body = body_of(req);
                auto selection = wire::filters_from_json(body.value("selection", json()));
                json out = json::object();
                for (const auto& [id, r] : ws.select(req.matches[1], selection)) {
                  out[id] = wire::to_json(r);
                }
                send_json(res, out);
              }));
  }
};

Server::Server(workspace::Workspace& ws) : impl_(std::make_unique<Impl>(ws)) {}
Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::run() { return impl_->http.listen_after_bind(); }
void Server::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}
void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace forge::service
