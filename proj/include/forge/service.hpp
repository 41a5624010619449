#pragma once

#include <memory>
#include <string>

#include "forge/workspace.hpp"

namespace forge::service {

// HTTP facade over a Workspace.
//
//   POST /datasets                  {"csv": ..., "id"?, "mapping", "characterization"} -> 201 {"id"}
//   GET  /datasets                  -> {"datasets": [...]}
//   POST /kg/serialize              -> manifest
//   GET  /kg/manifest               -> manifest
//   GET  /indicators/discovered     -> {"turtle", "indicators"}; ?format=turtle for Turtle
//   POST /dashboards                {"id"?, "title"?, "visualizations"?: [...]} -> 201 spec
//   GET  /dashboards                -> {"dashboards": [...]}
//   GET  /dashboards/{id}           -> spec
//   POST /dashboards/{id}/query     {"viz", "filters"?} -> AggregateResult
//   POST /dashboards/{id}/select    {"selection"?: [...]} -> {viz id: AggregateResult}
//
// Errors are {"error": name, "detail": message} with 400 for invalid input,
// 404 for unknown ids, 409 for conflicts and an empty KG, 422 for incomplete
// or invalid characterizations.
class Server {
 public:
  explicit Server(workspace::Workspace& ws);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool run();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// HTTP status for an error name.
int status_for(const std::string& error_name);

}  // namespace forge::service
