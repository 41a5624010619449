#include <gtest/gtest.h>

#include "forge/error.hpp"
#include "forge/io.hpp"
#include "forge/workspace.hpp"
#include "support/fixture.hpp"

using namespace forge;
using namespace forge::testing;

namespace {

void load_fixture(workspace::Workspace& ws) {
  for (const char* name : {"stations", "trips"}) ws.ingest(fixture_csv(name), fixture_config(name));
}

class WorkspaceTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = temp_dir("ws"); }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

}  // namespace

TEST_F(WorkspaceTest, IngestPersistsDatasets) {
  workspace::Workspace ws(dir_);
  EXPECT_EQ(ws.ingest(fixture_csv("stations"), fixture_config("stations")), "stations");
  EXPECT_TRUE(std::filesystem::exists(dir_ / "kg.ttl"));
  EXPECT_TRUE(std::filesystem::exists(dir_ / "datasets" / "stations.csv"));
  EXPECT_EQ(ws.snapshot()->datasets, std::vector<std::string>{"stations"});
  EXPECT_THROW(ws.ingest(fixture_csv("stations"), fixture_config("stations")), ConflictError);
}

TEST_F(WorkspaceTest, BadIdAndFailedIngestLeaveStateUnchanged) {
  workspace::Workspace ws(dir_);
  auto cfg = fixture_config("stations");
  cfg.id = "../evil";
  EXPECT_THROW(ws.ingest(fixture_csv("stations"), cfg), ConfigError);
  cfg = fixture_config("stations");
  cfg.answers.study.reset();
  EXPECT_THROW(ws.ingest(fixture_csv("stations"), cfg), IncompleteCharacterizationError);
  EXPECT_TRUE(ws.snapshot()->kg.empty());
  EXPECT_TRUE(ws.snapshot()->datasets.empty());
}

TEST_F(WorkspaceTest, SerializeBeforeIngest) {
  workspace::Workspace ws(dir_);
  EXPECT_THROW(ws.serialize(), EmptyKgError);
  EXPECT_THROW(ws.create_dashboard(std::nullopt, std::nullopt, {}), NotFoundError);
  EXPECT_THROW(ws.discovered_json(), NotFoundError);
}

TEST_F(WorkspaceTest, SerializeIsByteIdentical) {
  workspace::Workspace ws(dir_);
  load_fixture(ws);
  auto m1 = ws.serialize();
  auto trips1 = io::read_file(dir_ / "bundle" / "Bicycle-Share_Trip.ccsv");
  auto m2 = ws.serialize();
  EXPECT_EQ(m1, m2);
  EXPECT_EQ(trips1, io::read_file(dir_ / "bundle" / "Bicycle-Share_Trip.ccsv"));
  auto j = wire::parse(m1);
  EXPECT_EQ(j["documents"].size(), 2u);
  EXPECT_EQ(j["indicators"].size(), 1u);
  EXPECT_EQ(j["indicators"][0]["label"], "Trips by departure station");
  EXPECT_EQ(io::read_file(dir_ / "bundle" / "manifest.json"), m1);
}

TEST_F(WorkspaceTest, DashboardLifecycle) {
  workspace::Workspace ws(dir_);
  load_fixture(ws);
  ws.serialize();
  auto d = ws.create_dashboard(std::nullopt, std::nullopt, {});
  EXPECT_EQ(d.id, "dashboard-1");
  EXPECT_EQ(d.visualizations.size(), 2u);

  dashboard::VizSpec card;
  card.id = "total";
  card.title = "trips";
  card.chart_type = dashboard::ChartType::kNumber;
  card.measure_binding = {"Bicycle-Share_Trip", "id", vocab::AggregateFunction::kCount};
  auto mine = ws.create_dashboard("city", "City", {card});
  EXPECT_EQ(mine.visualizations.size(), 3u);
  EXPECT_THROW(ws.create_dashboard("city", std::nullopt, {}), ConflictError);

  auto r = ws.query("city", "total", {});
  ASSERT_EQ(r.groups.size(), 1u);
  EXPECT_EQ(r.groups[0].value, 5);
  auto sel = ws.select("city", {{"Bicycle-Share_Trip", "origin_station_id", dashboard::FilterOp::kEq, {"s1"}}});
  EXPECT_EQ(sel.at("total").groups[0].value, 3);
  EXPECT_THROW(ws.query("nope", "total", {}), NotFoundError);
  EXPECT_THROW(ws.query("city", "nope", {}), NotFoundError);

  dashboard::VizSpec broken = card;
  broken.measure_binding.column = "missing";
  EXPECT_THROW(ws.create_dashboard("broken", std::nullopt, {broken}), UnknownColumnError);
}

TEST_F(WorkspaceTest, StateSurvivesRestart) {
  {
    workspace::Workspace ws(dir_);
    load_fixture(ws);
    ws.serialize();
    ws.create_dashboard("city", std::nullopt, {});
  }
  workspace::Workspace ws(dir_);
  auto s = ws.snapshot();
  EXPECT_EQ(s->datasets, (std::vector<std::string>{"stations", "trips"}));
  ASSERT_TRUE(s->bundle);
  EXPECT_EQ(s->bundle->documents.size(), 2u);
  EXPECT_EQ(ws.get_dashboard("city").visualizations.size(), 2u);
  EXPECT_EQ(ws.query("city", "TripsByDepartureStation.origin_station_id", {}).groups.size(), 3u);
}

TEST_F(WorkspaceTest, IngestInvalidatesBundle) {
  workspace::Workspace ws(dir_);
  ws.ingest(fixture_csv("stations"), fixture_config("stations"));
  ws.serialize();
  ASSERT_TRUE(ws.snapshot()->bundle);
  ws.ingest(fixture_csv("trips"), fixture_config("trips"));
  EXPECT_FALSE(ws.snapshot()->bundle);
  EXPECT_FALSE(std::filesystem::exists(dir_ / "bundle"));
}

TEST_F(WorkspaceTest, DiscoveredJson) {
  workspace::Workspace ws(dir_);
  load_fixture(ws);
  ws.serialize();
  auto j = ws.discovered_json();
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
}
