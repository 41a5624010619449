#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "forge/io.hpp"
#include "forge/wire.hpp"
#include "support/fixture.hpp"

using namespace forge;
using namespace forge::testing;

namespace {

struct Run {
  int status;
  std::string out;
};

Run forge_cli(const std::string& args) {
  std::string cmd = std::string(FORGE_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = ::popen(cmd.c_str(), "r");
  if (p == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (auto n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int st = ::pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string quote(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST(Cli, FullPipeline) {
  auto dir = temp_dir("cli");
  auto dd = " --data-dir " + quote(dir);
  for (const char* name : {"stations", "trips"}) {
    auto r = forge_cli(std::string("ingest") + dd + " --config " +
                       quote(source_path("data/fixtures/" + std::string(name) + ".json")) + " " +
                       quote(source_path("data/fixtures/" + std::string(name) + ".csv")));
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(r.out, std::string(name) + "\n");
  }

  auto out = dir / "export";
  auto r = forge_cli("serialize" + dd + " --out " + quote(out));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(wire::parse(r.out)["documents"].size(), 2u);
  EXPECT_TRUE(std::filesystem::exists(out / "Bicycle-Share_Station.ccsv"));

  r = forge_cli("discover --bundle " + quote(out));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("Trips by departure station"), std::string::npos);

  r = forge_cli("dashboard" + dd + " --id city");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(wire::parse(r.out)["visualizations"].size(), 2u);

  r = forge_cli("dashboard" + dd + " --id city --query TripsByDepartureStation.origin_station_id");
  ASSERT_EQ(r.status, 0) << r.out;
  auto groups = wire::parse(r.out)["groups"];
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[0]["value"], 3);

  r = forge_cli("dashboard" + dd +
                " --id city --query TripsByDepartureStation.origin_station_id --filters "
                "'[{\"target\":{\"document\":\"Bicycle-Share_Trip\",\"column\":\"user_id\"},"
                "\"op\":\"eq\",\"values\":[\"u1\"]}]'");
  ASSERT_EQ(r.status, 0) << r.out;
  groups = wire::parse(r.out)["groups"];
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0]["value"], 2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ErrorsExitNonZero) {
  auto dir = temp_dir("cli-err");
  auto r = forge_cli("serialize --data-dir " + quote(dir));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("EmptyKgError"), std::string::npos);
  r = forge_cli("bogus");
  EXPECT_NE(r.status, 0);
  std::filesystem::remove_all(dir);
}

TEST(Cli, DiscoverWithEmptyCatalog) {
  auto dir = temp_dir("cli-empty");
  auto dd = " --data-dir " + quote(dir);
  for (const char* name : {"stations", "trips"}) {
    ASSERT_EQ(forge_cli(std::string("ingest") + dd + " --config " +
                        quote(source_path("data/fixtures/" + std::string(name) + ".json")) + " " +
                        quote(source_path("data/fixtures/" + std::string(name) + ".csv")))
                  .status,
              0);
  }
  ASSERT_EQ(forge_cli("serialize" + dd).status, 0);
  io::write_file(dir / "empty.ttl", "");
  auto r = forge_cli("discover" + dd + " --catalog " + quote(dir / "empty.ttl"));
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out, "");
  std::filesystem::remove_all(dir);
}
