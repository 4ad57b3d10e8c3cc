#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyptet/report.hpp"

#include <fstream>
#include <sstream>

using namespace hyptet;
using nlohmann::json;

namespace {

report::Manifest fixed_manifest() {
  report::Manifest m;
  m.command = "search";
  m.input = "2,6,3;2,6,3";
  m.config = {{"cmax", "100"},       {"depth", "5"},   {"eps", "0.000000"},
              {"format", "records"}, {"threads", "1"}, {"tile_cap", "1000000"}};
  m.threads = 1;
  m.wall_ms = 0;
  return m;
}

std::string golden_path() {
  return std::string(HYPTET_TEST_DATA_DIR) + "/search_263_depth5.golden.json";
}

}  // namespace

TEST_CASE("nine-significant-digit rounding") {
  CHECK(report::round9(1.0) == 1.0);
  CHECK(report::round9(0.123456789123456) ==
        doctest::Approx(0.123456789).epsilon(1e-12));
  CHECK(report::round9(-3.141592653589793) ==
        doctest::Approx(-3.14159265).epsilon(1e-12));
  CHECK(report::round9(0.0) == 0.0);
}

TEST_CASE("manifest json carries the run configuration") {
  const json j = report::to_json(fixed_manifest());
  CHECK(j["command"] == "search");
  CHECK(j["version"] == report::kToolVersion);
  CHECK(j["config"]["depth"] == "5");
}

TEST_CASE("realize report shape") {
  const auto tet = tetra::realize({2, 7, 3, 2, 8, 3});
  const json j = report::realize_json(tet, fixed_manifest());
  CHECK(j["schema"] == report::kSchema);
  CHECK(j["faces"].size() == 4);
  CHECK(j["vertices"].size() == 4);
  int truncated = 0;
  for (const auto& v : j["vertices"]) truncated += v.contains("truncation_plane");
  CHECK(truncated > 0);
  // Normals are unit space-like after rounding.
  for (const auto& f : j["faces"]) {
    const double n = f[0].get<double>() * f[0].get<double>() +
                     f[1].get<double>() * f[1].get<double>() +
                     f[2].get<double>() * f[2].get<double>() -
                     f[3].get<double>() * f[3].get<double>();
    CHECK(n == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("search report matches the golden file byte for byte") {
  turnover::SearchConfig cfg;
  cfg.depth = 5;
  cfg.threads = 1;
  const auto rep = turnover::classify_spec(tetra::parse_spec("2,6,3;2,6,3"), cfg);
  const json j = report::strip_volatile(report::search_json(rep, fixed_manifest()));
  const std::string text = j.dump(2) + "\n";

  std::ifstream in(golden_path(), std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(text == buf.str());

  // The golden file itself round-trips through parse/dump.
  const json parsed = json::parse(buf.str());
  CHECK(parsed.dump(2) + "\n" == buf.str());
}

TEST_CASE("volatile fields are normalized for comparisons") {
  turnover::SearchConfig cfg;
  cfg.depth = 4;
  const auto rep = turnover::classify_spec(tetra::parse_spec("2,6,3;2,6,3"), cfg);
  report::Manifest m1 = fixed_manifest();
  m1.wall_ms = 1234;
  m1.threads = 8;
  m1.config["threads"] = "8";
  report::Manifest m2 = fixed_manifest();
  const json a = report::strip_volatile(report::search_json(rep, m1));
  const json b = report::strip_volatile(report::search_json(rep, m2));
  CHECK(a == b);
}

TEST_CASE("circuit and violation records") {
  polyhedra::MarkedGraph g = polyhedra::generalized_tet_graph({2, 3, 7, 2, 3, 7});
  const auto circuits = polyhedra::turnover_circuits(g);
  const json j = report::circuits_json(circuits, fixed_manifest());
  CHECK(j["circuits"].size() == circuits.size());
  for (const auto& c : j["circuits"]) {
    CHECK(c.contains("labels"));
    CHECK(c.contains("kind"));
  }

  g.edges[0].label = 1;
  const json v = report::violations_json(polyhedra::validate(g), fixed_manifest());
  CHECK(v["violations"].size() >= 1);
}
