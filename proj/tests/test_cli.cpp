#include <doctest.h>

#include <fstream>
#include <set>

#include "hbtop/cli/app.hpp"
#include "hbtop/cli/generators.hpp"

using namespace hbtop;
using namespace hbtop::cli;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(HBTOP_DATA_DIR) + "/" + name; }

RunResult run_checked(const RunConfig& c) {
  RunResult r = run(c);
  auto problems = validate_report_shape(r.report);
  CHECK_MESSAGE(problems.empty(), r.report.dump());
  return r;
}

RunConfig config(std::string command) {
  RunConfig c;
  c.command = std::move(command);
  c.workers = 1;
  return c;
}

}  // namespace

TEST_CASE("homology command") {
  RunConfig c = config("homology");
  c.inputs = {data("hexagon.cx"), data("circle.hasse"), data("torus.cx")};
  RunResult r = run_checked(c);
  CHECK(r.exit_code == 0);
  const json& items = r.report["payload"]["inputs"];
  REQUIRE(items.size() == 3);
  CHECK(items[0]["homology_text"] == "H1=Z");
  CHECK(items[0]["homology"]["degrees"]["1"]["rank"] == 1);
  CHECK(items[1]["kind"] == "poset");
  CHECK(items[1]["homology_text"] == "H1=Z");
  CHECK(items[2]["homology_text"] == "H1=Z^2, H2=Z");
  CHECK(items[2]["euler_characteristic"] == -1);
}

TEST_CASE("dims command") {
  RunConfig c = config("dims");
  c.gmax = 3;
  RunResult r = run_checked(c);
  CHECK(r.exit_code == 0);
  bool found = false;
  for (const auto& row : r.report["payload"]["rows"])
    if (row["g"] == 2 && row["b"] == 0 && row["p"] == 0) {
      found = true;
      CHECK(row["vcd"] == 3);
      CHECK(row["nu"] == 1);
      CHECK(row["duality"]["ok"] == true);
    }
  CHECK(found);
  CHECK(r.report["summary"]["identities_failed"] == 0);
}

TEST_CASE("lemma suite hocolim2") {
  RunConfig c = config("lemma-suite");
  c.lemma = "hocolim2";
  c.count = 100;
  c.seed = 7;
  RunResult r = run_checked(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["payload"]["instances"].size() == 100);
  CHECK(r.report["summary"]["violated"] == 0);
  CHECK(r.report["summary"]["verified"].get<int>() >= 50);
  std::set<std::uint64_t> seeds;
  for (const auto& inst : r.report["payload"]["instances"]) seeds.insert(inst["seed"].get<std::uint64_t>());
  CHECK(seeds.size() == 100);
}

TEST_CASE("reports are byte-identical across reruns and worker counts") {
  for (const char* lemma : {"fibre", "stratification", "rgb"}) {
    RunConfig c = config("lemma-suite");
    c.lemma = lemma;
    c.count = 30;
    c.seed = 99;
    std::string first = render(run_checked(c).report);
    CHECK(render(run(c).report) == first);
    c.workers = 4;
    CHECK(render(run(c).report) == first);
    c.seed = 100;
    CHECK(render(run(c).report) != first);
  }
}

TEST_CASE("every lemma generator keeps the suite clean") {
  for (const auto& id : lemma_ids()) {
    RunConfig c = config("lemma-suite");
    c.lemma = id;
    c.count = 40;
    c.seed = 2024;
    RunResult r = run_checked(c);
    CHECK_MESSAGE(r.exit_code == 0, id);
    CHECK_MESSAGE(r.report["summary"]["verified"].get<int>() >= 20, id);
  }
}

TEST_CASE("rgb-check command") {
  RunConfig c = config("rgb-check");
  c.inputs = {data("one_vertex.marked"), data("two_vertex.marked"), data("cone_over_square.marked")};
  RunResult r = run_checked(c);
  CHECK(r.exit_code == 0);
  const json& inst = r.report["payload"]["instances"];
  CHECK(inst[0]["report"]["lhs"] == json::parse(R"({"degrees":{"0":{"rank":1,"torsion":[]}}})"));
  CHECK(inst[1]["report"]["lhs"]["degrees"].empty());
  CHECK(inst[2]["report"]["rhs"]["degrees"]["2"]["rank"] == 1);
  CHECK(r.report["summary"]["non_monotone_steps"] == 0);

  RunConfig gen = config("rgb-check");
  gen.count = 25;
  gen.seed = 5;
  RunResult g = run_checked(gen);
  CHECK(g.exit_code == 0);
  CHECK(g.report["payload"]["instances"][0].contains("marked"));
  gen.max_vertices = 6;
  CHECK(run_checked(gen).exit_code == 2);
}

TEST_CASE("cutdata command") {
  RunConfig c = config("cutdata");
  c.genus = 3;
  c.kmax = 6;
  RunResult r = run_checked(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["summary"]["count"] == 26);
  CHECK(r.report["summary"]["max_link_dimension"] == 2);
  for (const auto& item : r.report["payload"]["cuts"])
    CHECK(item["link_type"]["q"] == item["expected_dimension"]);
}

TEST_CASE("strat-check command") {
  RunConfig c = config("strat-check");
  c.inputs = {data("segment.cx")};
  c.poset_input = data("segment_strata.hasse");
  c.labels_input = data("segment.labels");
  RunResult r = run_checked(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["summary"]["verified"] == 1);

  c.poset_input.clear();
  c.labels_input.clear();
  c.inputs = {data("projective_plane.cx")};
  r = run_checked(c);
  CHECK(r.report["payload"]["instances"][0]["report"]["lhs"]["degrees"]["1"]["torsion"][0] == 2);

  RunConfig gen = config("strat-check");
  gen.count = 20;
  CHECK(run_checked(gen).exit_code == 0);
}

TEST_CASE("input errors carry file and line") {
  RunConfig c = config("homology");
  c.inputs = {data("bad.cx")};
  RunResult r = run_checked(c);
  CHECK(r.exit_code == 2);
  CHECK(r.report["status"] == "error");
  CHECK(r.report["error"]["line"] == 2);
  CHECK(r.report["error"]["path"] == data("bad.cx"));

  c.inputs = {data("no_such_file.cx")};
  CHECK(run_checked(c).exit_code == 2);
  c.inputs = {data("segment.labels")};
  CHECK(run_checked(c).exit_code == 2);

  RunConfig s = config("strat-check");
  s.inputs = {data("segment.cx")};
  s.poset_input = data("segment_strata.hasse");
  s.labels_input = data("hexagon.cx");
  r = run_checked(s);
  CHECK(r.exit_code == 2);
  CHECK(r.report["error"]["line"] == 2);

  RunConfig u = config("frobnicate");
  CHECK(run_checked(u).exit_code == 2);
  RunConfig l = config("lemma-suite");
  l.lemma = "nerve";
  CHECK(run_checked(l).exit_code == 2);
  RunConfig k = config("cutdata");
  k.kmax = 7;
  CHECK(run_checked(k).exit_code == 2);
  RunConfig d = config("dims");
  d.gmax = -1;
  CHECK(run_checked(d).exit_code == 2);
}

TEST_CASE("report shape validation") {
  CHECK_FALSE(validate_report_shape(json::array()).empty());
  json ok{{"command", "dims"}, {"config", json::object()}, {"status", "ok"}, {"payload", json::object()},
          {"summary", json::object()}};
  CHECK(validate_report_shape(ok).empty());
  json bad = ok;
  bad["status"] = "fine";
  CHECK_FALSE(validate_report_shape(bad).empty());
  bad = ok;
  bad["extra"] = 1;
  CHECK_FALSE(validate_report_shape(bad).empty());
  bad = ok;
  bad["status"] = "error";
  CHECK_FALSE(validate_report_shape(bad).empty());
  bad.erase("summary");
  CHECK_FALSE(validate_report_shape(bad).empty());
}

TEST_CASE("instance seeds") {
  CHECK(instance_seed(7, 0) != instance_seed(7, 1));
  CHECK(instance_seed(7, 0) != instance_seed(8, 0));
  CHECK(instance_seed(7, 3) == instance_seed(7, 3));
  CHECK_THROWS_AS(run_lemma_instance("nerve", 1), std::invalid_argument);
}
