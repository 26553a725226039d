#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "testutil.hpp"

namespace {

std::string l5_path() {
  static std::string path = testutil::write_temp("l5", testutil::kLineFive);
  return path;
}

nlohmann::json parse(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  REQUIRE(!j.is_discarded());
  return j;
}

}  // namespace

TEST_CASE("cover reports balls, edges and components") {
  auto r = testutil::run_cli("cover --input " + l5_path() + " --epsilon 1.5");
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = parse(r.out);
  CHECK(j["tool"] == "fluidcat");
  CHECK(j["command"] == "cover");
  CHECK(j["config"]["epsilon"] == 1.5);
  CHECK(j["result"]["balls"]["b"] == nlohmann::json::array({"a", "b", "c"}));
  CHECK(j["result"]["edges"].size() == 3);
  CHECK(j["result"]["components"].size() == 2);
  CHECK(j["result"]["connected"] == false);
}

TEST_CASE("system reports levels, strata and stabilization") {
  auto r = testutil::run_cli("system --input " + l5_path() + " --epsilon 1.5 --levels 3");
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = parse(r.out)["result"];
  REQUIRE(j["levels"].size() == 4);
  CHECK(j["levels"][2]["points"][0]["members"] == nlohmann::json::array({"a", "b", "c"}));
  CHECK(j["levels"][2]["points"][0]["strata"] ==
        nlohmann::json::array({{"a", "b"}, {"c"}}));
  CHECK(j["stabilization"][0]["level"] == 3);
  CHECK(j["stabilization"][4]["level"] == 1);
}

TEST_CASE("strata requires a positive level") {
  auto ok = testutil::run_cli("strata --input " + l5_path() +
                              " --epsilon 1.5 --levels 2 --core a");
  REQUIRE(ok.exit_code == 0);
  CHECK(parse(ok.out)["result"]["points"][0]["strata"] ==
        nlohmann::json::array({{"a", "b"}, {"c"}}));
  auto bad = testutil::run_cli("strata --input " + l5_path() + " --epsilon 1.5 --levels 0");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("colimit lists stable members with their stabilization level") {
  auto r = testutil::run_cli("colimit --input " + l5_path() + " --epsilon 1.5");
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = parse(r.out)["result"]["colimits"];
  REQUIRE(j.size() == 5);
  CHECK(j[0]["members"] == nlohmann::json::array({"a", "b", "c", "d"}));
  CHECK(j[0]["stabilization"] == 3);
  CHECK(j[4]["members"] == nlohmann::json::array({"e"}));
  CHECK(j[4]["stabilization"] == 1);
}

TEST_CASE("wavefn prints the normalized distribution") {
  auto r = testutil::run_cli("wavefn --input " + l5_path() +
                             " --epsilon 1.5 --levels 2 --lambda 0.5 --core a");
  REQUIRE(r.exit_code == 0);
  nlohmann::json w = parse(r.out)["result"]["waves"][0];
  CHECK(w["core"] == "a");
  CHECK(w["prob"]["a"] == 0.4);
  CHECK(w["prob"]["c"] == 0.2);
  auto bad = testutil::run_cli("wavefn --input " + l5_path() +
                               " --epsilon 1.5 --levels 2 --lambda 1.0");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("towers and bundle commands expose the groupoid data") {
  auto t = testutil::run_cli("towers --input " + l5_path() +
                             " --epsilon 1.5 --levels 1 --core a");
  REQUIRE(t.exit_code == 0);
  nlohmann::json tower = parse(t.out)["result"]["towers"][0];
  CHECK(tower["sections"].size() == 4);
  CHECK(tower["sections"][0]["members"] == nlohmann::json::array({"a", "b"}));

  auto b = testutil::run_cli("bundle --input " + l5_path() + " --epsilon 1.5 --levels 1");
  REQUIRE(b.exit_code == 0);
  nlohmann::json br = parse(b.out)["result"];
  CHECK(br["base"]["objects"] == 5);
  CHECK(br["elements"]["morphisms"] == 25);
  CHECK(br["checks"]["cover"]["passed"] == true);
  CHECK(br["checks"]["cofibered"]["passed"] == true);
  CHECK(br["checks"]["duality"]["passed"] == true);
}

TEST_CASE("check runs every suite and reflects failures in the exit code") {
  auto ok = testutil::run_cli("check --input " + l5_path() + " --epsilon 1.5 --levels 3");
  REQUIRE(ok.exit_code == 0);
  nlohmann::json j = parse(ok.out)["result"];
  CHECK(j["passed"] == true);
  REQUIRE(j["suites"].size() == 9);
  std::vector<std::string> names;
  for (const auto& s : j["suites"]) {
    CHECK(s["passed"] == true);
    names.push_back(s["name"].get<std::string>());
  }
  CHECK(names == std::vector<std::string>{
                     "category-laws", "delta-functor-laws", "strata-partition",
                     "colimit-oracle", "monoidal-laws", "delta-tensor-distributivity",
                     "cofibration", "duality-roundtrip", "wavefn-normalization"});

  auto bad = testutil::run_cli("check --input " + l5_path() +
                               " --epsilon 1.5 --inject-fault category-table");
  CHECK(bad.exit_code == 1);
  nlohmann::json bj = parse(bad.out)["result"];
  CHECK(bj["passed"] == false);
  CHECK(bj["suites"][0]["name"] == "category-laws");
  CHECK(bj["suites"][0]["failures"].size() > 0);
}

TEST_CASE("identical invocations produce identical bytes") {
  std::string args = "check --input " + l5_path() + " --epsilon 1.5 --levels 3 --arity 2";
  auto one = testutil::run_cli(args);
  auto two = testutil::run_cli(args);
  REQUIRE(one.exit_code == 0);
  CHECK(one.out == two.out);
  CHECK(!one.out.empty());
}

TEST_CASE("dot output renders where supported and is refused elsewhere") {
  auto dot = testutil::run_cli("cover --input " + l5_path() + " --epsilon 1.5 --format dot");
  REQUIRE(dot.exit_code == 0);
  CHECK(dot.out.find("graph cover {") == 0);
  CHECK(dot.out.find("\"a\" -- \"b\"") != std::string::npos);

  auto sys = testutil::run_cli("system --input " + l5_path() +
                               " --epsilon 1.5 --levels 2 --format dot");
  REQUIRE(sys.exit_code == 0);
  CHECK(sys.out.find("digraph system {") == 0);

  auto refused = testutil::run_cli("colimit --input " + l5_path() +
                                   " --epsilon 1.5 --format dot");
  CHECK(refused.exit_code == 2);
}

TEST_CASE("results can be written to a file") {
  std::string out_path = "/tmp/fluidcat_test_out.json";
  std::remove(out_path.c_str());
  auto r = testutil::run_cli("cover --input " + l5_path() + " --epsilon 1.5 --output " +
                             out_path);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out_path);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(parse(text)["command"] == "cover");
}

TEST_CASE("bad inputs exit with the configuration code") {
  CHECK(testutil::run_cli("cover --input /nonexistent.json --epsilon 1.5").exit_code == 2);
  CHECK(testutil::run_cli("cover --input " + l5_path() + " --epsilon 0").exit_code == 2);
  CHECK(testutil::run_cli("cover --input " + l5_path()).exit_code == 2);
  CHECK(testutil::run_cli("nonsense --input " + l5_path() + " --epsilon 1").exit_code == 2);
  CHECK(testutil::run_cli("strata --input " + l5_path() +
                          " --epsilon 1.5 --levels 1 --core zz")
            .exit_code == 2);
  std::string bad = testutil::write_temp("asym",
                                         R"({"atoms":["a","b"],
      "metric":{"type":"matrix","d":[[0,1],[2,0]]}})");
  CHECK(testutil::run_cli("cover --input " + bad + " --epsilon 1.5").exit_code == 2);
}
