#include "catch_amalgamated.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "edgereg/cli.hpp"

using namespace edgereg;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(EDGEREG_DATA_DIR) + "/" + name; }

fs::path scratch_dir(const char* name) {
  const fs::path p = fs::temp_directory_path() / ("edgereg_test_" + std::string(name));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("analyze", "[cli]") {
  const auto c4 = run({"analyze", "--graph", data("c4.edges")});
  REQUIRE(c4.code == 0);
  const Json j = c4.json();
  CHECK(j["induced_matching_number"] == 1);
  CHECK(j["odd_girth"] == "inf");
  CHECK(j["very_well_covered"] == true);
  CHECK(j["certificate"] == Json::parse(R"(["0-1","2-3"])"));

  const auto c6 = run({"analyze", "--graph", data("c6.edges")});
  REQUIRE(c6.code == 0);
  CHECK(c6.json()["very_well_covered"] == false);
  CHECK(c6.json()["certificate"].is_null());

  const fs::path dir = scratch_dir("analyze");
  write(dir / "empty.edges", "");
  write(dir / "bad.edges", "0 1\n1 q\n");
  CHECK(run({"analyze", "--graph", (dir / "empty.edges").string()}).code == 2);
  const auto bad = run({"analyze", "--graph", (dir / "bad.edges").string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 2") != std::string::npos);
  CHECK(run({"analyze", "--graph", (dir / "missing.edges").string()}).code == 2);
  CHECK(run({"analyze"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"analyze", "--graph", data("c5.edges"), "--format", "text"}).out.find("odd_girth") != std::string::npos);
}

TEST_CASE("regularity", "[cli]") {
  const auto c4 = run({"regularity", "--graph", data("c4.edges"), "--power", "2", "--engine", "both"});
  REQUIRE(c4.code == 0);
  CHECK(c4.json()["regularity"] == 4);
  CHECK(c4.json()["engines_agree"] == true);
  CHECK(c4.json()["field"] == "QQ");

  CHECK(run({"regularity", "--graph", data("k2.edges"), "--power", "3"}).json()["regularity"] == 6);
  CHECK(run({"regularity", "--graph", data("c5.edges"), "--power", "2"}).json()["regularity"] == 4);
  CHECK(run({"regularity", "--graph", data("c5.edges"), "--engine", "hochster", "--characteristic", "2"})
            .json()["regularity"] == 3);

  const auto text = run({"regularity", "--graph", data("c4.edges"), "--format", "text"});
  CHECK(text.out.find("total:") != std::string::npos);
  CHECK(run({"regularity", "--graph", data("c4.edges"), "--engine", "magic"}).code == 2);
  CHECK(run({"regularity", "--graph", data("c4.edges"), "--characteristic", "6"}).code == 2);
  CHECK(run({"regularity", "--graph", data("c4.edges"), "--power", "0"}).code == 2);
}

TEST_CASE("colon", "[cli]") {
  const auto p4 = run({"colon", "--graph", data("p4.edges"), "--edges", "1-2"});
  REQUIRE(p4.code == 0);
  CHECK(p4.json()["new_edges"] == Json::parse(R"(["0-3"])"));
  CHECK(p4.json()["oracle_agrees"] == true);
  CHECK(p4.json()["witnesses"]["0-3"]["walk"] == Json::parse("[0,1,2,3]"));

  const auto c3 = run({"colon", "--graph", data("c3.edges"), "--edges", "1-2"});
  CHECK(c3.json()["squares"] == Json::parse("[0]"));
  CHECK(c3.json()["squarefree"] == false);

  const auto c5 = run({"colon", "--graph", data("c5.edges"), "--edges", "1-2"});
  CHECK(c5.json()["new_edges"] == Json::parse(R"(["0-3"])"));

  const auto dot = run({"colon", "--graph", data("c3.edges"), "--edges", "1-2", "--format", "dot"});
  CHECK(dot.out.starts_with("graph colon {"));
  CHECK(dot.out.find("[peripheries=2]") != std::string::npos);

  CHECK(run({"colon", "--graph", data("c5.edges"), "--edges", "0-2"}).code == 2);
  CHECK(run({"colon", "--graph", data("c5.edges"), "--edges", "0-"}).code == 2);
}

TEST_CASE("verify", "[cli]") {
  const auto r = run({"verify", "--graph", data("c4.edges"), "--check", "katzman", "--check", "main_theorem", "--power", "2"});
  REQUIRE(r.code == 0);
  const Json res = r.json()["results"];
  REQUIRE(res.size() == 2);
  CHECK(res[0]["verdict"] == "pass");
  CHECK(res[1]["verdict"] == "pass");

  const auto lemma = run({"verify", "--graph", data("c7.edges"), "--check", "lemma_colon", "--edges", "0-1,3-4"});
  CHECK(lemma.code == 0);
  CHECK(lemma.json()["results"].size() == 2);
  CHECK(run({"verify", "--graph", data("c7.edges"), "--check", "lemma_colon"}).code == 2);
  CHECK(run({"verify", "--graph", data("c7.edges"), "--check", "foo"}).code == 2);
  const auto hunt = run({"verify", "--graph", data("c4.edges"), "--check", "main_theorem", "--power", "3", "--k", "3",
                         "--hunter"});
  CHECK(hunt.json()["results"][0]["verdict"] == "observation");
}

TEST_CASE("sweep and generate", "[cli]") {
  const fs::path dir = scratch_dir("sweep");
  write(dir / "cfg.json", R"({"family":{"kind":"exhaustive-all","n":4,"n_min":2},"checks":["katzman","bht"],"params":{"max_power":2}})");
  const auto a = run({"sweep", "--config", (dir / "cfg.json").string(), "--out", (dir / "a").string(), "--jobs", "1"});
  REQUIRE(a.code == 0);
  const auto b = run({"sweep", "--config", (dir / "cfg.json").string(), "--out", (dir / "b").string(), "--jobs", "3"});
  REQUIRE(b.code == 0);
  Json ja = Json::parse(cli::read_file((dir / "a" / "report.json").string()));
  Json jb = Json::parse(cli::read_file((dir / "b" / "report.json").string()));
  CHECK(ja["instances"] == 10);
  CHECK(ja["summary"]["katzman"]["pass"] == 10);
  CHECK(ja["summary"]["bht"]["fail"] == 0);
  ja["params"].erase("jobs");
  jb["params"].erase("jobs");
  CHECK(ja == jb);
  CHECK(cli::read_file((dir / "a" / "report.csv").string()) == cli::read_file((dir / "b" / "report.csv").string()));

  const auto again = run({"sweep", "--config", (dir / "cfg.json").string(), "--jobs", "1"});
  const auto twice = run({"sweep", "--config", (dir / "cfg.json").string(), "--jobs", "1"});
  CHECK(again.out == twice.out);

  write(dir / "broken.json", R"({"family":{"kind":"exhaustive-all","n":4},"checks":["katzman"])");
  CHECK(run({"sweep", "--config", (dir / "broken.json").string()}).code == 2);
  write(dir / "unknown.json", R"({"family":{"kind":"exhaustive-all","n":4},"checks":["nope"]})");
  CHECK(run({"sweep", "--config", (dir / "unknown.json").string()}).code == 2);
  write(dir / "extra.json", R"({"family":{"kind":"exhaustive-all","n":4},"checks":["katzman"],"colour":1})");
  CHECK(run({"sweep", "--config", (dir / "extra.json").string()}).code == 2);

  const auto gen = run({"generate", "--kind", "exhaustive-vwc", "--size", "2"});
  REQUIRE(gen.code == 0);
  CHECK(gen.json()["instances"].size() == 3);
  const auto out = run({"generate", "--kind", "exhaustive-all", "--size", "3", "--out", (dir / "gen").string()});
  REQUIRE(out.code == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir / "gen")) {
    ++files;
    CHECK(from_edge_list(cli::read_file(e.path().string())).edge_count() > 0);
  }
  CHECK(files == 2);
  CHECK(run({"generate", "--kind", "exhaustive-all", "--size", "9"}).code == 2);
  CHECK(run({"generate", "--kind", "random-vwc", "--size", "3", "--odd-girth-min", "4"}).code == 2);
}

TEST_CASE("executable", "[cli]") {
  const fs::path dir = scratch_dir("exe");
  const std::string cmd = std::string(EDGEREG_CLI_PATH) + " regularity --graph " + data("c4.edges") +
                          " --power 2 --engine both > " + (dir / "out.json").string();
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(Json::parse(cli::read_file((dir / "out.json").string()))["regularity"] == 4);
  const std::string bad = std::string(EDGEREG_CLI_PATH) + " analyze --graph /nonexistent 2> /dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
