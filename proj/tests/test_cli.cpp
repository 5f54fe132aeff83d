#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "app.hpp"

using namespace dga;
using namespace dga::app;

namespace {

RunOutcome run(const json& doc, RunOptions opt = {}) {
  Environment env = parse_input(doc);
  json jobs = doc.value("jobs", json::array());
  prepare_jobs(env, jobs);
  opt.timing = false;
  return run_jobs(env, jobs, opt);
}

std::vector<Index> dims(const json& result) {
  std::vector<Index> out;
  for (const auto& g : result.at("groups")) out.push_back(g.at("dim").get<Index>());
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dga_cli_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int exit_status(const std::string& cmd) {
  int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

TEST_CASE("hh of the dual numbers from a job file") {
  json doc = json::parse(R"({"field":"Q","jobs":[{"op":"hh","algebra":"dual_numbers","degrees":[0,4]}]})");
  RunOutcome r = run(doc);
  CHECK(r.exit_code == 0);
  CHECK(dims(r.report["results"][0]) == std::vector<Index>{2, 1, 1, 1, 1});
  CHECK(r.report["results"][0]["status"] == "EXACT");
}

TEST_CASE("explicit algebra and bimodule declarations") {
  json doc = json::parse(R"({
    "field": "F_3",
    "algebras": {"A": {"degrees": {"0": 2}, "unit": 0, "mult": [[1, 1, [0, 0]]]}},
    "bimodules": {"M": {"regular": "A"}, "S": {"suspend": "M", "by": 1}},
    "jobs": [{"op": "hh", "coefficients": "M", "degrees": [0, 2]},
             {"op": "homology", "bimodule": "S", "degrees": [-2, 1]}]})");
  RunOutcome r = run(doc);
  CHECK(r.exit_code == 0);
  CHECK(dims(r.report["results"][0]) == std::vector<Index>{2, 1, 1});
  CHECK(dims(r.report["results"][1]) == std::vector<Index>{0, 2, 0, 0});
}

TEST_CASE("validation errors carry a path") {
  auto path_of = [](const char* text) -> std::string {
    try {
      run(json::parse(text));
    } catch (const InputError& e) {
      return e.path();
    }
    return "";
  };
  CHECK(path_of(R"({"field":"F_4"})") == "field");
  CHECK(path_of(R"({"field":"Q","algebras":{"A":{"degrees":{"0":3},"unit":0,
      "mult":[[1,1,[0,0,1]],[1,2,[0,1,0]],[2,1,[0,0,0]],[2,2,[0,0,0]]]}}})") == "algebras.A");
  CHECK(path_of(R"({"field":"Q","jobs":[{"op":"hh","algebra":"nosuch"}]})") == "jobs[0].algebra");
  CHECK(path_of(R"({"field":"Q","jobs":[{"op":"frobnicate"}]})") == "jobs[0].op");
}

TEST_CASE("scope errors and exit priority") {
  json doc = json::parse(R"({"field":"Q","jobs":[
      {"op":"theorem-a","algebra":"dual_numbers"},
      {"op":"hh","algebra":"dual_numbers","degrees":[0,1]}]})");
  RunOutcome r = run(doc);
  CHECK(r.report["results"][0]["status"] == "SCOPE");
  CHECK(r.exit_code == 4);

  RunOptions unstable;
  unstable.stabilize = false;
  json hh = json::parse(R"({"field":"Q","jobs":[{"op":"hh","algebra":"suspended:1","degrees":[0,1]}]})");
  RunOutcome u = run(hh, unstable);
  CHECK(u.report["results"][0]["status"].get<std::string>().rfind("UNSTABLE", 0) == 0);
  CHECK(u.exit_code == 3);
}

TEST_CASE("lurie comparison on the suspended class") {
  json doc = json::parse(R"({"field":"Q","jobs":[{"op":"lurie","algebra":"suspended:-1"},
                                                 {"op":"lurie","algebra":"ground"}]})");
  RunOutcome r = run(doc);
  CHECK(r.report["results"][0]["associative"] == 3);
  CHECK(r.report["results"][0]["commutative"] == 2);
  CHECK(r.report["results"][1]["associative"] == 2);
}

TEST_CASE("threads and cache do not change the report") {
  json doc = json::parse(R"({"field":"F_2","jobs":[
      {"op":"hh","algebra":"dual_numbers","degrees":[0,3]},
      {"op":"theorem-a","algebra":"matrix:2"},
      {"op":"free-f","pointed":"regular:ground"},
      {"op":"pi","map":"identity:suspended:-1"},
      {"op":"les-check","map":"unit:dual_numbers"}]})");
  RunOptions one, eight;
  eight.threads = 8;
  const json base = run(doc, one).report;
  CHECK(run(doc, eight).report == base);

  const auto dir = scratch("cache");
  RunOptions cached;
  cached.cache_dir = dir.string();
  CHECK(run(doc, cached).report == base);
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::ofstream(entry.path()) << R"({"key":"x","checksum":"0","result":{"status":"EXACT"}})";
  }
  CHECK(run(doc, cached).report == base);
  CHECK(run(doc, cached).report == base);
  std::filesystem::remove_all(dir);
}

TEST_CASE("binary exit codes") {
  const auto dir = scratch("bin");
  const std::string dga = DGA_BINARY;
  std::ofstream(dir / "bad.json") << R"({"field":"F_6","jobs":[]})";
  std::ofstream(dir / "broken.json") << "{ not json";
  std::ofstream(dir / "ok.json") << R"({"field":"Q","jobs":[{"op":"hh","algebra":"ground","degrees":[0,1]}]})";
  CHECK(exit_status(dga + " run " + (dir / "bad.json").string()) == 2);
  CHECK(exit_status(dga + " run " + (dir / "broken.json").string()) == 2);
  CHECK(exit_status(dga + " run " + (dir / "ok.json").string() + " --pretty") == 0);
  CHECK(exit_status(dga + " theorem-a --algebra dual_numbers") == 4);
  CHECK(exit_status(dga + " theorem-a --algebra dual_numbers --field 2") == 0);
  CHECK(exit_status(dga + " hh --algebra suspended:1 --degrees 0 1 --no-stabilize") == 3);
  std::filesystem::remove_all(dir);
}
