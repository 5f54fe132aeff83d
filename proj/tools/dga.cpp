#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "app.hpp"

using dga::app::json;

namespace {

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dga::app::InputError(path, "cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw dga::app::InputError(path, e.what());
  }
}

struct Common {
  std::optional<std::string> out;
  std::optional<std::string> cache_dir;
  int threads = 1;
  bool no_stabilize = false;
  bool pretty = false;
  bool no_timing = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Write the report to this file");
  cmd->add_option("--cache-dir", c.cache_dir, "Directory for cached job results");
  cmd->add_option("--jobs", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-stabilize", c.no_stabilize, "Report UNSTABLE instead of comparing N and N+1");
  cmd->add_flag("--pretty", c.pretty, "Human-readable output");
  cmd->add_flag("--no-timing", c.no_timing, "Omit timings from the report");
}

int execute(const json& doc, const Common& c) {
  dga::app::Environment env = dga::app::parse_input(doc);
  const json jobs = doc.value("jobs", json::array());
  dga::app::prepare_jobs(env, jobs);
  dga::app::RunOptions opt{c.threads, c.cache_dir, !c.no_stabilize, !c.no_timing};
  dga::app::RunOutcome r = dga::app::run_jobs(env, jobs, opt);
  const std::string text = c.pretty ? dga::app::render_pretty(r.report) : r.report.dump(2) + "\n";
  if (c.out) {
    std::ofstream f(*c.out);
    f << text;
  } else {
    std::cout << text;
  }
  return r.exit_code;
}

struct Shot {
  std::string op;
  CLI::App* cmd = nullptr;
  std::map<std::string, std::string> names;
  std::map<std::string, int> ints;
  std::map<std::string, std::vector<int>> pairs;
  std::map<std::string, bool> flags;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact homological algebra of dg algebras over Q and F_p"};
  app.require_subcommand(1);

  Common common;
  std::string input_path;
  CLI::App* run = app.add_subcommand("run", "Run every job of a JSON input file");
  run->add_option("file", input_path, "Input file")->required();
  add_common(run, common);

  std::optional<std::string> input;
  std::string field = "Q";
  const std::vector<std::string> ops{"homology", "hh", "ext", "der", "pi", "les-check", "theorem-a", "lemma-c",
                                     "der-hh", "free-f", "adjunction-check", "bar-check", "lurie",
                                     "generation-check", "axiom3-smoke"};
  std::vector<Shot> shots(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    Shot& s = shots[i];
    s.op = ops[i];
    s.cmd = app.add_subcommand(ops[i], "Single " + ops[i] + " job");
    s.cmd->add_option("--input", input, "JSON file with declarations");
    s.cmd->add_option("--field", field, "Q, F_p or p");
    for (const char* n : {"algebra", "coefficients", "source-module", "map", "bimodule", "module", "pointed",
                          "target", "summand"})
      s.cmd->add_option(std::string("--") + n, s.names[n]);
    for (const char* n : {"cutoff", "length", "range", "degree-cap"}) s.cmd->add_option(std::string("--") + n, s.ints[n]);
    for (const char* n : {"degrees", "window"})
      s.cmd->add_option(std::string("--") + n, s.pairs[n])->expected(2);
    for (const char* n : {"no-relation", "no-unit-relation"}) s.cmd->add_flag(std::string("--") + n, s.flags[n]);
    add_common(s.cmd, common);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) return execute(load(input_path), common);
    for (Shot& s : shots) {
      if (!*s.cmd) continue;
      json doc = input ? load(*input) : json::object();
      if (!input || s.cmd->count("--field")) doc["field"] = field;
      json job{{"op", s.op}};
      auto snake = [](std::string k) {
        std::replace(k.begin(), k.end(), '-', '_');
        return k;
      };
      for (const auto& [k, v] : s.names)
        if (!v.empty()) job[snake(k)] = v;
      for (const auto& [k, v] : s.ints)
        if (s.cmd->count("--" + k)) job[snake(k)] = v;
      for (const auto& [k, v] : s.pairs)
        if (!v.empty()) job[k] = v;
      if (s.flags["no-relation"]) job["with_relation"] = false;
      if (s.flags["no-unit-relation"]) job["unit_relation"] = false;
      doc["jobs"] = json::array({job});
      return execute(doc, common);
    }
  } catch (const dga::app::InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const dga::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const dga::ScopeError& e) {
    std::cerr << "out of scope: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
