#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dga/theorems.hpp"

namespace dga::app {

using nlohmann::json;

/// Schema or algebraic violation in the input, with the path of the offending field.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct Environment {
  Field field = Field::rationals();
  std::map<std::string, ChainComplex> modules;
  std::map<std::string, std::shared_ptr<const DGAlgebra>> algebras;
  /// Algebras declared as free on cocycle generators.
  std::map<std::string, FreeSource> free_sources;
  std::map<std::string, DGBimodule> bimodules;
  std::map<std::string, SparseVec> points;
  std::map<std::string, AlgebraMap> maps;
  /// The declarations, without jobs, for hashing.
  json declarations;
};

/// Loads and validates every declaration.
Environment parse_input(const json& doc);
/// Checks every job and materializes built-in names it refers to
/// (ground, dual_numbers[:d], matrix:n, suspended:d, free:d1,d2,…, regular:A, identity:A, unit:A).
void prepare_jobs(Environment& env, const json& jobs);

struct RunOptions {
  int threads = 1;
  std::optional<std::string> cache_dir;
  bool stabilize = true;
  bool timing = true;
};

struct RunOutcome {
  json report;
  int exit_code = 0;
};

json run_job(const Environment& env, const json& job, bool stabilize);
RunOutcome run_jobs(const Environment& env, const json& jobs, const RunOptions& opt);

std::string fnv1a_hex(const std::string& bytes);
std::string render_pretty(const json& report);

}  // namespace dga::app
