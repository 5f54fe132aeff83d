#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "app.hpp"
#include "dga/free_construction.hpp"

namespace dga::app {

namespace {

constexpr const char* kCacheVersion = "dga-report-1";

std::string window_key(const json& job, const char* key, DegreeWindow fallback, DegreeWindow& out) {
  out = fallback;
  if (job.contains(key)) out = DegreeWindow{job.at(key)[0].get<int>(), job.at(key)[1].get<int>()};
  return key;
}

DegreeWindow window_of(const json& job, const char* key, DegreeWindow fallback) {
  DegreeWindow w;
  window_key(job, key, fallback, w);
  return w;
}

int int_or(const json& job, const char* key, int fallback) {
  return job.contains(key) ? job.at(key).get<int>() : fallback;
}

bool bool_or(const json& job, const char* key, bool fallback) {
  return job.contains(key) ? job.at(key).get<bool>() : fallback;
}

json window_json(DegreeWindow w) { return json::array({w.lo, w.hi}); }

std::string name_of(const json& job, const char* key) { return job.at(key).get<std::string>(); }

class Status3 {
 public:
  void add(Status s) { worst_ = weakest(worst_, s); }
  void undetermined() { undetermined_ = true; }
  std::string text(int cutoff) const {
    if (undetermined_) return "UNDETERMINED";
    return status_text(worst_, cutoff);
  }

 private:
  Status worst_ = Status::Exact;
  bool undetermined_ = false;
};

json cohomology_job(const Environment& env, const json& job, bool stabilize,
                    CohomologyGroup (*fn)(const DGBimodule&, int, const CohomologyOptions&)) {
  DGBimodule M = job.contains("coefficients") ? env.bimodules.at(name_of(job, "coefficients"))
                                              : regular_bimodule(env.algebras.at(name_of(job, "algebra")));
  if (job.contains("algebra") && env.algebras.at(name_of(job, "algebra")) != M.left_ptr())
    throw ValidationError("coefficients are not a bimodule over the given algebra");
  DegreeWindow w = window_of(job, "degrees", {0, 4});
  CohomologyOptions opt{int_or(job, "cutoff", 8), stabilize && bool_or(job, "stabilize", true)};
  json groups = json::array();
  Status3 all;
  for (int n = w.lo; n <= w.hi; ++n) {
    CohomologyGroup g = fn(M, n, opt);
    all.add(g.status);
    groups.push_back({{"degree", n}, {"dim", g.dim}, {"status", status_text(g.status, g.cutoff)}});
  }
  return {{"window", window_json(w)}, {"cutoff", opt.cutoff}, {"groups", groups}, {"status", all.text(opt.cutoff)}};
}

CohomologyGroup ext_with(const DGBimodule& N, const DGBimodule& M, int n, const CohomologyOptions& opt) {
  return ext_group(N, M, n, opt);
}

json homology_job(const Environment& env, const json& job) {
  DegreeWindow w = window_of(job, "degrees", {-4, 4});
  json groups = json::array();
  auto emit = [&](const ChainComplex& C) {
    for (int n = w.lo; n <= w.hi; ++n)
      groups.push_back({{"degree", n}, {"dim", homology_at(C, n).dim()}, {"status", "EXACT"}});
  };
  if (job.contains("module")) emit(env.modules.at(name_of(job, "module")));
  else if (job.contains("bimodule")) emit(env.bimodules.at(name_of(job, "bimodule")).complex());
  else emit(env.algebras.at(name_of(job, "algebra"))->complex());
  return {{"window", window_json(w)}, {"groups", groups}, {"status", "EXACT"}};
}

std::optional<FreeSource> free_source(const Environment& env, const AlgebraMap& phi) {
  for (const auto& [name, A] : env.algebras)
    if (A == phi.source && env.free_sources.count(name)) return env.free_sources.at(name);
  return std::nullopt;
}

json pi_json(const PiGroup& g, int cutoff) {
  json out{{"n", g.n}, {"route", route_text(g.route)}, {"determined", g.determined}};
  if (g.determined) out["value"] = g.value;
  if (g.bounds) out["bounds"] = json::array({g.bounds->first, g.bounds->second});
  out["status"] = g.determined ? status_text(g.status, cutoff) : "UNDETERMINED";
  if (!g.note.empty()) out["note"] = g.note;
  return out;
}

json les_json(const LESReport& r, int cutoff) {
  json nodes = json::array();
  Status3 all;
  for (Index i = 0; i < r.nodes.size(); ++i) {
    const LESNode& n = r.nodes[i];
    json node{{"label", n.label},     {"degree", n.degree}, {"dim", n.dim},
              {"status", status_text(n.status, n.cutoff)}, {"source", n.source},
              {"verdict", verdict_text(n.verdict)}};
    if (r.outgoing_rank[i]) node["outgoing_rank"] = *r.outgoing_rank[i];
    nodes.push_back(node);
    all.add(n.status);
  }
  if (r.count(Verdict::NotExact) > 0) all.undetermined();
  return {{"nodes", nodes},
          {"exact", r.count(Verdict::Exact)},
          {"not_exact", r.count(Verdict::NotExact)},
          {"undetermined", r.count(Verdict::Undetermined)},
          {"status", all.text(cutoff)}};
}

PointedBimodule pointed(const Environment& env, const json& job) {
  const std::string name = name_of(job, "pointed");
  return PointedBimodule{env.bimodules.at(name), env.points.at(name)};
}

FreeOptions free_options(const json& job, int length, DegreeWindow window, bool unit_relation) {
  return FreeOptions{int_or(job, "length", length), window_of(job, "window", window),
                     bool_or(job, "unit_relation", unit_relation)};
}

json dims_json(const std::map<int, std::pair<Index, Index>>& dims, const char* a, const char* b) {
  json out = json::array();
  for (const auto& [n, p] : dims) out.push_back({{"degree", n}, {a, p.first}, {b, p.second}});
  return out;
}

json dispatch(const Environment& env, const json& job, bool stabilize) {
  const std::string op = job.at("op");
  if (op == "homology") return homology_job(env, job);
  if (op == "hh") return cohomology_job(env, job, stabilize, hh_group);
  if (op == "der") return cohomology_job(env, job, stabilize, der_group);
  if (op == "ext") {
    const DGBimodule& N = env.bimodules.at(name_of(job, "source_module"));
    const DGBimodule& M = env.bimodules.at(name_of(job, "coefficients"));
    DegreeWindow w = window_of(job, "degrees", {0, 4});
    CohomologyOptions opt{int_or(job, "cutoff", 8), stabilize && bool_or(job, "stabilize", true)};
    json groups = json::array();
    Status3 all;
    for (int n = w.lo; n <= w.hi; ++n) {
      CohomologyGroup g = ext_with(N, M, n, opt);
      all.add(g.status);
      groups.push_back({{"degree", n}, {"dim", g.dim}, {"status", status_text(g.status, g.cutoff)}});
    }
    return {{"window", window_json(w)}, {"cutoff", opt.cutoff}, {"groups", groups}, {"status", all.text(opt.cutoff)}};
  }
  if (op == "pi") {
    const AlgebraMap& phi = env.maps.at(name_of(job, "map"));
    DegreeWindow w = window_of(job, "degrees", {2, 4});
    CohomologyOptions opt{int_or(job, "cutoff", 8), stabilize};
    json groups = json::array();
    Status3 all;
    for (int n = w.lo; n <= w.hi; ++n) {
      PiGroup g = pi_map_alg(phi, n, opt, free_source(env, phi));
      all.add(g.status);
      if (!g.determined) all.undetermined();
      groups.push_back(pi_json(g, opt.cutoff));
    }
    return {{"window", window_json(w)}, {"groups", groups}, {"status", all.text(opt.cutoff)}};
  }
  if (op == "les-check") {
    const AlgebraMap& phi = env.maps.at(name_of(job, "map"));
    CohomologyOptions opt{int_or(job, "cutoff", 8), stabilize};
    int range = int_or(job, "range", 3);
    json out = les_json(theorem_b_les_report(phi, range, opt, free_source(env, phi)), opt.cutoff);
    out["window"] = window_json({-range, -1});
    return out;
  }
  if (op == "theorem-a") {
    auto R = env.algebras.at(name_of(job, "algebra"));
    TheoremAReport a = theorem_a_report(R, {int_or(job, "cutoff", 8), stabilize});
    json kernel = json::array();
    for (const auto& u : a.kernel) {
      json v = json::array();
      for (const auto& [i, x] : u) v.push_back({i, R->field().format(x)});
      kernel.push_back(v);
    }
    json out = les_json(a.les, 8);
    out.update({{"h_minus1", a.h_minus1_dim}, {"hh0_units", a.hh0_units}, {"h0_units", a.h0_units},
                {"kernel_order", a.kernel.size()}, {"kernel", kernel}, {"kernel_is_subgroup", a.kernel_is_subgroup},
                {"pi1", pi_json(a.pi1, 8)}, {"window", window_json({-1, 0})}});
    if (!a.pi1.determined) out["status"] = "UNDETERMINED";
    return out;
  }
  if (op == "lemma-c" || op == "der-hh") {
    const DGBimodule& M = env.bimodules.at(name_of(job, "bimodule"));
    DegreeWindow w = window_of(job, "degrees", op == "lemma-c" ? DegreeWindow{2, 4} : DegreeWindow{2, 3});
    CohomologyOptions opt{int_or(job, "cutoff", 8), stabilize};
    json rows = json::array();
    Status3 all;
    for (int n = w.lo; n <= w.hi; ++n) {
      if (op == "lemma-c") {
        LemmaCReport r = lemma_c_check(M, n, opt);
        all.add(r.status);
        rows.push_back({{"n", n}, {"a", r.a}, {"b", r.b}, {"c", r.c}, {"equal", r.equal},
                        {"status", status_text(r.status, opt.cutoff)}});
      } else {
        DerHHReport r = der_hh_relation(M, n, opt);
        all.add(r.status);
        rows.push_back({{"n", n}, {"der", r.der}, {"hh", r.hh}, {"h_left", r.h_left}, {"h_right", r.h_right},
                        {"les_exact", r.les_exact}, {"equal", r.equal}, {"status", status_text(r.status, opt.cutoff)}});
      }
    }
    return {{"window", window_json(w)}, {"rows", rows}, {"status", all.text(opt.cutoff)}};
  }
  if (op == "free-f") {
    FreeOptions fo = free_options(job, 6, {-4, 4}, true);
    FreeStability s = free_stability(pointed(env, job), fo);
    return {{"window", window_json(fo.window)}, {"length", fo.max_length},
            {"dims", dims_json(s.dims, "dim_L", "dim_L+1")}, {"status", status_text(s.status, fo.max_length)}};
  }
  if (op == "adjunction-check") {
    FreeOptions fo = free_options(job, 6, {-2, 2}, true);
    AdjunctionReport r = adjunction_card_check(pointed(env, job), over_ground(env.algebras.at(name_of(job, "target"))), fo);
    return {{"window", window_json(fo.window)}, {"length", fo.max_length}, {"module_maps", r.module_maps},
            {"algebra_maps", r.algebra_maps}, {"bijection", r.bijection}, {"status", "EXACT"}};
  }
  if (op == "generation-check") {
    FreeOptions fo = free_options(job, 4, {-2, 2}, false);
    GenerationReport r = ideal_generation_check(pointed(env, job), fo);
    return {{"window", window_json(fo.window)}, {"length", fo.max_length},
            {"dims", dims_json(r.dims, "hi", "generated")}, {"equal", r.equal},
            {"status", status_text(r.status, fo.max_length)}};
  }
  if (op == "axiom3-smoke") {
    FreeOptions fo = free_options(job, 4, {-2, 2}, true);
    Axiom3Report r = axiom3_smoke(pointed(env, job), env.bimodules.at(name_of(job, "summand")), fo);
    json out{{"window", window_json(fo.window)}, {"length", fo.max_length}, {"precondition", r.precondition},
             {"quasi_iso", r.quasi_iso}, {"dims", dims_json(r.dims, "F(X)", "F(S)")}};
    if (!r.reason.empty()) out["reason"] = r.reason;
    out["status"] = r.precondition ? status_text(r.status, fo.max_length) : "UNDETERMINED";
    return out;
  }
  if (op == "bar-check") {
    const DGBimodule& S = env.bimodules.at(name_of(job, "bimodule"));
    DegreeWindow w = window_of(job, "degrees", {-4, 2});
    BarCheck r = bar_augmentation_check(S, w, {int_or(job, "cutoff", 8), stabilize});
    json cone = json::array();
    for (const auto& [n, d] : r.cone_dims) cone.push_back({{"degree", n}, {"surviving_cone_rank", d}});
    return {{"window", window_json(w)}, {"cutoff", r.cutoff}, {"quasi_iso", r.quasi_iso}, {"cone", cone},
            {"status", status_text(r.status, r.cutoff)}};
  }
  if (op == "lurie") {
    const DGAlgebra& S = *env.algebras.at(name_of(job, "algebra"));
    SemifreeOptions so{bool_or(job, "with_relation", true), int_or(job, "degree_cap", 4)};
    SemifreePi0 r = semifree_pi0(S, so);
    return {{"associative", r.associative},
            {"commutative", r.commutative},
            {"by_cap", json::array({r.associative_by_cap.first, r.associative_by_cap.second})},
            {"h0", r.h0},
            {"h_minus1", r.h_minus1},
            {"degree_cap", so.degree_cap},
            {"window", window_json({-1, 0})},
            {"status", status_text(r.status, so.degree_cap)}};
  }
  throw ValidationError("unknown op '" + op + "'");
}

std::string cache_key(const Environment& env, const json& job, bool stabilize) {
  return fnv1a_hex(std::string(kCacheVersion) + "\n" + env.declarations.dump() + "\n" + job.dump() + "\n" +
                   (stabilize ? "1" : "0"));
}

std::optional<json> cache_read(const std::filesystem::path& file, const std::string& key) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    json entry = json::parse(in);
    if (entry.at("key") != key) return std::nullopt;
    const json& result = entry.at("result");
    if (entry.at("checksum") != fnv1a_hex(result.dump())) return std::nullopt;
    return result;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void cache_write(const std::filesystem::path& dir, const std::string& key, const json& result) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  json entry{{"key", key}, {"checksum", fnv1a_hex(result.dump())}, {"result", result}};
  std::ostringstream tid;
  tid << std::this_thread::get_id();
  const auto tmp = dir / (key + ".tmp." + tid.str());
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << entry.dump();
  }
  std::filesystem::rename(tmp, dir / (key + ".json"), ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

int severity(const json& result) {
  const std::string s = result.value("status", "");
  if (s == "INVALID") return 2;
  if (s == "SCOPE") return 4;
  if (s.rfind("UNSTABLE", 0) == 0 || s == "UNDETERMINED") return 3;
  return 0;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json run_job(const Environment& env, const json& job, bool stabilize) {
  try {
    return dispatch(env, job, stabilize);
  } catch (const ScopeError& e) {
    return {{"status", "SCOPE"}, {"error", e.what()}};
  } catch (const WindowError& e) {
    return {{"status", "UNDETERMINED"}, {"error", e.what()}};
  } catch (const HorizonExceeded& e) {
    return {{"status", "UNDETERMINED"}, {"error", e.what()}};
  } catch (const ValidationError& e) {
    return {{"status", "INVALID"}, {"error", e.what()}};
  } catch (const std::out_of_range& e) {
    return {{"status", "INVALID"}, {"error", std::string("unresolved name: ") + e.what()}};
  }
}

RunOutcome run_jobs(const Environment& env, const json& jobs, const RunOptions& opt) {
  const std::size_t count = jobs.size();
  std::vector<json> results(count);
  std::vector<double> millis(count, 0.0);
  std::vector<bool> cached(count, false);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      auto start = std::chrono::steady_clock::now();
      const std::string key = cache_key(env, jobs[i], opt.stabilize);
      std::optional<json> hit;
      if (opt.cache_dir) hit = cache_read(std::filesystem::path(*opt.cache_dir) / (key + ".json"), key);
      if (hit) {
        results[i] = *hit;
        cached[i] = true;
      } else {
        results[i] = run_job(env, jobs[i], opt.stabilize);
        if (opt.cache_dir && severity(results[i]) != 2) cache_write(*opt.cache_dir, key, results[i]);
      }
      results[i]["key"] = key;
      results[i]["job"] = jobs[i];
      millis[i] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  RunOutcome out;
  out.report = {{"field", env.field.name()}, {"input_hash", fnv1a_hex(env.declarations.dump())},
                {"results", results}};
  if (opt.timing) {
    json per = json::array();
    for (std::size_t i = 0; i < count; ++i) per.push_back({{"ms", millis[i]}, {"cached", static_cast<bool>(cached[i])}});
    out.report["timing"] = per;
  }
  int worst = 0;
  for (const auto& r : results) {
    int s = severity(r);
    if (s == 2 || (s == 4 && worst != 2) || (s == 3 && worst == 0)) worst = s;
  }
  out.exit_code = worst;
  return out;
}

std::string render_pretty(const json& report) {
  std::ostringstream out;
  out << "field " << report.at("field").get<std::string>() << "\n";
  for (const auto& r : report.at("results")) {
    out << "\n" << r.at("job").at("op").get<std::string>() << "  [" << r.value("status", "") << "]\n";
    if (r.contains("error")) out << "  " << r.at("error").get<std::string>() << "\n";
    for (const char* table : {"groups", "nodes", "rows", "dims", "cone"}) {
      if (!r.contains(table)) continue;
      for (const auto& row : r.at(table)) {
        out << " ";
        for (const auto& [k, v] : row.items()) out << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
        out << "\n";
      }
    }
    for (const char* scalar : {"module_maps", "algebra_maps", "bijection", "equal", "quasi_iso", "associative",
                               "commutative", "kernel_order", "hh0_units", "h0_units"})
      if (r.contains(scalar)) out << "  " << scalar << " = " << r.at(scalar).dump() << "\n";
  }
  return out.str();
}

}  // namespace dga::app
