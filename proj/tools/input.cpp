#include <set>
#include <algorithm>
#include <sstream>

#include "app.hpp"

namespace dga::app {

namespace {

std::string join(const std::string& path, const std::string& key) { return path + "." + key; }
std::string join(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(path, "missing field '" + key + "'");
  return obj.at(key);
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw InputError(path, "expected an integer");
  return v.get<int>();
}

Scalar as_scalar(const Field& F, const json& v, const std::string& path) {
  try {
    if (v.is_number_integer()) return F.from_int(v.get<long>());
    if (v.is_string()) return F.parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(path, e.what());
  }
  throw InputError(path, "expected a scalar as an integer or a \"p/q\" string");
}

SparseVec as_vector(const Field& F, const json& v, Index size, const std::string& path) {
  if (!v.is_array() || v.size() != size)
    throw InputError(path, "expected an array of " + std::to_string(size) + " scalars");
  std::vector<Scalar> dense;
  for (std::size_t i = 0; i < v.size(); ++i) dense.push_back(as_scalar(F, v[i], join(path, i)));
  return from_dense(F, dense);
}

Field parse_field(const json& v) {
  std::int64_t p = 0;
  if (v.is_number_integer()) {
    p = v.get<std::int64_t>();
  } else if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "Q") return Field::rationals();
    std::string digits = s;
    if (digits.rfind("F_", 0) == 0) digits = digits.substr(2);
    else if (digits.rfind("F", 0) == 0) digits = digits.substr(1);
    try {
      std::size_t used = 0;
      p = std::stoll(digits, &used);
      if (used != digits.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw InputError("field", "expected \"Q\", \"F_p\" or a characteristic");
    }
  } else {
    throw InputError("field", "expected \"Q\", \"F_p\" or a characteristic");
  }
  if (p == 0) return Field::rationals();
  if (!is_prime(p)) throw InputError("field", "characteristic " + std::to_string(p) + " is not prime");
  return Field::prime(p);
}

/// Degrees either as {"deg": count} (basis ordered by degree) or as one degree per element.
GradedBasis parse_basis(const json& v, const std::string& path) {
  GradedBasis B;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) B.degree.push_back(as_int(v[i], join(path, i)));
  } else if (v.is_object()) {
    std::map<int, int> counts;
    for (const auto& [key, count] : v.items()) {
      int n = 0;
      try {
        n = std::stoi(key);
      } catch (const std::exception&) {
        throw InputError(join(path, key), "degree keys must be integers");
      }
      int c = as_int(count, join(path, key));
      if (c < 0) throw InputError(join(path, key), "negative dimension");
      counts[n] = c;
    }
    for (const auto& [n, c] : counts) B.degree.insert(B.degree.end(), c, n);
  } else {
    throw InputError(path, "expected an object or an array of degrees");
  }
  for (Index i = 0; i < B.size(); ++i) B.labels.push_back("e" + std::to_string(i));
  return B;
}

/// Differentials {"n": row-major matrix C^n → C^{n+1}} in local coordinates, as global columns.
std::vector<SparseVec> parse_differential(const Field& F, const GradedBasis& B, const json* v,
                                          const std::string& path) {
  std::vector<SparseVec> d(B.size());
  if (!v) return d;
  if (!v->is_object()) throw InputError(path, "expected an object keyed by degree");
  for (const auto& [key, m] : v->items()) {
    const std::string p = join(path, key);
    int n = 0;
    try {
      n = std::stoi(key);
    } catch (const std::exception&) {
      throw InputError(p, "degree keys must be integers");
    }
    auto src = B.in_degree(n), dst = B.in_degree(n + 1);
    if (!m.is_array() || m.size() != dst.size())
      throw InputError(p, "expected " + std::to_string(dst.size()) + " rows");
    for (std::size_t r = 0; r < dst.size(); ++r) {
      SparseVec row = as_vector(F, m[r], src.size(), join(p, r));
      for (const auto& [c, x] : row) d[src[c]].emplace_back(dst[r], x);
    }
  }
  for (auto& col : d) std::sort(col.begin(), col.end());
  return d;
}

std::string algebra_ref(const json& v, const std::string& path) {
  if (!v.is_string()) throw InputError(path, "expected an algebra name");
  return v.get<std::string>();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

int int_of(const std::string& s, const std::string& path) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError(path, "'" + s + "' is not an integer");
}

DGAlgebra builtin_algebra(const Field& F, const std::string& name, const std::string& path,
                          std::optional<FreeSource>& free) {
  auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (head == "ground" && arg.empty()) return ground_algebra(F);
  if (head == "dual_numbers") return dual_numbers(F, arg.empty() ? 0 : int_of(arg, path));
  if (head == "matrix") return matrix_algebra(F, int_of(arg, path));
  if (head == "suspended") {
    int d = int_of(arg, path);
    StructureTable t(2, 2);
    t.at(0, 0) = unit_vector(0);
    t.at(0, 1) = unit_vector(1);
    t.at(1, 0) = unit_vector(1);
    return validate_algebra(F, GradedBasis{{0, d}, {"1", "u"}}, {{}, {}}, t);
  }
  if (head == "free" && !arg.empty()) {
    std::vector<int> gens;
    for (const auto& g : split(arg, ',')) gens.push_back(int_of(g, path));
    free = FreeSource{gens};
    return free_algebra(F, gens, free_algebra_horizon(gens, {-6, 6}, 8));
  }
  throw InputError(path, "unknown algebra '" + name + "'");
}

void load_algebra(Environment& env, const std::string& name, const json& a, const std::string& path) {
  const Field& F = env.field;
  if (a.contains("builtin")) {
    std::optional<FreeSource> free;
    if (!a.at("builtin").is_string()) throw InputError(join(path, "builtin"), "expected a name");
    env.algebras[name] = std::make_shared<const DGAlgebra>(builtin_algebra(F, a.at("builtin"), path, free));
    if (free) env.free_sources[name] = *free;
    return;
  }
  if (a.contains("free")) {
    const json& f = a.at("free");
    const std::string fp = join(path, "free");
    std::vector<int> gens;
    const json& g = require(f, "generators", fp);
    if (!g.is_array()) throw InputError(join(fp, "generators"), "expected an array");
    for (std::size_t i = 0; i < g.size(); ++i)
      gens.push_back(as_int(require(g[i], "degree", join(join(fp, "generators"), i)),
                            join(join(join(fp, "generators"), i), "degree")));
    int horizon = f.contains("horizon") ? as_int(f.at("horizon"), join(fp, "horizon"))
                                        : free_algebra_horizon(gens, {-6, 6}, 8);
    if (horizon < 1) throw InputError(join(fp, "horizon"), "horizon must be positive");
    env.algebras[name] = std::make_shared<const DGAlgebra>(free_algebra(F, gens, horizon));
    env.free_sources[name] = FreeSource{gens};
    return;
  }
  GradedBasis B = parse_basis(require(a, "degrees", path), join(path, "degrees"));
  if (B.size() == 0 || B.degree[0] != 0) throw InputError(join(path, "degrees"), "element 0 must be the unit in degree 0");
  if (a.contains("unit") && as_int(a.at("unit"), join(path, "unit")) != 0)
    throw InputError(join(path, "unit"), "the unit must be basis element 0");
  auto d = parse_differential(F, B, a.contains("d") ? &a.at("d") : nullptr, join(path, "d"));
  const Index n = B.size();
  StructureTable t(n, n);
  for (Index i = 0; i < n; ++i) {
    t.at(0, i) = unit_vector(i);
    t.at(i, 0) = unit_vector(i);
  }
  if (a.contains("mult")) {
    const json& m = a.at("mult");
    const std::string mp = join(path, "mult");
    if (!m.is_array()) throw InputError(mp, "expected [[i, j, [coefficients]], …]");
    for (std::size_t k = 0; k < m.size(); ++k) {
      const std::string ep = join(mp, k);
      if (!m[k].is_array() || m[k].size() != 3) throw InputError(ep, "expected [i, j, [coefficients]]");
      int i = as_int(m[k][0], join(ep, 0)), j = as_int(m[k][1], join(ep, 1));
      if (i < 0 || j < 0 || static_cast<Index>(i) >= n || static_cast<Index>(j) >= n)
        throw InputError(ep, "basis index out of range");
      t.at(i, j) = as_vector(F, m[k][2], n, join(ep, 2));
    }
  }
  try {
    env.algebras[name] = std::make_shared<const DGAlgebra>(validate_algebra(F, B, d, t));
  } catch (const ValidationError& e) {
    throw InputError(path, e.what());
  }
}

std::shared_ptr<const DGAlgebra> find_algebra(Environment& env, const std::string& name, const std::string& path) {
  auto it = env.algebras.find(name);
  if (it != env.algebras.end()) return it->second;
  std::optional<FreeSource> free;
  auto A = std::make_shared<const DGAlgebra>(builtin_algebra(env.field, name, path, free));
  env.algebras[name] = A;
  if (free) env.free_sources[name] = *free;
  return A;
}

StructureTable parse_action(const Field& F, const json* v, Index rows, Index cols, Index out, bool left,
                            const std::string& path) {
  StructureTable t(rows, cols);
  // The unit acts as the identity unless overridden.
  if (left)
    for (Index m = 0; m < cols; ++m) t.at(0, m) = unit_vector(m);
  else
    for (Index m = 0; m < rows; ++m) t.at(m, 0) = unit_vector(m);
  if (!v) return t;
  if (!v->is_array()) throw InputError(path, "expected [[a, b, [coefficients]], …]");
  for (std::size_t k = 0; k < v->size(); ++k) {
    const json& e = (*v)[k];
    const std::string ep = join(path, k);
    if (!e.is_array() || e.size() != 3) throw InputError(ep, "expected [a, b, [coefficients]]");
    int i = as_int(e[0], join(ep, 0)), j = as_int(e[1], join(ep, 1));
    if (i < 0 || j < 0 || static_cast<Index>(i) >= rows || static_cast<Index>(j) >= cols)
      throw InputError(ep, "basis index out of range");
    t.at(i, j) = as_vector(F, e[2], out, join(ep, 2));
  }
  return t;
}

AlgebraMap find_map(Environment& env, const std::string& name, const std::string& path);

DGBimodule find_bimodule(Environment& env, const std::string& name, const std::string& path) {
  auto it = env.bimodules.find(name);
  if (it != env.bimodules.end()) return it->second;
  if (name.rfind("regular:", 0) == 0) {
    auto A = find_algebra(env, name.substr(8), path);
    DGBimodule M = regular_bimodule(A);
    env.bimodules.emplace(name, M);
    env.points[name] = unit_vector(0);
    return M;
  }
  throw InputError(path, "unknown bimodule '" + name + "'");
}

void load_bimodule(Environment& env, const std::string& name, const json& b, const std::string& path) {
  const Field& F = env.field;
  std::optional<DGBimodule> M;
  try {
    if (b.contains("regular")) {
      M = regular_bimodule(find_algebra(env, algebra_ref(b.at("regular"), join(path, "regular")), path));
    } else if (b.contains("restrict")) {
      AlgebraMap phi = find_map(env, require(b, "restrict", path).get<std::string>(), join(path, "restrict"));
      DGBimodule base = b.contains("of") ? find_bimodule(env, b.at("of").get<std::string>(), join(path, "of"))
                                         : regular_bimodule(phi.target);
      bool both = !b.contains("both_sides") || b.at("both_sides").get<bool>();
      M = restrict_bimodule(phi, base, both);
    } else if (b.contains("direct_sum")) {
      const json& parts = b.at("direct_sum");
      if (!parts.is_array() || parts.empty()) throw InputError(join(path, "direct_sum"), "expected names");
      M = find_bimodule(env, parts[0].get<std::string>(), join(join(path, "direct_sum"), 0));
      for (std::size_t i = 1; i < parts.size(); ++i)
        M = bimodule_direct_sum(*M, find_bimodule(env, parts[i].get<std::string>(), join(join(path, "direct_sum"), i)));
    } else if (b.contains("suspend")) {
      M = suspend_bimodule(find_bimodule(env, b.at("suspend").get<std::string>(), join(path, "suspend")),
                           as_int(require(b, "by", path), join(path, "by")));
    } else if (b.contains("cone")) {
      M = contractible_cone(find_bimodule(env, b.at("cone").get<std::string>(), join(path, "cone")));
    } else {
      auto R = find_algebra(env, algebra_ref(require(b, "left", path), join(path, "left")), join(path, "left"));
      auto S = find_algebra(env, algebra_ref(require(b, "right", path), join(path, "right")), join(path, "right"));
      GradedBasis B = parse_basis(require(b, "degrees", path), join(path, "degrees"));
      auto d = parse_differential(F, B, b.contains("d") ? &b.at("d") : nullptr, join(path, "d"));
      StructureTable left = parse_action(F, b.contains("left_action") ? &b.at("left_action") : nullptr, R->dim(),
                                         B.size(), B.size(), true, join(path, "left_action"));
      StructureTable right = parse_action(F, b.contains("right_action") ? &b.at("right_action") : nullptr,
                                          B.size(), S->dim(), B.size(), false, join(path, "right_action"));
      M = DGBimodule(R, S, B, d, left, right);
      validate_bimodule(*M);
    }
  } catch (const ValidationError& e) {
    throw InputError(path, e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path, e.what());
  }
  env.bimodules.emplace(name, *M);
  if (b.contains("point")) {
    SparseVec p = as_vector(F, b.at("point"), M->dim(), join(path, "point"));
    try {
      validate_pointed(PointedBimodule{*M, p});
    } catch (const ValidationError& e) {
      throw InputError(join(path, "point"), e.what());
    }
    env.points[name] = p;
  }
}

AlgebraMap find_map(Environment& env, const std::string& name, const std::string& path) {
  auto it = env.maps.find(name);
  if (it != env.maps.end()) return it->second;
  AlgebraMap f;
  if (name.rfind("identity:", 0) == 0) f = identity_algebra_map(find_algebra(env, name.substr(9), path));
  else if (name.rfind("unit:", 0) == 0) f = unit_map(find_algebra(env, name.substr(5), path));
  else throw InputError(path, "unknown map '" + name + "'");
  env.maps.emplace(name, f);
  return f;
}

void load_map(Environment& env, const std::string& name, const json& m, const std::string& path) {
  AlgebraMap f;
  if (m.contains("identity")) {
    f = identity_algebra_map(find_algebra(env, algebra_ref(m.at("identity"), join(path, "identity")), path));
  } else if (m.contains("unit")) {
    f = unit_map(find_algebra(env, algebra_ref(m.at("unit"), join(path, "unit")), path));
  } else {
    auto R = find_algebra(env, algebra_ref(require(m, "source", path), join(path, "source")), join(path, "source"));
    auto S = find_algebra(env, algebra_ref(require(m, "target", path), join(path, "target")), join(path, "target"));
    const json& rows = require(m, "matrix", path);
    if (!rows.is_array() || rows.size() != S->dim())
      throw InputError(join(path, "matrix"), "expected " + std::to_string(S->dim()) + " rows");
    Matrix mat(S->dim(), R->dim());
    for (Index r = 0; r < S->dim(); ++r) {
      SparseVec row = as_vector(env.field, rows[r], R->dim(), join(join(path, "matrix"), r));
      for (const auto& [c, x] : row) mat.columns[c].emplace_back(r, x);
    }
    f = AlgebraMap{R, S, mat};
  }
  try {
    validate_algebra_map(f);
  } catch (const ValidationError& e) {
    throw InputError(path, e.what());
  }
  env.maps.emplace(name, f);
}

template <class Fn>
void each_entry(const json& doc, const std::string& key, Fn fn) {
  if (!doc.contains(key)) return;
  const json& section = doc.at(key);
  if (!section.is_object()) throw InputError(key, "expected an object of named entries");
  for (const auto& [name, entry] : section.items()) {
    if (!entry.is_object()) throw InputError(join(key, name), "expected an object");
    fn(name, entry, join(key, name));
  }
}

}  // namespace

Environment parse_input(const json& doc) {
  if (!doc.is_object()) throw InputError("$", "expected a JSON object");
  static const std::vector<std::string> known{"field", "modules", "algebras", "bimodules", "maps", "jobs"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw InputError(key, "unknown top-level key");
  Environment env;
  env.field = parse_field(require(doc, "field", "$"));
  env.declarations = doc;
  env.declarations.erase("jobs");

  each_entry(doc, "modules", [&](const std::string& name, const json& m, const std::string& path) {
    GradedBasis B = parse_basis(require(m, "degrees", path), join(path, "degrees"));
    auto d = parse_differential(env.field, B, m.contains("d") ? &m.at("d") : nullptr, join(path, "d"));
    std::map<int, Index> dims;
    std::map<int, Matrix> ds;
    DegreeWindow s = B.support();
    for (Index i = 0; i < B.size(); ++i) ++dims[B.degree[i]];
    for (int n = s.lo; n < s.hi; ++n) {
      auto src = B.in_degree(n), dst = B.in_degree(n + 1);
      Matrix mat(dst.size(), src.size());
      for (Index c = 0; c < src.size(); ++c)
        for (const auto& [gi, x] : d[src[c]])
          mat.columns[c].emplace_back(std::find(dst.begin(), dst.end(), gi) - dst.begin(), x);
      ds.emplace(n, mat);
    }
    try {
      env.modules.emplace(name, ChainComplex(env.field, s, dims, ds, true));
    } catch (const ValidationError& e) {
      throw InputError(path, e.what());
    }
  });
  // Algebras may refer to nothing; bimodules and maps may refer to algebras, maps and earlier bimodules.
  each_entry(doc, "algebras", [&](const std::string& name, const json& a, const std::string& path) {
    load_algebra(env, name, a, path);
  });
  each_entry(doc, "maps", [&](const std::string& name, const json& m, const std::string& path) {
    load_map(env, name, m, path);
  });
  each_entry(doc, "bimodules", [&](const std::string& name, const json& b, const std::string& path) {
    load_bimodule(env, name, b, path);
  });
  return env;
}

void prepare_jobs(Environment& env, const json& jobs) {
  if (!jobs.is_array()) throw InputError("jobs", "expected an array");
  static const std::map<std::string, std::string> kinds{
      {"algebra", "algebra"},    {"target", "algebra"},  {"coefficients", "bimodule"}, {"bimodule", "bimodule"},
      {"source_module", "bimodule"}, {"pointed", "pointed"}, {"summand", "bimodule"}, {"map", "map"},
      {"module", "module"}};
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::string path = join("jobs", i);
    const json& job = jobs[i];
    if (!job.is_object() || !job.contains("op") || !job.at("op").is_string())
      throw InputError(path, "every job needs an 'op'");
    static const std::set<std::string> ops{"homology", "hh", "ext", "der", "pi", "les-check", "theorem-a",
                                           "lemma-c", "der-hh", "free-f", "adjunction-check", "bar-check",
                                           "lurie", "generation-check", "axiom3-smoke"};
    if (!ops.count(job.at("op").get<std::string>()))
      throw InputError(join(path, "op"), "unknown op '" + job.at("op").get<std::string>() + "'");
    for (const auto& [key, kind] : kinds) {
      if (!job.contains(key)) continue;
      if (!job.at(key).is_string()) throw InputError(join(path, key), "expected a name");
      const std::string name = job.at(key);
      if (kind == "algebra") find_algebra(env, name, join(path, key));
      else if (kind == "bimodule") find_bimodule(env, name, join(path, key));
      else if (kind == "map") find_map(env, name, join(path, key));
      else if (kind == "module") {
        if (!env.modules.count(name)) throw InputError(join(path, key), "unknown module '" + name + "'");
      } else {
        find_bimodule(env, name, join(path, key));
        if (!env.points.count(name)) throw InputError(join(path, key), "bimodule '" + name + "' has no point");
      }
    }
    for (const char* key : {"cutoff", "length", "degree_cap", "range"})
      if (job.contains(key) && (!job.at(key).is_number_integer() || job.at(key).get<int>() < 1))
        throw InputError(join(path, key), "must be a positive integer");
    for (const char* key : {"degrees", "window"}) {
      if (!job.contains(key)) continue;
      const json& w = job.at(key);
      if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer() ||
          w[0].get<int>() > w[1].get<int>())
        throw InputError(join(path, key), "expected [lo, hi] with lo <= hi");
    }
  }
}

}  // namespace dga::app
