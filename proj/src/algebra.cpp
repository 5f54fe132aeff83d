#include "dga/algebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dga {

namespace {

constexpr std::size_t kMaxWitnesses = 20;

bool homogeneous_of_degree(const GradedBasis& B, const SparseVec& v, int n) {
  return std::all_of(v.begin(), v.end(), [&](const auto& e) {
    return e.first < B.size() && B.degree[e.first] == n;
  });
}

std::string triple(const std::string& what, Index a, Index b, Index c) {
  std::ostringstream os;
  os << what << " fails on basis triple (" << a << ", " << b << ", " << c << ")";
  return os.str();
}

std::string pair_text(const std::string& what, Index a, Index b) {
  std::ostringstream os;
  os << what << " fails on basis pair (" << a << ", " << b << ")";
  return os.str();
}

std::string joined(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
  return out;
}

ChainComplex complex_of(const Field& F, const GradedBasis& B, const std::vector<SparseVec>& d,
                        const std::vector<Index>& local, std::optional<DegreeWindow> complete) {
  DegreeWindow s = B.support();
  DegreeWindow r = s;
  bool bounded = !complete.has_value();
  if (!bounded) {
    DegreeWindow c = *complete;
    r = {std::max(c.lo, s.empty() ? c.lo : s.lo - 1), std::min(c.hi, s.empty() ? c.hi : s.hi + 1)};
  }
  std::map<int, Index> dims;
  std::map<int, Matrix> ds;
  for (int n = r.lo; n <= r.hi; ++n) dims[n] = 0;
  for (Index i = 0; i < B.size(); ++i)
    if (r.contains(B.degree[i])) ++dims[B.degree[i]];
  std::map<int, std::vector<std::string>> labels;
  for (int n = r.lo; n < r.hi; ++n) ds.emplace(n, Matrix(dims[n + 1], dims[n]));
  for (Index i = 0; i < B.size(); ++i) {
    int n = B.degree[i];
    if (!B.labels.empty() && r.contains(n)) labels[n].push_back(B.labels[i]);
    if (!r.contains(n) || !r.contains(n + 1)) continue;
    SparseVec col;
    for (const auto& [j, x] : d[i]) col.emplace_back(local[j], x);
    std::sort(col.begin(), col.end());
    ds.at(n).columns[local[i]] = std::move(col);
  }
  ChainComplex C(F, r, std::move(dims), std::move(ds), bounded, std::move(labels));
  // Complete degrees beyond the support carry no basis elements at all.
  if (!bounded && !s.empty()) C.set_zero_outside(complete->lo < s.lo, complete->hi > s.hi);
  return C;
}

SparseVec combine_rows(const Field& F, const SparseVec& coeffs,
                       const std::function<const SparseVec&(Index)>& row) {
  SparseVec out;
  for (const auto& [i, x] : coeffs) out = axpy(F, out, x, row(i));
  return out;
}

}  // namespace

std::vector<Index> GradedBasis::in_degree(int n) const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i)
    if (degree[i] == n) out.push_back(i);
  return out;
}

std::vector<Index> GradedBasis::local_positions() const {
  std::map<int, Index> count;
  std::vector<Index> out(size());
  for (Index i = 0; i < size(); ++i) out[i] = count[degree[i]]++;
  return out;
}

DegreeWindow GradedBasis::support() const {
  if (degree.empty()) return {0, -1};
  auto [lo, hi] = std::minmax_element(degree.begin(), degree.end());
  return {*lo, *hi};
}

DGAlgebra::DGAlgebra(Field F, GradedBasis basis, std::vector<SparseVec> d, StructureTable mult,
                     std::vector<int> weight, std::optional<DegreeWindow> complete)
    : F_(F), basis_(std::move(basis)), d_(std::move(d)), mult_(std::move(mult)),
      weight_(std::move(weight)), complete_(complete) {
  const Index n = basis_.size();
  if (n == 0) throw ValidationError("an algebra needs at least the unit");
  if (basis_.degree[0] != 0) throw ValidationError("the unit (basis 0) must have degree 0");
  if (d_.size() != n) throw ValidationError("differential has wrong number of columns");
  if (mult_.rows != n || mult_.cols != n) throw ValidationError("multiplication table has wrong shape");
  if (weight_.empty()) {
    weight_.assign(n, 1);
    weight_[0] = 0;
  }
  if (weight_.size() != n) throw ValidationError("weight vector has wrong length");
  for (const auto& v : d_)
    for (const auto& e : v)
      if (e.first >= n) throw ValidationError("differential refers to a missing basis element");
  local_ = basis_.local_positions();
}

DegreeWindow DGAlgebra::complete() const {
  return complete_ ? *complete_ : DegreeWindow{-kUnboundedDegree, kUnboundedDegree};
}

const SparseVec& DGAlgebra::product(Index i, Index j) const {
  const auto& e = mult_.at(i, j);
  if (!e)
    throw HorizonExceeded("product of basis elements " + std::to_string(i) + " and " +
                          std::to_string(j) + " lies beyond the truncation horizon");
  return *e;
}

SparseVec DGAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
  std::vector<std::pair<Index, Scalar>> terms;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      Scalar c = F_.mul(x, y);
      for (const auto& [k, z] : product(i, j)) terms.emplace_back(k, F_.mul(c, z));
    }
  return collect(F_, std::move(terms));
}

SparseVec DGAlgebra::apply_d(const SparseVec& v) const {
  return combine_rows(F_, v, [&](Index i) -> const SparseVec& { return d_[i]; });
}

ChainComplex DGAlgebra::complex() const { return complex_of(F_, basis_, d_, local_, complete_); }

SparseVec DGAlgebra::to_local(const SparseVec& v, int n) const {
  SparseVec out;
  for (const auto& [i, x] : v) {
    if (degree(i) != n) throw std::invalid_argument("vector is not homogeneous of the given degree");
    out.emplace_back(local_[i], x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SparseVec DGAlgebra::to_global(const SparseVec& v, int n) const {
  auto idx = basis_.in_degree(n);
  SparseVec out;
  for (const auto& [i, x] : v) out.emplace_back(idx.at(i), x);
  return out;
}

DGBimodule::DGBimodule(std::shared_ptr<const DGAlgebra> R, std::shared_ptr<const DGAlgebra> S,
                       GradedBasis basis, std::vector<SparseVec> d, StructureTable left,
                       StructureTable right, std::optional<DegreeWindow> complete)
    : R_(std::move(R)), S_(std::move(S)), basis_(std::move(basis)), d_(std::move(d)),
      left_(std::move(left)), right_(std::move(right)), complete_(complete) {
  const Index n = basis_.size();
  if (!(R_->field() == S_->field())) throw ValidationError("bimodule over algebras of different fields");
  if (d_.size() != n) throw ValidationError("bimodule differential has wrong number of columns");
  if (left_.rows != R_->dim() || left_.cols != n)
    throw ValidationError("left action table has wrong shape");
  if (right_.rows != n || right_.cols != S_->dim())
    throw ValidationError("right action table has wrong shape");
  local_ = basis_.local_positions();
}

DegreeWindow DGBimodule::complete() const {
  return complete_ ? *complete_ : DegreeWindow{-kUnboundedDegree, kUnboundedDegree};
}

const SparseVec& DGBimodule::left(Index r, Index m) const {
  const auto& e = left_.at(r, m);
  if (!e) throw HorizonExceeded("left action beyond the truncation horizon");
  return *e;
}

const SparseVec& DGBimodule::right(Index m, Index s) const {
  const auto& e = right_.at(m, s);
  if (!e) throw HorizonExceeded("right action beyond the truncation horizon");
  return *e;
}

SparseVec DGBimodule::act_left(const SparseVec& r, const SparseVec& m) const {
  const Field& F = field();
  std::vector<std::pair<Index, Scalar>> terms;
  for (const auto& [i, x] : r)
    for (const auto& [j, y] : m) {
      Scalar c = F.mul(x, y);
      for (const auto& [k, z] : left(i, j)) terms.emplace_back(k, F.mul(c, z));
    }
  return collect(F, std::move(terms));
}

SparseVec DGBimodule::act_right(const SparseVec& m, const SparseVec& s) const {
  const Field& F = field();
  std::vector<std::pair<Index, Scalar>> terms;
  for (const auto& [i, x] : m)
    for (const auto& [j, y] : s) {
      Scalar c = F.mul(x, y);
      for (const auto& [k, z] : right(i, j)) terms.emplace_back(k, F.mul(c, z));
    }
  return collect(F, std::move(terms));
}

SparseVec DGBimodule::apply_d(const SparseVec& v) const {
  return combine_rows(field(), v, [&](Index i) -> const SparseVec& { return d_[i]; });
}

ChainComplex DGBimodule::complex() const { return complex_of(field(), basis_, d_, local_, complete_); }

std::vector<std::string> algebra_violations(const DGAlgebra& A) {
  std::vector<std::string> out;
  auto note = [&](std::string s) {
    if (out.size() < kMaxWitnesses) out.push_back(std::move(s));
  };
  const Field& F = A.field();
  const GradedBasis& B = A.basis();
  const Index n = A.dim();
  for (Index i = 0; i < n; ++i) {
    if (!homogeneous_of_degree(B, A.d(i), B.degree[i] + 1))
      note("differential of basis " + std::to_string(i) + " is not of degree +1");
    if (!A.apply_d(A.d(i)).empty()) note("d∘d != 0 on basis " + std::to_string(i));
  }
  auto defined = [&](Index i, Index j) { return A.table().at(i, j).has_value(); };
  for (Index i = 0; i < n; ++i) {
    if (!defined(0, i) || A.product(0, i) != unit_vector(i)) note(pair_text("left unit law", 0, i));
    if (!defined(i, 0) || A.product(i, 0) != unit_vector(i)) note(pair_text("right unit law", i, 0));
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (!defined(i, j)) continue;
      if (!homogeneous_of_degree(B, A.product(i, j), B.degree[i] + B.degree[j]))
        note(pair_text("degree additivity", i, j));
      try {
        SparseVec lhs = A.apply_d(A.product(i, j));
        SparseVec rhs = A.multiply(A.d(i), unit_vector(j));
        rhs = axpy(F, rhs, F.sign(B.degree[i]), A.multiply(unit_vector(i), A.d(j)));
        if (lhs != rhs) note(pair_text("Leibniz rule", i, j));
      } catch (const HorizonExceeded&) {
      }
    }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (!defined(i, j)) continue;
      for (Index k = 0; k < n; ++k) {
        try {
          SparseVec lhs = A.multiply(A.product(i, j), unit_vector(k));
          SparseVec rhs = A.multiply(unit_vector(i), A.product(j, k));
          if (lhs != rhs) note(triple("associativity", i, j, k));
        } catch (const HorizonExceeded&) {
        }
      }
    }
  return out;
}

std::vector<std::string> bimodule_violations(const DGBimodule& M) {
  std::vector<std::string> out;
  auto note = [&](std::string s) {
    if (out.size() < kMaxWitnesses) out.push_back(std::move(s));
  };
  const Field& F = M.field();
  const DGAlgebra& R = M.left_algebra();
  const DGAlgebra& S = M.right_algebra();
  const GradedBasis& B = M.basis();
  for (Index m = 0; m < M.dim(); ++m) {
    if (!homogeneous_of_degree(B, M.d(m), B.degree[m] + 1))
      note("bimodule differential of basis " + std::to_string(m) + " is not of degree +1");
    if (!M.apply_d(M.d(m)).empty()) note("d∘d != 0 on bimodule basis " + std::to_string(m));
    auto lu = M.left_table().at(0, m);
    auto ru = M.right_table().at(m, 0);
    if (!lu || *lu != unit_vector(m)) note(pair_text("left unit action", 0, m));
    if (!ru || *ru != unit_vector(m)) note(pair_text("right unit action", m, 0));
  }
  auto guarded = [&](auto&& body) {
    try {
      body();
    } catch (const HorizonExceeded&) {
    }
  };
  for (Index r = 0; r < R.dim(); ++r)
    for (Index m = 0; m < M.dim(); ++m) {
      guarded([&] {
        const SparseVec& rm = M.left(r, m);
        if (!homogeneous_of_degree(B, rm, R.degree(r) + B.degree[m]))
          note(pair_text("left action degree", r, m));
        SparseVec rhs = M.act_left(R.d(r), unit_vector(m));
        rhs = axpy(F, rhs, F.sign(R.degree(r)), M.act_left(unit_vector(r), M.d(m)));
        if (M.apply_d(rm) != rhs) note(pair_text("left Leibniz rule", r, m));
      });
      for (Index r2 = 0; r2 < R.dim(); ++r2)
        guarded([&] {
          SparseVec lhs = M.act_left(R.product(r, r2), unit_vector(m));
          SparseVec rhs = M.act_left(unit_vector(r), M.left(r2, m));
          if (lhs != rhs) note(triple("left associativity", r, r2, m));
        });
      for (Index s = 0; s < S.dim(); ++s)
        guarded([&] {
          SparseVec lhs = M.act_right(M.left(r, m), unit_vector(s));
          SparseVec rhs = M.act_left(unit_vector(r), M.right(m, s));
          if (lhs != rhs) note(triple("left and right actions commute", r, m, s));
        });
    }
  for (Index m = 0; m < M.dim(); ++m)
    for (Index s = 0; s < S.dim(); ++s) {
      guarded([&] {
        const SparseVec& ms = M.right(m, s);
        if (!homogeneous_of_degree(B, ms, B.degree[m] + S.degree(s)))
          note(pair_text("right action degree", m, s));
        SparseVec rhs = M.act_right(M.d(m), unit_vector(s));
        rhs = axpy(F, rhs, F.sign(B.degree[m]), M.act_right(unit_vector(m), S.d(s)));
        if (M.apply_d(ms) != rhs) note(pair_text("right Leibniz rule", m, s));
      });
      for (Index s2 = 0; s2 < S.dim(); ++s2)
        guarded([&] {
          SparseVec lhs = M.act_right(M.right(m, s), unit_vector(s2));
          SparseVec rhs = M.act_right(unit_vector(m), S.product(s, s2));
          if (lhs != rhs) note(triple("right associativity", m, s, s2));
        });
    }
  return out;
}

std::vector<std::string> algebra_map_violations(const AlgebraMap& f) {
  std::vector<std::string> out;
  auto note = [&](std::string s) {
    if (out.size() < kMaxWitnesses) out.push_back(std::move(s));
  };
  const DGAlgebra& A = *f.source;
  const DGAlgebra& B = *f.target;
  if (f.matrix.rows != B.dim() || f.matrix.cols != A.dim()) {
    out.push_back("algebra map matrix has wrong shape");
    return out;
  }
  if (f.apply(unit_vector(0)) != unit_vector(0)) note("algebra map does not preserve the unit");
  for (Index i = 0; i < A.dim(); ++i) {
    if (!homogeneous_of_degree(B.basis(), f.matrix.columns[i], A.degree(i)))
      note("algebra map does not preserve the degree of basis " + std::to_string(i));
    if (B.apply_d(f.apply(unit_vector(i))) != f.apply(A.d(i)))
      note("algebra map does not commute with d on basis " + std::to_string(i));
    for (Index j = 0; j < A.dim(); ++j) {
      try {
        SparseVec lhs = f.apply(A.product(i, j));
        SparseVec rhs = B.multiply(f.matrix.columns[i], f.matrix.columns[j]);
        if (lhs != rhs) note(pair_text("multiplicativity", i, j));
      } catch (const HorizonExceeded&) {
      }
    }
  }
  return out;
}

DGAlgebra validate_algebra(Field F, GradedBasis basis, std::vector<SparseVec> d, StructureTable mult) {
  DGAlgebra A(F, std::move(basis), std::move(d), std::move(mult));
  auto v = algebra_violations(A);
  if (!v.empty()) throw ValidationError(joined(v));
  return A;
}

void validate_bimodule(const DGBimodule& M) {
  auto v = bimodule_violations(M);
  if (!v.empty()) throw ValidationError(joined(v));
}

void validate_pointed(const PointedBimodule& X) {
  validate_bimodule(X.base);
  if (!homogeneous_of_degree(X.base.basis(), X.point, 0))
    throw ValidationError("the point must be a degree-0 vector");
  if (!X.base.apply_d(X.point).empty()) throw ValidationError("the point is not a cocycle");
}

void validate_algebra_map(const AlgebraMap& f) {
  auto v = algebra_map_violations(f);
  if (!v.empty()) throw ValidationError(joined(v));
}

}  // namespace dga
