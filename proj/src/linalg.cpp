#include "dga/linalg.hpp"

#include <algorithm>

namespace dga {

SparseVec unit_vector(Index i) { return {{i, Scalar(1)}}; }

SparseVec scaled(const Field& F, const SparseVec& v, const Scalar& c) {
  SparseVec out;
  if (c == 0) return out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) {
    Scalar y = F.mul(x, c);
    if (y != 0) out.emplace_back(i, std::move(y));
  }
  return out;
}

SparseVec axpy(const Field& F, const SparseVec& y, const Scalar& c, const SparseVec& x) {
  if (c == 0 || x.empty()) return y;
  SparseVec out;
  out.reserve(y.size() + x.size());
  auto a = y.begin();
  auto b = x.begin();
  while (a != y.end() || b != x.end()) {
    if (b == x.end() || (a != y.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == y.end() || b->first < a->first) {
      Scalar v = F.mul(c, b->second);
      if (v != 0) out.emplace_back(b->first, std::move(v));
      ++b;
    } else {
      Scalar v = F.add(a->second, F.mul(c, b->second));
      if (v != 0) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

SparseVec add(const Field& F, const SparseVec& a, const SparseVec& b) {
  return axpy(F, a, Scalar(1), b);
}

SparseVec subtract(const Field& F, const SparseVec& a, const SparseVec& b) {
  return axpy(F, a, F.from_int(-1), b);
}

SparseVec collect(const Field& F, std::vector<std::pair<Index, Scalar>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  SparseVec out;
  for (auto& [i, x] : terms) {
    if (!out.empty() && out.back().first == i) {
      out.back().second = F.add(out.back().second, x);
    } else {
      out.emplace_back(i, F.reduce(x));
    }
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

Scalar coefficient(const SparseVec& v, Index i) {
  auto it = std::lower_bound(v.begin(), v.end(), i,
                             [](const auto& e, Index k) { return e.first < k; });
  if (it != v.end() && it->first == i) return it->second;
  return Scalar(0);
}

SparseVec from_dense(const Field& F, const std::vector<Scalar>& dense) {
  SparseVec out;
  for (Index i = 0; i < dense.size(); ++i) {
    Scalar x = F.reduce(dense[i]);
    if (x != 0) out.emplace_back(i, std::move(x));
  }
  return out;
}

std::vector<Scalar> to_dense(const SparseVec& v, Index size) {
  std::vector<Scalar> out(size, Scalar(0));
  for (const auto& [i, x] : v)
    if (i < size) out[i] = x;
  return out;
}

Matrix Matrix::identity(Index n) {
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) m.columns[i] = unit_vector(i);
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(columns.begin(), columns.end(), [](const SparseVec& c) { return c.empty(); });
}

void Matrix::set(const Field& F, Index r, Index c, const Scalar& v) {
  SparseVec& col = columns[c];
  Scalar old = coefficient(col, r);
  col = axpy(F, col, Scalar(1), SparseVec{{r, F.sub(v, old)}});
}

SparseVec apply(const Field& F, const Matrix& m, const SparseVec& v) {
  SparseVec out;
  for (const auto& [j, x] : v) out = axpy(F, out, x, m.columns.at(j));
  return out;
}

Matrix compose(const Field& F, const Matrix& a, const Matrix& b) {
  Matrix out(a.rows, b.cols);
  for (Index j = 0; j < b.cols; ++j) out.columns[j] = apply(F, a, b.columns[j]);
  return out;
}

Matrix add(const Field& F, const Matrix& a, const Matrix& b) {
  Matrix out(a.rows, a.cols);
  for (Index j = 0; j < a.cols; ++j) out.columns[j] = add(F, a.columns[j], b.columns[j]);
  return out;
}

Matrix scaled(const Field& F, const Matrix& m, const Scalar& c) {
  Matrix out(m.rows, m.cols);
  for (Index j = 0; j < m.cols; ++j) out.columns[j] = scaled(F, m.columns[j], c);
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows == b.rows && a.cols == b.cols && a.columns == b.columns;
}

Echelon::Reduced Echelon::reduce(const SparseVec& v) const {
  std::map<Index, Scalar> work(v.begin(), v.end());
  std::vector<Scalar> combination(track_ ? inserted_ : 0);
  std::vector<Index> touched;
  auto it = work.begin();
  while (it != work.end()) {
    if (it->second == 0) {
      it = work.erase(it);
      continue;
    }
    auto p = pivot_.find(it->first);
    if (p == pivot_.end()) {
      ++it;
      continue;
    }
    const Row& row = rows_[p->second];
    Scalar c = it->second;
    for (const auto& [i, x] : row.vec) {
      Scalar& slot = work[i];
      slot = F_.sub(slot, F_.mul(c, x));
    }
    if (track_)
      for (const auto& [i, x] : row.combo) {
        if (combination[i] == 0) touched.push_back(i);
        combination[i] = F_.add(combination[i], F_.mul(c, x));
      }
    it = work.erase(it);
  }
  Reduced out;
  for (auto& [i, x] : work)
    if (x != 0) out.remainder.emplace_back(i, x);
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (Index i : touched)
    if (combination[i] != 0) out.combination.emplace_back(i, std::move(combination[i]));
  return out;
}

std::optional<SparseVec> Echelon::insert(const SparseVec& v) {
  Reduced r = reduce(v);
  const Index tag = inserted_++;
  if (r.remainder.empty()) return r.combination;
  Scalar lead_inv = F_.inv(r.remainder.front().second);
  Row row;
  row.vec = scaled(F_, r.remainder, lead_inv);
  if (track_) {
    // remainder = v - Σ combination·inserted  ⇒  row = (e_tag - combination) / lead
    SparseVec combo = subtract(F_, unit_vector(tag), r.combination);
    row.combo = scaled(F_, combo, lead_inv);
  }
  pivot_.emplace(row.vec.front().first, rows_.size());
  rows_.push_back(std::move(row));
  return std::nullopt;
}

std::size_t rank(const Field& F, const Matrix& m) {
  Echelon e(F);
  for (const auto& c : m.columns) e.insert(c);
  return e.rank();
}

std::vector<SparseVec> kernel(const Field& F, const Matrix& m) {
  Echelon e(F, true);
  std::vector<SparseVec> out;
  for (Index j = 0; j < m.cols; ++j) {
    auto dep = e.insert(m.columns[j]);
    if (dep) out.push_back(subtract(F, unit_vector(j), *dep));
  }
  return out;
}

std::vector<SparseVec> image_basis(const Field& F, const Matrix& m) {
  Echelon e(F);
  std::vector<SparseVec> out;
  for (const auto& c : m.columns)
    if (!e.insert(c)) out.push_back(c);
  return out;
}

std::optional<SparseVec> solve(const Field& F, const Matrix& m, const SparseVec& rhs) {
  Echelon e(F, true);
  for (const auto& c : m.columns) e.insert(c);
  auto r = e.reduce(rhs);
  if (!r.remainder.empty()) return std::nullopt;
  return r.combination;
}

bool is_invertible(const Field& F, const Matrix& m) {
  return m.rows == m.cols && rank(F, m) == m.rows;
}

}  // namespace dga
