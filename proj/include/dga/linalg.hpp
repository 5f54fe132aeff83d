#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dga/field.hpp"

namespace dga {

using Index = std::size_t;

/// Sparse vector: strictly increasing indices, no zero values.
using SparseVec = std::vector<std::pair<Index, Scalar>>;

SparseVec unit_vector(Index i);
SparseVec scaled(const Field& F, const SparseVec& v, const Scalar& c);
/// y + c * x
SparseVec axpy(const Field& F, const SparseVec& y, const Scalar& c, const SparseVec& x);
SparseVec add(const Field& F, const SparseVec& a, const SparseVec& b);
SparseVec subtract(const Field& F, const SparseVec& a, const SparseVec& b);
/// Builds a canonical sparse vector from unsorted (index, value) terms, summing repeats.
SparseVec collect(const Field& F, std::vector<std::pair<Index, Scalar>> terms);
Scalar coefficient(const SparseVec& v, Index i);
SparseVec from_dense(const Field& F, const std::vector<Scalar>& dense);
std::vector<Scalar> to_dense(const SparseVec& v, Index size);

/// Linear map stored by columns: column j is the image of source basis vector j.
struct Matrix {
  Index rows = 0;
  Index cols = 0;
  std::vector<SparseVec> columns;

  Matrix() = default;
  Matrix(Index r, Index c) : rows(r), cols(c), columns(c) {}

  static Matrix zero(Index r, Index c) { return Matrix(r, c); }
  static Matrix identity(Index n);

  bool is_zero() const;
  Scalar at(Index r, Index c) const { return coefficient(columns[c], r); }
  void set(const Field& F, Index r, Index c, const Scalar& v);
};

SparseVec apply(const Field& F, const Matrix& m, const SparseVec& v);
/// a ∘ b
Matrix compose(const Field& F, const Matrix& a, const Matrix& b);
Matrix add(const Field& F, const Matrix& a, const Matrix& b);
Matrix scaled(const Field& F, const Matrix& m, const Scalar& c);
bool operator==(const Matrix& a, const Matrix& b);

/// Incremental row echelon form with optional tracking of how each stored row
/// is expressed in terms of the inserted vectors. Pivots are the smallest
/// index of each row; callers that want "largest element as pivot" order their
/// coordinates accordingly.
class Echelon {
 public:
  explicit Echelon(const Field& F, bool track = false) : F_(F), track_(track) {}

  struct Reduced {
    SparseVec remainder;
    /// v = remainder + Σ combination[i] · (i-th inserted vector); only when tracking.
    SparseVec combination;
  };

  Reduced reduce(const SparseVec& v) const;

  /// Inserts v. Returns std::nullopt when v was independent; otherwise the
  /// combination of earlier inserted vectors equal to v (empty when untracked).
  std::optional<SparseVec> insert(const SparseVec& v);

  bool contains(const SparseVec& v) const { return reduce(v).remainder.empty(); }
  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return inserted_; }
  bool is_pivot(Index i) const { return pivot_.count(i) != 0; }
  const Field& field() const { return F_; }

 private:
  struct Row {
    SparseVec vec;
    SparseVec combo;
  };
  Field F_;
  bool track_;
  std::vector<Row> rows_;
  std::map<Index, std::size_t> pivot_;
  std::size_t inserted_ = 0;
};

std::size_t rank(const Field& F, const Matrix& m);
std::vector<SparseVec> kernel(const Field& F, const Matrix& m);
/// Columns of m that form a basis of its image (images, not indices).
std::vector<SparseVec> image_basis(const Field& F, const Matrix& m);
std::optional<SparseVec> solve(const Field& F, const Matrix& m, const SparseVec& rhs);
bool is_invertible(const Field& F, const Matrix& m);

}  // namespace dga
