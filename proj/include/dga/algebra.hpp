#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dga/complex.hpp"

namespace dga {

/// A product or action was requested beyond the word-length horizon of a
/// truncated free algebra.
class HorizonExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Partial structure constants: entry (i, j) of a rows×cols table, nullopt when
/// undefined (beyond a truncation horizon).
struct StructureTable {
  Index rows = 0;
  Index cols = 0;
  std::vector<std::optional<SparseVec>> entries;

  StructureTable() = default;
  StructureTable(Index r, Index c) : rows(r), cols(c), entries(r * c, SparseVec{}) {}

  const std::optional<SparseVec>& at(Index i, Index j) const { return entries[i * cols + j]; }
  std::optional<SparseVec>& at(Index i, Index j) { return entries[i * cols + j]; }
};

/// Graded vector space with a global ordered basis, each element homogeneous.
struct GradedBasis {
  std::vector<int> degree;
  std::vector<std::string> labels;

  Index size() const { return degree.size(); }
  std::vector<Index> in_degree(int n) const;
  /// Position of each global index inside its degree.
  std::vector<Index> local_positions() const;
  DegreeWindow support() const;
};

/// DG algebra as structure constants. Basis element 0 is the unit.
///
/// Finite algebras are complete. A truncated algebra (free algebra on words up to
/// a horizon) is complete only in the degrees of `complete()`; products landing
/// beyond the horizon are undefined.
class DGAlgebra {
 public:
  DGAlgebra() = default;
  DGAlgebra(Field F, GradedBasis basis, std::vector<SparseVec> d, StructureTable mult,
            std::vector<int> weight = {}, std::optional<DegreeWindow> complete = std::nullopt);

  const Field& field() const { return F_; }
  const GradedBasis& basis() const { return basis_; }
  Index dim() const { return basis_.size(); }
  int degree(Index i) const { return basis_.degree[i]; }
  int weight(Index i) const { return weight_[i]; }
  const SparseVec& d(Index i) const { return d_[i]; }
  const StructureTable& table() const { return mult_; }
  bool truncated() const { return complete_.has_value(); }
  /// Degrees where every basis element of the (infinite) algebra is present.
  DegreeWindow complete() const;

  /// e_i · e_j; throws HorizonExceeded when undefined.
  const SparseVec& product(Index i, Index j) const;
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
  SparseVec apply_d(const SparseVec& v) const;
  /// Underlying complex (bounded for finite algebras).
  ChainComplex complex() const;
  /// Global basis index ↔ position in ChainComplex degree.
  SparseVec to_local(const SparseVec& v, int n) const;
  SparseVec to_global(const SparseVec& v, int n) const;

 private:
  Field F_ = Field::rationals();
  GradedBasis basis_;
  std::vector<SparseVec> d_;
  StructureTable mult_;
  std::vector<int> weight_;
  std::optional<DegreeWindow> complete_;
  std::vector<Index> local_;
};

/// Bimodule over (R, S) with left action R⊗M → M and right action M⊗S → M.
class DGBimodule {
 public:
  DGBimodule() = default;
  DGBimodule(std::shared_ptr<const DGAlgebra> R, std::shared_ptr<const DGAlgebra> S, GradedBasis basis,
             std::vector<SparseVec> d, StructureTable left, StructureTable right,
             std::optional<DegreeWindow> complete = std::nullopt);

  const DGAlgebra& left_algebra() const { return *R_; }
  const DGAlgebra& right_algebra() const { return *S_; }
  std::shared_ptr<const DGAlgebra> left_ptr() const { return R_; }
  std::shared_ptr<const DGAlgebra> right_ptr() const { return S_; }
  const Field& field() const { return R_->field(); }
  const GradedBasis& basis() const { return basis_; }
  Index dim() const { return basis_.size(); }
  int degree(Index i) const { return basis_.degree[i]; }
  const SparseVec& d(Index i) const { return d_[i]; }
  const StructureTable& left_table() const { return left_; }
  const StructureTable& right_table() const { return right_; }
  bool truncated() const { return complete_.has_value(); }
  DegreeWindow complete() const;

  /// e_r · e_m
  const SparseVec& left(Index r, Index m) const;
  /// e_m · e_s
  const SparseVec& right(Index m, Index s) const;
  SparseVec act_left(const SparseVec& r, const SparseVec& m) const;
  SparseVec act_right(const SparseVec& m, const SparseVec& s) const;
  SparseVec apply_d(const SparseVec& v) const;
  ChainComplex complex() const;

 private:
  std::shared_ptr<const DGAlgebra> R_;
  std::shared_ptr<const DGAlgebra> S_;
  GradedBasis basis_;
  std::vector<SparseVec> d_;
  StructureTable left_;
  StructureTable right_;
  std::optional<DegreeWindow> complete_;
  std::vector<Index> local_;
};

/// Bimodule with a chosen degree-0 cocycle (image of 1 under k → X).
struct PointedBimodule {
  DGBimodule base;
  SparseVec point;
};

/// Degree-0 unital multiplicative chain map, as a matrix on global bases.
struct AlgebraMap {
  std::shared_ptr<const DGAlgebra> source;
  std::shared_ptr<const DGAlgebra> target;
  Matrix matrix;

  SparseVec apply(const SparseVec& v) const { return dga::apply(source->field(), matrix, v); }
};

/// Violated identities with their basis witnesses; empty when valid.
std::vector<std::string> algebra_violations(const DGAlgebra& A);
std::vector<std::string> bimodule_violations(const DGBimodule& M);
std::vector<std::string> algebra_map_violations(const AlgebraMap& f);

/// Builds and checks an algebra; throws ValidationError listing the witnesses.
DGAlgebra validate_algebra(Field F, GradedBasis basis, std::vector<SparseVec> d, StructureTable mult);
void validate_bimodule(const DGBimodule& M);
void validate_pointed(const PointedBimodule& X);
void validate_algebra_map(const AlgebraMap& f);

DGAlgebra ground_algebra(Field F);
/// k[ε]/(ε²) with |ε| = eps_degree, zero differential.
DGAlgebra dual_numbers(Field F, int eps_degree = 0);
/// Matrix algebra M_n(k) in degree 0.
DGAlgebra matrix_algebra(Field F, int n);
/// Free graded algebra on generators of the given degrees, words of length ≤ horizon,
/// zero differential. Word weight = length.
DGAlgebra free_algebra(Field F, const std::vector<int>& generator_degrees, int horizon);

/// A ⊗ B with (a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb'.
DGAlgebra tensor_algebras(const DGAlgebra& A, const DGAlgebra& B);
/// a ·op b = (-1)^{|a||b|} b a
DGAlgebra opposite(const DGAlgebra& A);
DGAlgebra enveloping(const DGAlgebra& A);
/// Same algebra expressed in the basis given by the columns of an invertible
/// degree-preserving matrix P (new basis vector j = Σ P[i][j] e_i, column 0 = unit).
DGAlgebra change_basis(const DGAlgebra& A, const Matrix& P);

DGBimodule regular_bimodule(std::shared_ptr<const DGAlgebra> R);
/// R ⊗ S with the outer actions.
DGBimodule free_bimodule(std::shared_ptr<const DGAlgebra> R, std::shared_ptr<const DGAlgebra> S);
DGBimodule bimodule_direct_sum(const DGBimodule& a, const DGBimodule& b);
/// cone(id_M), contractible: basis ΣM then M.
DGBimodule contractible_cone(const DGBimodule& M);
/// Σ^m M with actions r·(σm) = (-1)^{m|r|} σ(rm) and (σm)·s = σ(ms).
DGBimodule suspend_bimodule(const DGBimodule& M, int m);

/// R ⊕ M with (r,m)(r',m') = (rr', r·m' + m·r').
DGAlgebra square_zero_extension(const DGAlgebra& R, const DGBimodule& M);

bool is_strict(const DGAlgebra& S);
/// dim H^n(A); zero in complete degrees without basis elements, even outside the certified range.
Index homology_dim(const DGAlgebra& A, int n);
/// Returns a y with xy−1, yx−1 boundaries and dy = 0, or nullopt.
std::optional<SparseVec> is_homotopy_invertible(const DGAlgebra& S, const SparseVec& x);
/// Returns y with xy = yx = 1, or nullopt.
std::optional<SparseVec> strict_inverse(const DGAlgebra& S, const SparseVec& x);
bool is_connective(const DGAlgebra& S, DegreeWindow window);

/// Restricts the actions of an (S,S)-bimodule along φ: R → S. With both_sides
/// the result is over (R,R), otherwise (R,S).
DGBimodule restrict_bimodule(const AlgebraMap& phi, const DGBimodule& M, bool both_sides);
AlgebraMap identity_algebra_map(std::shared_ptr<const DGAlgebra> A);
AlgebraMap unit_map(std::shared_ptr<const DGAlgebra> S);

}  // namespace dga
