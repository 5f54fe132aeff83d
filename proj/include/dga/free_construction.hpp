#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dga/hochschild.hpp"

namespace dga {

/// A tensor word x1⊗…⊗xs of basis elements of X; the empty word is the unit.
using Word = std::vector<Index>;
/// Finite linear combination of words.
using WordVec = std::map<Word, Scalar>;

void add_to(const Field& F, WordVec& v, const Word& w, const Scalar& c);
WordVec concat(const Field& F, const WordVec& a, const WordVec& b);

/// Words of length <= L over a basis of X whose degree lies in the window.
class TensorAlgebraTrunc {
 public:
  TensorAlgebraTrunc(PointedBimodule X, int max_length, DegreeWindow window);

  const PointedBimodule& generators() const { return X_; }
  const DGBimodule& module() const { return X_.base; }
  const Field& field() const { return X_.base.field(); }
  int max_length() const { return L_; }
  DegreeWindow window() const { return window_; }
  int degree(const Word& w) const;

  /// Words of degree n in (length, lexicographic) order.
  const std::vector<Word>& words(int n) const;
  Index dim(int n) const { return words(n).size(); }
  std::optional<Index> position(int n, const Word& w) const;
  bool admissible(const Word& w) const;

  /// Leibniz differential with Koszul signs.
  WordVec d(const Word& w) const;
  WordVec d(const WordVec& v) const;
  /// False when d(w) has terms outside the window.
  bool boundary_complete(const Word& w) const;
  /// The point of X as a combination of length-1 words.
  WordVec point() const;
  WordVec letter(const SparseVec& x) const;

 private:
  PointedBimodule X_;
  int L_;
  DegreeWindow window_;
  std::map<int, std::vector<Word>> words_;
  std::map<int, std::map<Word, Index>> position_;
};

/// Per-degree span of the two-sided ideal generated by x⊗(1·s) − x·s and
/// (r·1)⊗y − r·y, plus 1 − ∅ when the unit relation is requested.
class IdealSpan {
 public:
  IdealSpan(std::shared_ptr<const TensorAlgebraTrunc> T, bool unit_relation);

  const TensorAlgebraTrunc& parent() const { return *T_; }
  bool unit_relation() const { return unit_relation_; }
  /// Relation generators before multiplication by words.
  const std::vector<WordVec>& generators() const { return generators_; }
  Index rank(int n) const;
  bool contains(const WordVec& v) const;
  /// Independent spanning vectors of the slice in degree n.
  const std::vector<WordVec>& basis(int n) const;
  /// Words of degree n that are not pivots: the coset representatives.
  const std::vector<Word>& representatives(int n) const;
  /// Coordinates of v modulo the ideal in the representatives of its degree.
  SparseVec reduce(int n, const WordVec& v) const;

 private:
  struct Slice {
    Echelon echelon;
    std::vector<WordVec> basis;
    std::vector<Word> reps;
    std::map<Word, Index> rep_position;
  };
  const Slice& slice(int n) const;
  SparseVec coordinates(int n, const WordVec& v) const;

  std::shared_ptr<const TensorAlgebraTrunc> T_;
  bool unit_relation_;
  std::vector<WordVec> generators_;
  std::map<std::pair<int, int>, std::vector<Word>> factors_;
  mutable std::map<int, Slice> slices_;
};

struct FreeOptions {
  int max_length = 6;
  DegreeWindow window{-4, 4};
  bool unit_relation = true;
};

/// F(X) = T(X)/I(X) on the window. The algebra is built one degree below and two
/// above the window, so that complexes and cones are certified on all of it.
class FreeAlgebraQuotient {
 public:
  FreeAlgebraQuotient(PointedBimodule X, const FreeOptions& opt);

  const TensorAlgebraTrunc& tensor() const { return *T_; }
  const IdealSpan& ideal() const { return *I_; }
  const FreeOptions& options() const { return opt_; }
  /// Representative words, in global order of the algebra basis.
  const std::vector<Word>& basis_words() const { return words_; }
  std::shared_ptr<const DGAlgebra> algebra() const { return A_; }
  Index dim(int n) const;
  DegreeWindow built() const { return built_; }
  /// Complex on the built degrees, certified on the window.
  ChainComplex complex() const;
  /// Global algebra coordinates → position within degree n of complex().
  SparseVec to_local(const SparseVec& v, int n) const;

  /// Class of a combination of words, in global coordinates of algebra().
  SparseVec project(const WordVec& v) const;
  /// R → F(X), r ↦ r·1 and S → F(X), s ↦ 1·s.
  AlgebraMap left_structure() const;
  AlgebraMap right_structure() const;

 private:
  std::shared_ptr<const TensorAlgebraTrunc> T_;
  std::shared_ptr<const IdealSpan> I_;
  FreeOptions opt_;
  DegreeWindow built_;
  std::vector<Word> words_;
  std::map<Word, Index> global_;
  std::map<int, std::vector<Index>> global_by_degree_;
  std::shared_ptr<const DGAlgebra> A_;
};

/// Representative of a word in the coset basis. With full, requires the point
/// to be strictly invertible in X = S and returns a combination of words of length <= 1.
WordVec reduce_word(const FreeAlgebraQuotient& F, const Word& w, bool full = false);

/// Dimensions of F(X) per degree of the window at L and L+1.
struct FreeStability {
  std::map<int, std::pair<Index, Index>> dims;
  Status status = Status::Unstable;
};
FreeStability free_stability(const PointedBimodule& X, const FreeOptions& opt);

/// An algebra under R and S.
struct RSAlgebra {
  std::shared_ptr<const DGAlgebra> algebra;
  AlgebraMap from_left;
  AlgebraMap from_right;
};
/// A over k with its unit maps; R and S of X must both be the ground field.
RSAlgebra over_ground(std::shared_ptr<const DGAlgebra> A);

/// Violations of "f is a pointed R−S-bilinear chain map X → U(A)" (f on global bases).
std::vector<std::string> pointed_map_violations(const PointedBimodule& X, const RSAlgebra& A,
                                                const Matrix& f);
/// The algebra map F(X) → A extending f.
AlgebraMap universal_extension(const FreeAlgebraQuotient& F, const RSAlgebra& A, const Matrix& f);

struct AdjunctionReport {
  Index module_maps = 0;
  Index algebra_maps = 0;
  /// Every extension is one of the enumerated algebra maps and restricts back to its f.
  bool bijection = false;
};
AdjunctionReport adjunction_card_check(const PointedBimodule& X, const RSAlgebra& A, const FreeOptions& opt);

/// S → X, s ↦ 1·s is a quasi-isomorphism.
bool is_distinguished(const PointedBimodule& X);

struct GenerationReport {
  /// degree → (dim H^n I(S), dim of the sub-bimodule generated by [1⊗1 − 1]).
  std::map<int, std::pair<Index, Index>> dims;
  bool equal = false;
  Status status = Status::Unstable;
};
/// X = S_φ pointed by an invertible cocycle; ideal without the unit relation.
GenerationReport ideal_generation_check(const PointedBimodule& X, const FreeOptions& opt);

struct Axiom3Report {
  bool precondition = false;
  std::string reason;
  bool quasi_iso = false;
  Status status = Status::Unstable;
  /// degree → (dim H^n F(X), dim H^n F(S)).
  std::map<int, std::pair<Index, Index>> dims;
};
/// F(S ⊕ C) → F(S) induced by the projection, for a summand C of the pointed S.
Axiom3Report axiom3_smoke(const PointedBimodule& S, const DGBimodule& C, const FreeOptions& opt);

}  // namespace dga
