#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dga/field.hpp"
#include "dga/linalg.hpp"

namespace dga {

/// Requested degrees fall outside the range where a computation is certified.
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stand-in for "no bound" in degree windows.
constexpr int kUnboundedDegree = 1 << 20;

/// Closed integer interval [lo, hi]; empty when lo > hi.
struct DegreeWindow {
  int lo = 0;
  int hi = -1;

  bool empty() const { return lo > hi; }
  bool contains(int n) const { return lo <= n && n <= hi; }
  bool contains(const DegreeWindow& w) const { return w.empty() || (lo <= w.lo && w.hi <= hi); }
  friend bool operator==(const DegreeWindow&, const DegreeWindow&) = default;
};

/// Cochain complex (differential of degree +1) over an exact field.
///
/// Dimensions are stored on the represented range [lo, hi] and d^n for
/// lo <= n < hi. A *bounded* complex is zero outside its range, so every
/// degree is represented; an unbounded one is a window onto something larger
/// and only its interior is certified.
class ChainComplex {
 public:
  ChainComplex(Field F, DegreeWindow range, std::map<int, Index> dims,
               std::map<int, Matrix> differentials, bool bounded,
               std::map<int, std::vector<std::string>> labels = {});

  /// The zero complex (bounded, empty range).
  static ChainComplex zero(Field F);
  /// k placed in a single degree.
  static ChainComplex ground(Field F, int degree = 0);

  const Field& field() const { return F_; }
  DegreeWindow range() const { return range_; }
  bool bounded() const { return bounded_; }
  Index dim(int n) const;
  /// d^n : C^n → C^{n+1}. Zero outside the range of a bounded complex.
  Matrix d(int n) const;
  bool has_differential(int n) const;
  /// Degrees where homology is computable from the stored data.
  DegreeWindow certified() const;
  const std::vector<std::string>* labels(int n) const;
  /// Degrees with nonzero dimension (bounded complexes only).
  DegreeWindow support() const;

  /// Restriction to a sub-range (marked unbounded unless nothing is lost).
  ChainComplex restrict_to(DegreeWindow w) const;
  /// Declares the complex zero below and/or above its range while keeping the other side open.
  ChainComplex& set_zero_outside(bool below, bool above);

 private:
  Field F_;
  DegreeWindow range_;
  std::map<int, Index> dims_;
  std::map<int, Matrix> d_;
  bool bounded_;
  bool zero_below_ = false;
  bool zero_above_ = false;
  std::map<int, std::vector<std::string>> labels_;
};

/// One homology group with cocycle representatives and a classifier that
/// expresses any cocycle in those representatives modulo boundaries.
class HomologyGroup {
 public:
  HomologyGroup(const Field& F, int degree, Matrix incoming, Matrix outgoing);

  int degree() const { return degree_; }
  Index dim() const { return reps_.size(); }
  const std::vector<SparseVec>& representatives() const { return reps_; }
  Index cocycle_dim() const { return cocycle_dim_; }
  Index boundary_rank() const { return boundary_rank_; }
  bool is_cocycle(const SparseVec& v) const;
  bool is_boundary(const SparseVec& v) const;
  /// Coordinates of the class of a cocycle; throws if v is not a cocycle.
  SparseVec coordinates(const SparseVec& v) const;

 private:
  Field F_;
  int degree_;
  Matrix outgoing_;
  std::vector<SparseVec> reps_;
  Index cocycle_dim_ = 0;
  Index boundary_rank_ = 0;
  Echelon classifier_;
  std::map<Index, Index> rep_of_tag_;
};

struct HomologyResult {
  DegreeWindow window;
  std::map<int, HomologyGroup> groups;

  Index dim(int n) const { return groups.at(n).dim(); }
  std::map<int, Index> dims() const;
};

HomologyResult homology(const ChainComplex& C, DegreeWindow window);
HomologyGroup homology_at(const ChainComplex& C, int n);

/// Chain map of degree `shift` (components f^n : S^n → T^{n+shift}).
struct GradedMap {
  ChainComplex source;
  ChainComplex target;
  int shift = 0;
  std::map<int, Matrix> components;

  Matrix at(int n) const;
};

/// Checks the chain-map law on every degree where both sides are represented.
bool is_chain_map(const GradedMap& f);
GradedMap identity_map(const ChainComplex& C);
/// Map induced on homology in degree n (matrix in representative coordinates).
Matrix induced_on_homology(const GradedMap& f, const HomologyGroup& src, const HomologyGroup& tgt);

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);
ChainComplex hom_complex(const ChainComplex& M, const ChainComplex& N);
ChainComplex tensor_product(const ChainComplex& M, const ChainComplex& N);
/// (Σ^m M)^n = M^{n+m}; differential multiplied by (-1)^m.
ChainComplex suspend(const ChainComplex& M, int m);
/// Mapping cone of a degree-0 chain map: cone^n = S^{n+1} ⊕ T^n, d(s,t) = (-ds, f(s)+dt).
ChainComplex cone(const GradedMap& f);
/// True iff the cone is acyclic on the window. Throws WindowError when the
/// cone is not certified on the whole window.
bool is_quasi_iso(const GradedMap& f, DegreeWindow window);

/// π_n Map(M, N) = H^{-n} Hom(M, N) for n >= 0 (field coefficients).
HomologyGroup pi_n_mod_map(const ChainComplex& M, const ChainComplex& N, int n);

/// Bookkeeping for basis elements of Hom(M,N)^n and (M⊗N)^n.
struct PairIndex {
  int left_degree;
  Index left;
  Index right;
};
std::vector<PairIndex> hom_basis(const ChainComplex& M, const ChainComplex& N, int n);
std::vector<PairIndex> tensor_basis(const ChainComplex& M, const ChainComplex& N, int n);

}  // namespace dga
