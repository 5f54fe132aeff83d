#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dga/algebra.hpp"

namespace dga {

enum class Status { Exact, Stabilized, Unstable };

/// "EXACT", "STABILIZED(N)" or "UNSTABLE(N)".
std::string status_text(Status s, int cutoff);
/// Weakest of two statuses (EXACT > STABILIZED > UNSTABLE).
Status weakest(Status a, Status b);

struct CohomologyOptions {
  int cutoff = 8;
  bool stabilize = true;
};

struct CohomologyGroup {
  int degree = 0;
  Index dim = 0;
  Status status = Status::Unstable;
  int cutoff = 0;
  /// Cocycles in the cutoff-N cochain basis.
  std::vector<SparseVec> representatives;
};

/// A bar word [a1|...|as] (R̄ basis indices, all >= 1) together with an input
/// basis element of the module being resolved (always 0 for Hochschild cochains).
struct BarSlot {
  std::vector<Index> word;
  Index input = 0;
  int weight = 0;
  /// Σ(|a_i| - 1) + |input|; a cochain on this slot with output m has total degree |m| - shift.
  int shift = 0;
};

/// Normalized cochains on the bar resolution of R.
///
/// Hochschild kind: maps (sR̄)^{⊗s} → M for an (R,R)-bimodule M, computing HH(R, M).
/// Ext kind: maps (sR̄)^{⊗s} ⊗ N → M for left R-modules N, M, computing Ext_R(N, M).
/// Only slots of weight <= cutoff are kept; this is a quotient complex.
class HochschildComplex {
 public:
  enum class Kind { Hochschild, Ext };

  static HochschildComplex hochschild(const DGBimodule& M, int cutoff, bool positive_only = false);
  static HochschildComplex ext(const DGBimodule& N, const DGBimodule& M, int cutoff);

  struct Column {
    Index slot;
    Index output;
  };

  Kind kind() const { return kind_; }
  int cutoff() const { return cutoff_; }
  bool positive_only() const { return positive_only_; }
  const DGAlgebra& algebra() const { return *R_; }
  const DGBimodule& coefficients() const { return M_; }
  const std::vector<BarSlot>& slots() const { return slots_; }

  const std::vector<Column>& basis(int n) const;
  Index dim(int n) const { return basis(n).size(); }
  std::optional<Index> index_of(int n, Index slot, Index output) const;
  std::optional<Index> slot_index(const std::vector<Index>& word, Index input) const;
  /// δ : C^n → C^{n+1}
  const Matrix& differential(int n) const;
  HomologyGroup cohomology(int n) const;
  /// True when C^{n-1}, C^n, C^{n+1} coincide with the untruncated complex.
  bool exact_in(int n) const;
  /// The s = 0 component of a cochain, in local coordinates of M^n.
  SparseVec length_zero_part(int n, const SparseVec& cochain) const;
  /// The cochain [] ↦ m for m in local coordinates of M^n.
  SparseVec from_length_zero(int n, const SparseVec& m) const;
  /// Complex on the window (unbounded, certified on the window).
  ChainComplex assemble(DegreeWindow w) const;

 private:
  HochschildComplex() = default;
  Index intern_slot(const std::vector<Index>& word, Index input) const;
  std::vector<Index> slots_in_degree(int n) const;
  std::optional<int> needed_weight(int n) const;
  int input_degree(Index i) const;
  int letter_shift(Index a) const { return R_->degree(a) - 1; }

  Kind kind_ = Kind::Hochschild;
  std::shared_ptr<const DGAlgebra> R_;
  DGBimodule M_;
  std::optional<DGBimodule> N_;
  int cutoff_ = 0;
  bool positive_only_ = false;
  std::vector<Index> letters_;
  mutable std::vector<BarSlot> slots_;
  mutable std::map<std::pair<std::vector<Index>, Index>, Index> slot_lookup_;
  std::vector<Index> m_local_;
  std::map<int, std::vector<Index>> m_by_degree_;
  mutable std::map<int, std::vector<Column>> basis_;
  mutable std::map<int, std::map<std::pair<Index, Index>, Index>> index_;
  mutable std::map<int, Matrix> d_;
};

/// Word-length horizon for a free algebra on generators of the given degrees so
/// that HH(T(V), T(V)) on the window is computed faithfully at cutoffs up to
/// cutoff + 2. Generators must all be positive or all negative.
int free_algebra_horizon(const std::vector<int>& generator_degrees, DegreeWindow window, int cutoff);

CohomologyGroup hh_group(const DGBimodule& M, int n, const CohomologyOptions& opt = {});
CohomologyGroup ext_group(const DGBimodule& N, const DGBimodule& M, int n,
                          const CohomologyOptions& opt = {});
/// Der^n := H^{n+1} of the positive-length cochain subcomplex.
CohomologyGroup der_group(const DGBimodule& M, int n, const CohomologyOptions& opt = {});

enum class Verdict { Exact, NotExact, Undetermined };
std::string verdict_text(Verdict v);

struct LESNode {
  std::string label;
  int degree = 0;
  Index dim = 0;
  Status status = Status::Unstable;
  int cutoff = 0;
  /// How the dimension was obtained (e.g. "computed", "oracle", "les-derived").
  std::string source = "computed";
  Verdict verdict = Verdict::Undetermined;
};

/// A stretch of a long exact sequence: nodes in order, rank of the map leaving each node
/// (nullopt when unknown).
struct LESReport {
  std::vector<LESNode> nodes;
  std::vector<std::optional<Index>> outgoing_rank;
  bool all_determined_exact() const;
  Index count(Verdict v) const;
};

/// …→ Der^{n-1} → HH^n → H^n(M) → Der^n →… for n in the window.
LESReport der_hh_les(const DGBimodule& M, DegreeWindow window, const CohomologyOptions& opt = {});

/// Image of HH^n(R, M) → H^n(M): projection of cocycles to their length-0 component.
struct EdgeMap {
  CohomologyGroup source;
  Index target_dim = 0;
  Matrix matrix;
};
EdgeMap edge_map(const DGBimodule& M, int n, const CohomologyOptions& opt = {});

/// HH^0(R, R) with the cup-product ring structure.
struct HH0Ring {
  Field field = Field::rationals();
  CohomologyGroup group;
  /// products[i][j] = coordinates of rep_i ∪ rep_j.
  std::vector<std::vector<SparseVec>> products;
  SparseVec unit;
  /// Edge map to H^0(R) and the unit of H^0(R) in its coordinates.
  Matrix edge;
  Index h0_dim = 0;
  SparseVec h0_unit;
  bool cup_closed = true;

  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
  Matrix left_multiplication(const SparseVec& a) const;
};
HH0Ring hh0_ring(const DGBimodule& regular, const CohomologyOptions& opt = {});
/// Cup product of two cochains of total degree 0 on a regular bimodule.
SparseVec cup_product(const HochschildComplex& C, const SparseVec& f, const SparseVec& g);

/// All units of HH^0 over F_p by enumeration. Throws ScopeError over Q.
std::vector<SparseVec> hh0_units(const HH0Ring& ring);

/// B(R, R, S) for a left R-module S: basis r[a1|…|as]m, weight <= cutoff (a subcomplex).
struct BarComplex {
  ChainComplex complex;
  GradedMap augmentation;
};
BarComplex bar_complex(const DGBimodule& S, int cutoff, DegreeWindow window);

struct BarCheck {
  bool quasi_iso = false;
  Status status = Status::Unstable;
  int cutoff = 0;
  DegreeWindow window;
  /// Rank of H^n(cone) at cutoff N → H^n(cone) at cutoff N+1.
  std::map<int, Index> cone_dims;
};
BarCheck bar_augmentation_check(const DGBimodule& S, DegreeWindow window,
                                const CohomologyOptions& opt = {});

}  // namespace dga
