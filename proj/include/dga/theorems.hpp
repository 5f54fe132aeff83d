#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dga/hochschild.hpp"

namespace dga {

enum class Route { Corollary, LesBound, Oracle };
std::string route_text(Route r);

/// A homotopy group of the mapping space at the base point φ.
struct PiGroup {
  int n = 0;
  /// Dimension for n >= 2; group order for n = 1.
  Index value = 0;
  /// Set when the group is only bounded by its neighbours in the sequence.
  std::optional<std::pair<Index, Index>> bounds;
  Route route = Route::LesBound;
  Status status = Status::Unstable;
  bool determined = false;
  std::string note;
};

/// The source of φ when it is a tensor algebra T(V) on cocycle generators.
struct FreeSource {
  std::vector<int> generator_degrees;
};

/// dim π_n Map(T(V), S) = Σ_j dim V^j · dim H^{j−n}(S).
PiGroup free_source_oracle(const FreeSource& V, const DGAlgebra& S, int n);

/// [R,S]_n for n >= 2: HH^{−(n−1)}(R, S_φ) when S is strict and connective, otherwise
/// bounded through the long exact sequence.
PiGroup pi_map_alg(const AlgebraMap& phi, int n, const CohomologyOptions& opt = {},
                   const std::optional<FreeSource>& free = std::nullopt);

/// Nodes H^{−i}(S), HH^{−i}(R,S), [R,S]_{i+1} for i = i_max … 1, ending at H^{−1}(S).
LESReport theorem_b_les_report(const AlgebraMap& phi, int i_max, const CohomologyOptions& opt = {},
                               const std::optional<FreeSource>& free = std::nullopt);
/// Same nodes as the sequence of π_i of the fibre sequence; shared with theorem_b_les_report.
LESReport fiber_les_assemble(const AlgebraMap& phi, int i_max, const CohomologyOptions& opt = {},
                             const std::optional<FreeSource>& free = std::nullopt);

struct TheoremAReport {
  LESReport les;
  Index h_minus1_dim = 0;
  Index hh0_units = 0;
  Index h0_units = 0;
  /// Units of HH^0 mapping to 1 in H^0(R), in enumeration order.
  std::vector<SparseVec> kernel;
  bool kernel_is_subgroup = false;
  PiGroup pi1;
};
/// Tail H^{−1}(R) → [R,R]_1 → HH^0(R)^× → H^0(R)^× over F_p.
TheoremAReport theorem_a_report(std::shared_ptr<const DGAlgebra> R, const CohomologyOptions& opt = {});

struct LemmaCReport {
  int n = 0;
  /// HH^{−n+1}(R, R⊕M), with R⊕M restricted along the inclusion.
  Index a = 0;
  /// HH^{−n+1}(R,R) + HH^{−n+1}(R,M).
  Index b = 0;
  /// Der^{−n}(R,M) + HH^{−n+1}(R,R).
  Index c = 0;
  bool equal = false;
  Status status = Status::Unstable;
};
LemmaCReport lemma_c_check(const DGBimodule& M, int n, const CohomologyOptions& opt = {});

struct DerHHReport {
  int n = 0;
  Index der = 0;
  Index hh = 0;
  /// dim H^{−n}(M), dim H^{−n+1}(M).
  Index h_left = 0;
  Index h_right = 0;
  bool les_exact = false;
  bool equal = false;
  Status status = Status::Unstable;
};
/// Der^{−n}(R,M) against HH^{−n+1}(R,M) through …→ H^{−n}(M) → Der^{−n} → HH^{−n+1} → H^{−n+1}(M).
DerHHReport der_hh_relation(const DGBimodule& M, int n, const CohomologyOptions& opt = {});

struct SemifreeOptions {
  /// Include z in degree −1 with dz = xy − yx.
  bool with_relation = true;
  /// Polynomial degree cap for homotopies in S[t, dt].
  int degree_cap = 4;
};
struct SemifreePi0 {
  /// Dimension of maps modulo homotopy out of the associative presentation.
  Index associative = 0;
  /// Same for the commutative source k[x, y].
  Index commutative = 0;
  /// Dimensions at degree caps D and D+1.
  std::pair<Index, Index> associative_by_cap;
  Status status = Status::Unstable;
  /// The homology dimensions the counts are expressed in: H^0(S), H^{−1}(S).
  Index h0 = 0;
  Index h_minus1 = 0;
};
/// π_0 Map(R, S) for R = k⟨x, y, z⟩, |z| = −1, dz = xy − yx, with S graded commutative over Q.
SemifreePi0 semifree_pi0(const DGAlgebra& S, const SemifreeOptions& opt = {});

/// Graded commutativity of the structure table.
bool is_graded_commutative(const DGAlgebra& S);

}  // namespace dga
