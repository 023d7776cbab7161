#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fusionmod/quad.hpp"
#include "fusionmod/ring.hpp"

namespace fusionmod {

using IntMatrix = std::vector<int>;  // row-major, rank x rank

// Right module: M[i][a][b] is the multiplicity of m_b in m_a x_i.
class FusionModule {
 public:
  FusionModule() = default;
  FusionModule(RingPtr ring, int rank, std::vector<IntMatrix> matrices);

  const RingPtr& ring() const { return ring_; }
  int rank() const { return rank_; }
  int at(int i, int a, int b) const { return M_[i][static_cast<std::size_t>(a) * rank_ + b]; }
  const IntMatrix& matrix(int i) const { return M_[i]; }
  const std::vector<IntMatrix>& matrices() const { return M_; }

  // Relabel the module basis: new index p[a] for old index a.
  FusionModule permuted(const std::vector<int>& p) const;

  friend bool operator==(const FusionModule& x, const FusionModule& y) {
    return x.rank_ == y.rank_ && x.M_ == y.M_;
  }

 private:
  RingPtr ring_;
  int rank_ = 0;
  std::vector<IntMatrix> M_;
};

FusionModule regular_module(const RingPtr& ring);

// Checks shape, unit, transpose symmetry, associativity and connectivity in that order.
Report validate_module(const FusionModule& K);
bool is_connected(const FusionModule& K);

// Module dimensions d_a, normalized so that sum d_a^2 is the global dimension. The values
// need not lie in Q(sqrt5) (e.g. sqrt(1+d)), so the vector keeps the exact squares d_a^2 and
// the exact ratios d_a/d_0; every product d_a d_b is in Q(sqrt5).
struct DimVector {
  std::vector<QuadNumber> squares;
  std::vector<QuadNumber> ratios;

  int size() const { return static_cast<int>(squares.size()); }
  QuadNumber product(int a, int b) const { return ratios[a] * ratios[b] * squares[0]; }
  std::optional<QuadNumber> value(int a) const;
  double numeric(int a) const;
  // "d" style when in the field, else "sqrt(...)"
  std::string describe(int a) const;
};

// Exact: W = sum_i dims_i M[i] equals d d^T for an indecomposable module.
DimVector dim_vector(const FusionModule& K, const FpData* fp = nullptr);

ObjectVector internal_end(const FusionModule& K, int a);

// Internal ends grouped with multiplicities, sorted by (dimension, coefficients).
std::vector<std::pair<ObjectVector, int>> algebra_table(const FusionModule& K, const FpData* fp = nullptr);

// Permutation p with L.M[i][p a][p b] = K.M[i][a][b], or none.
std::optional<std::vector<int>> modules_equivalent(const FusionModule& K, const FusionModule& L);

// Relabeling-invariant code; equal codes iff equivalent modules.
std::vector<int> canonical_code(const FusionModule& K);
// Module relabeled into the order that realizes canonical_code.
FusionModule canonical_form(const FusionModule& K);

// Restrict the action to a subring (sorted indices) and split into connected components,
// ordered by (rank, canonical code). Throws Error when sub is not a subring.
std::vector<FusionModule> restrict_and_decompose(const FusionModule& K, const std::vector<int>& sub);

struct ModuleGrading {
  std::vector<std::vector<int>> label;  // group element per module index
  std::vector<std::vector<int>> blocks; // module indices grouped by label, labels ascending
};

std::optional<ModuleGrading> grade_module(const FusionModule& K, const Grading& g);

}  // namespace fusionmod
