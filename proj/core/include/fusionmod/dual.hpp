#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "fusionmod/module.hpp"
#include "fusionmod/ring.hpp"

namespace fusionmod {

using RationalMatrix = std::vector<mpq_class>;  // row-major, rank x rank

// Basis of the rational matrices X with X M[i] = M[i] X for every i, in reduced echelon form
// with respect to the row-major entry order.
std::vector<RationalMatrix> commutant_basis(const FusionModule& K);

// A dual ring acting on the module basis from the other side: L[j] L[k] = sum_l N'[j][k][l] L[l].
struct DualRingCandidate {
  RingPtr ring;
  std::vector<IntMatrix> L;
  FpData fp;
};

inline constexpr std::int64_t kDefaultDualBudget = 20000000;

struct DualSearchResult {
  std::vector<DualRingCandidate> candidates;
  bool complete = true;  // false when the node budget ran out first
  std::int64_t nodes = 0;
};

// Dual rings up to relabeling found within node_budget search nodes. Decompositions with the
// fewest repeated action matrices are tried first.
DualSearchResult dual_search(const FusionModule& K, std::int64_t node_budget = kDefaultDualBudget);

// All dual rings up to relabeling. Throws Error when the search finds none or runs past
// node_budget search nodes.
std::vector<DualRingCandidate> dual_rings(const FusionModule& K, std::int64_t node_budget = kDefaultDualBudget);

}  // namespace fusionmod
