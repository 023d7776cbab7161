#pragma once

#include <cstddef>
#include <vector>

#include "fusionmod/module.hpp"
#include "fusionmod/quad.hpp"
#include "fusionmod/ring.hpp"

namespace fusionmod {

// Plain coefficient pairing sum_i X[i] Y[i]. Throws Error when the rings differ.
int hom_dim(const ObjectVector& X, const ObjectVector& Y);

// sum_i X[i] fpdim[i]
QuadNumber object_dim(const ObjectVector& X, const FpData* fp = nullptr);

struct CompatQuery {
  QuadNumber s;  // target squared dimension
  int n = 1;     // target hom dimension
};

struct CompatMatch {
  std::size_t index;         // position in the input list
  std::vector<int> witness;  // c >= 0 over the module basis
};

// Modules admitting c >= 0 with sum c_a^2 = n and (sum c_a d_a)^2 = s, with the
// lexicographically first witness.
std::vector<CompatMatch> easycomp_filter(const std::vector<FusionModule>& modules, const CompatQuery& q);

// dimA / dimA0; throws Error when dimA0 is zero.
QuadNumber division_dim(const QuadNumber& dimA, const QuadNumber& dimA0);

// Indices of modules with some internal end equal to X.
std::vector<std::size_t> modules_with_algebra(const std::vector<FusionModule>& modules, const ObjectVector& X);

}  // namespace fusionmod
