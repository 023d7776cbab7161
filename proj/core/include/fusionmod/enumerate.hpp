#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fusionmod/module.hpp"
#include "fusionmod/quad.hpp"
#include "fusionmod/ring.hpp"

namespace fusionmod {

struct EnumerationProgress {
  std::int64_t tasks_done = 0;
  std::int64_t tasks_total = 0;
  std::int64_t nodes = 0;
  std::int64_t found = 0;
};

struct EnumerationConfig {
  std::optional<int> max_rank;  // default floor(global dimension)
  int worker_count = 1;         // 0 picks the hardware concurrency
  bool dim_prefilter = true;
  // Called after each finished task, serialized.
  std::function<void(const EnumerationProgress&)> progress;
};

// Multisets of squared module dimensions d_a^2, each ascending, sorted by (size, values).
// Every entry is the dimension of a self-dual vector with unit coefficient 1, the entries sum
// to the global dimension, all products d_a d_b lie in Z[phi] and sum_b d_b <= d_min sum_i dims_i.
std::vector<std::vector<QuadNumber>> candidate_dimension_vectors(const FusionRing& ring,
                                                                 std::optional<int> max_rank = std::nullopt);

// All indecomposable modules up to equivalence, in canonical form, sorted by (rank, canonical code).
std::vector<FusionModule> enumerate_modules(const RingPtr& ring, const EnumerationConfig& config = {});

}  // namespace fusionmod
