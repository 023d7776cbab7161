#pragma once

#include <string>
#include <vector>

#include "fusionmod/ring.hpp"

namespace fusionmod {

// Names accepted by catalog_ring.
std::vector<std::string> catalog_names();

// Validated ring by name: "Trivial", "Fib", "HI-Z2xZ2", "HI-Z4", "4442", "2D2", "RepA4", "C2",
// "VecG(Zn)", "VecG(Z2xZ2)", "VecG(A4)". Throws Error listing the catalog for unknown names.
RingPtr catalog_ring(const std::string& name);

// Group ring of a finite group given by its multiplication table (table[g][h] = gh, identity 0).
FusionRing group_ring(const std::string& name, const std::vector<std::string>& labels,
                      const std::vector<std::vector<int>>& table);

// Haagerup-Izumi ring for an abelian group given by its addition table (identity 0).
FusionRing haagerup_izumi_ring(const std::string& name, const std::vector<std::string>& group_labels,
                               const std::vector<std::vector<int>>& add);

// Extension of `base` by a central self-dual generator x with x^2 = c0 + c1*x (c0, c1 in base).
FusionRing central_extension(const FusionRing& base, const std::string& name, const std::string& generator,
                             const std::vector<int>& c0, const std::vector<int>& c1);

// The 3-cycle on the nontrivial elements of Z2xZ2 acting on "HI-Z2xZ2" (fixes rho).
std::vector<int> klein_three_cycle();

}  // namespace fusionmod
