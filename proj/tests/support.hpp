#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "fusionmod/catalog.hpp"
#include "fusionmod/module.hpp"
#include "fusionmod/ring.hpp"

namespace testsupport {

// FUSIONMOD_TEST_SEED overrides the default seed.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("FUSIONMOD_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(seed());
  return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline std::vector<int> random_coeffs(int rank, int max_coeff = 3, int density_pct = 50) {
  std::vector<int> c(rank, 0);
  for (int i = 0; i < rank; ++i)
    if (uniform(0, 99) < density_pct) c[i] = uniform(0, max_coeff);
  return c;
}

inline fusionmod::ObjectVector random_object(const fusionmod::RingPtr& R, int max_coeff = 3) {
  return {R, random_coeffs(R->rank(), max_coeff)};
}

inline std::vector<int> random_permutation(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng());
  return p;
}

// Concrete catalog instances (the VecG(Zn) pattern instantiated at n = 3 and 5).
inline std::vector<std::string> catalog_instances() {
  return {"Trivial", "Fib", "HI-Z2xZ2", "HI-Z4", "4442", "2D2", "RepA4", "C2",
          "VecG(Z3)", "VecG(Z5)", "VecG(Z2xZ2)", "VecG(A4)"};
}

inline fusionmod::RingPtr ring(const std::string& name) { return fusionmod::catalog_ring(name); }

inline fusionmod::RingPtr share(fusionmod::FusionRing r) {
  return std::make_shared<const fusionmod::FusionRing>(std::move(r));
}

inline std::vector<int> vec(const fusionmod::RingPtr& R, std::initializer_list<const char*> labels) {
  std::vector<int> c(R->rank(), 0);
  for (const char* l : labels) c[*R->find_label(l)] += 1;
  return c;
}

}  // namespace testsupport
