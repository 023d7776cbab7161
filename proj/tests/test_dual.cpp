#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "fusionmod/catalog.hpp"
#include "fusionmod/dual.hpp"
#include "fusionmod/enumerate.hpp"
#include "fusionmod/error.hpp"
#include "fusionmod/expr.hpp"
#include "fusionmod/module.hpp"
#include "support.hpp"

using fusionmod::FusionModule;
using fusionmod::QuadNumber;
using testsupport::ring;

namespace {

using Table = std::map<std::vector<int>, int>;

Table table_of(const FusionModule& K) {
  Table t;
  for (const auto& [obj, n] : fusionmod::algebra_table(K)) t[obj.coeffs] += n;
  return t;
}

FusionModule module_with(const std::string& ring_name, const std::vector<std::pair<const char*, int>>& rows) {
  auto R = ring(ring_name);
  Table want;
  for (const auto& [src, n] : rows) want[fusionmod::parse_object(R, src).coeffs] += n;
  std::vector<FusionModule> hits;
  for (auto& K : fusionmod::enumerate_modules(R))
    if (table_of(K) == want) hits.push_back(K);
  REQUIRE(hits.size() == 1);
  return hits[0];
}

FusionModule row17() {
  return module_with("4442", {{"1+b*x", 3}, {"(1+b)*(1+x)", 3}, {"Lambda*(1+2*x)+b*(2+7*x)", 1}});
}

FusionModule z4row9() { return module_with("HI-Z4", {{"1+r", 2}, {"1+a2*r", 2}, {"Pi*(1+3*r)", 1}}); }

bool commutes(const fusionmod::IntMatrix& A, const fusionmod::IntMatrix& B, int r) {
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      long long x = 0, y = 0;
      for (int c = 0; c < r; ++c) {
        x += static_cast<long long>(A[a * r + c]) * B[c * r + b];
        y += static_cast<long long>(B[a * r + c]) * A[c * r + b];
      }
      if (x != y) return false;
    }
  return true;
}

// dim {X : X M_i = M_i X} by floating-point elimination on the r^2 unknowns
int commutant_dimension_oracle(const FusionModule& K) {
  const int r = K.rank();
  const int n = r * r;
  std::vector<std::vector<double>> rows;
  for (const auto& M : K.matrices())
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        std::vector<double> row(n, 0.0);
        for (int c = 0; c < r; ++c) {
          row[a * r + c] += M[c * r + b];
          row[c * r + b] -= M[a * r + c];
        }
        rows.push_back(row);
      }
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
    int piv = rank;
    for (int i = rank; i < static_cast<int>(rows.size()); ++i)
      if (std::fabs(rows[i][col]) > std::fabs(rows[piv][col])) piv = i;
    if (std::fabs(rows[piv][col]) < 1e-9) continue;
    std::swap(rows[piv], rows[rank]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == rank) continue;
      double f = rows[i][col] / rows[rank][col];
      if (f == 0) continue;
      for (int j = col; j < n; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return n - rank;
}

bool isomorphic_or_opposite(const fusionmod::FusionRing& S, const fusionmod::FusionRing& R) {
  return fusionmod::find_isomorphism(S, R) || fusionmod::find_isomorphism(S, fusionmod::opposite_ring(R));
}

void check_candidate(const FusionModule& K, const fusionmod::DualRingCandidate& c) {
  const int r = K.rank();
  REQUIRE(fusionmod::validate_ring(*c.ring).ok);
  REQUIRE(static_cast<int>(c.L.size()) == c.ring->rank());
  for (const auto& L : c.L) {
    for (int x : L) CHECK(x >= 0);
    for (const auto& M : K.matrices()) CHECK(commutes(L, M, r));
  }
  // the dual ring acts on the same basis
  FusionModule back(c.ring, r, c.L);
  CHECK(fusionmod::validate_module(back).ok);
  CHECK(fusionmod::fp_dims(*c.ring).global == fusionmod::fp_dims(*K.ring()).global);
}

}  // namespace

TEST_CASE("commutant dimensions") {
  auto triv = fusionmod::regular_module(ring("Trivial"));
  CHECK(fusionmod::commutant_basis(triv).size() == 1);
  auto reg = fusionmod::regular_module(ring("HI-Z4"));
  CHECK(fusionmod::commutant_basis(reg).size() == 8);
  // the module has rank 7; two of the eight dual objects act by the same matrix
  auto K = row17();
  CHECK(K.rank() == 7);
  CHECK(fusionmod::commutant_basis(K).size() == 7);
}

TEST_CASE("property: commutant dimension matches elimination") {
  for (const char* name : {"HI-Z4", "2D2", "4442"})
    for (const auto& K : fusionmod::enumerate_modules(ring(name)))
      CHECK(static_cast<int>(fusionmod::commutant_basis(K).size()) == commutant_dimension_oracle(K));
}

TEST_CASE("property: commutant basis matrices commute with the action") {
  for (const char* name : {"HI-Z4", "2D2"}) {
    for (const auto& K : fusionmod::enumerate_modules(ring(name))) {
      const int r = K.rank();
      for (const auto& X : fusionmod::commutant_basis(K))
        for (const auto& M : K.matrices())
          for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
              mpq_class x = 0, y = 0;
              for (int c = 0; c < r; ++c) {
                x += X[a * r + c] * M[c * r + b];
                y += M[a * r + c] * X[c * r + b];
              }
              CHECK(x == y);
            }
    }
  }
}

TEST_CASE("regular modules are dual to the ring itself") {
  for (const char* name : {"Fib", "RepA4", "2D2", "HI-Z4", "HI-Z2xZ2"}) {
    CAPTURE(name);
    auto R = ring(name);
    auto K = fusionmod::regular_module(R);
    auto cands = fusionmod::dual_rings(K);
    REQUIRE_FALSE(cands.empty());
    bool found = false;
    for (const auto& c : cands) {
      check_candidate(K, c);
      found = found || isomorphic_or_opposite(*c.ring, *R);
    }
    CHECK(found);
  }
}

TEST_CASE("taking the dual twice returns the ring") {
  auto R = ring("HI-Z4");
  auto K = fusionmod::regular_module(R);
  auto cands = fusionmod::dual_rings(K);
  for (const auto& c : cands) {
    if (!isomorphic_or_opposite(*c.ring, *R)) continue;
    FusionModule back(c.ring, K.rank(), c.L);
    bool found = false;
    for (const auto& cc : fusionmod::dual_rings(back)) found = found || isomorphic_or_opposite(*cc.ring, *R);
    CHECK(found);
  }
}

TEST_CASE("dual of the z4algs row 9 module") {
  auto K = z4row9();
  QuadNumber d = QuadNumber::d();
  std::vector<QuadNumber> want{1, 1, d, d, d - 1, d + 1};
  std::sort(want.begin(), want.end());
  bool found = false;
  for (const auto& c : fusionmod::dual_rings(K)) {
    check_candidate(K, c);
    auto dims = c.fp.dims;
    std::sort(dims.begin(), dims.end());
    found = found || dims == want;
  }
  CHECK(found);
}

TEST_CASE("dual of the c1algs row 17 module is 4442") {
  auto K = row17();
  bool found = false;
  for (const auto& c : fusionmod::dual_rings(K)) {
    check_candidate(K, c);
    found = found || fusionmod::find_isomorphism(*c.ring, *ring("4442"));
  }
  CHECK(found);
}

TEST_CASE("property: 2D2 dual candidates") {
  for (const auto& K : fusionmod::enumerate_modules(ring("2D2"))) {
    auto cands = fusionmod::dual_rings(K);
    CHECK_FALSE(cands.empty());
    for (const auto& c : cands) check_candidate(K, c);
  }
}

TEST_CASE("node budget") {
  auto K = row17();
  auto res = fusionmod::dual_search(K, 1);
  CHECK_FALSE(res.complete);
  CHECK_THROWS_AS(fusionmod::dual_rings(K, 1), fusionmod::Error);
  auto full = fusionmod::dual_search(fusionmod::regular_module(ring("Fib")));
  CHECK(full.complete);
  CHECK(full.nodes > 0);
}
