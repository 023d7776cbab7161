#include <algorithm>
#include <map>

#include "doctest.h"
#include "fusionmod/catalog.hpp"
#include "fusionmod/compat.hpp"
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

Table table_from(const fusionmod::RingPtr& R, const std::vector<std::pair<const char*, int>>& rows) {
  Table t;
  for (const auto& [src, n] : rows) t[fusionmod::parse_object(R, src).coeffs] += n;
  return t;
}

const std::vector<FusionModule>& modules_of(const std::string& name) {
  static std::map<std::string, std::vector<FusionModule>> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, fusionmod::enumerate_modules(ring(name))).first;
  return it->second;
}

std::vector<const FusionModule*> with_table(const std::string& ring_name, const Table& t) {
  std::vector<const FusionModule*> hits;
  for (const auto& K : modules_of(ring_name))
    if (table_of(K) == t) hits.push_back(&K);
  return hits;
}

FusionModule direct_sum(const FusionModule& A, const FusionModule& B) {
  const int r = A.rank() + B.rank();
  std::vector<fusionmod::IntMatrix> M;
  for (int i = 0; i < A.ring()->rank(); ++i) {
    fusionmod::IntMatrix m(static_cast<std::size_t>(r) * r, 0);
    for (int a = 0; a < A.rank(); ++a)
      for (int b = 0; b < A.rank(); ++b) m[a * r + b] = A.at(i, a, b);
    for (int a = 0; a < B.rank(); ++a)
      for (int b = 0; b < B.rank(); ++b) m[(A.rank() + a) * r + A.rank() + b] = B.at(i, a, b);
    M.push_back(m);
  }
  return FusionModule(A.ring(), r, M);
}

std::vector<QuadNumber> sorted(std::vector<QuadNumber> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("regular modules validate") {
  for (const auto& name : testsupport::catalog_instances()) {
    CAPTURE(name);
    auto K = fusionmod::regular_module(ring(name));
    auto rep = fusionmod::validate_module(K);
    CHECK_MESSAGE(rep.ok, rep.message);
  }
}

TEST_CASE("module perturbations") {
  auto R = ring("HI-Z4");
  auto K = fusionmod::regular_module(R);
  auto M = K.matrices();
  int a1 = *R->find_label("a1");
  M[a1][1] += 1;
  auto rep = fusionmod::validate_module(FusionModule(R, K.rank(), M));
  CHECK_FALSE(rep.ok);
  CHECK(rep.kind == "frobenius");

  auto S = direct_sum(K, K);
  auto rep2 = fusionmod::validate_module(S);
  CHECK_FALSE(rep2.ok);
  CHECK(rep2.kind == "connectivity");

  auto U = K.matrices();
  U[R->unit()][1] = 1;
  CHECK(fusionmod::validate_module(FusionModule(R, K.rank(), U)).kind == "unit");
}

TEST_CASE("dimension vectors") {
  QuadNumber d = QuadNumber::d();
  auto dz = fusionmod::dim_vector(fusionmod::regular_module(ring("HI-Z4")));
  for (int a = 0; a < 8; ++a) CHECK(*dz.value(a) == (a < 4 ? QuadNumber(1) : d));

  auto hits = with_table("HI-Z4", table_from(ring("HI-Z4"), {{"1+r", 2}, {"1+a2*r", 2}, {"Pi*(1+3*r)", 1}}));
  REQUIRE(hits.size() == 1);
  auto dv = fusionmod::dim_vector(*hits[0]);
  CHECK(sorted(dv.squares) == std::vector<QuadNumber>{1 + d, 1 + d, 1 + d, 1 + d, 4 + 12 * d});
  QuadNumber total;
  for (const auto& s : dv.squares) total += s;
  CHECK(total == 8 + 16 * d);
  CHECK(total == 4 + 4 * d * d);

  auto dt = fusionmod::dim_vector(fusionmod::regular_module(ring("Trivial")));
  CHECK(dt.squares == std::vector<QuadNumber>{1});
}

TEST_CASE("internal ends") {
  auto R = ring("HI-Z2xZ2");
  auto K = fusionmod::regular_module(R);
  int rho = *R->find_label("r");
  CHECK(fusionmod::internal_end(K, rho).coeffs == std::vector<int>{1, 0, 0, 0, 1, 1, 1, 1});
  CHECK(fusionmod::internal_end(K, R->unit()).coeffs == std::vector<int>{1, 0, 0, 0, 0, 0, 0, 0});

  auto Z = ring("HI-Z4");
  auto hits = with_table("HI-Z4", table_from(Z, {{"1+r", 2}, {"1+a2*r", 2}, {"Pi*(1+3*r)", 1}}));
  REQUIRE(hits.size() == 1);
  auto one_rho = fusionmod::parse_object(Z, "1+r");
  int count = 0;
  for (int a = 0; a < hits[0]->rank(); ++a) count += fusionmod::internal_end(*hits[0], a) == one_rho;
  CHECK(count == 2);
}

TEST_CASE("algebra tables") {
  auto R = ring("HI-Z2xZ2");
  CHECK(table_of(fusionmod::regular_module(R)) == table_from(R, {{"1", 4}, {"1+Gamma*r", 4}}));
  auto C1 = ring("4442");
  auto t16 = table_from(C1, {{"1+x", 3}, {"(Lambda+2*b)*(1+x)", 1}, {"1+Lambda*x+b*(1+3*x)", 3}});
  CHECK(with_table("4442", t16).size() == 1);
  auto T = ring("Trivial");
  CHECK(table_of(fusionmod::regular_module(T)) == table_from(T, {{"1", 1}}));
}

TEST_CASE("property: enumerated modules satisfy the module invariants") {
  for (const char* name : {"HI-Z4", "2D2", "4442", "Fib", "RepA4"}) {
    auto R = ring(name);
    auto fp = fusionmod::fp_dims(*R);
    for (const auto& K : modules_of(name)) {
      CAPTURE(name);
      REQUIRE(fusionmod::validate_module(K).ok);
      auto dv = fusionmod::dim_vector(K, &fp);
      QuadNumber total;
      for (const auto& s : dv.squares) total += s;
      CHECK(total == fp.global);
      for (int a = 0; a < K.rank(); ++a) {
        auto E = fusionmod::internal_end(K, a);
        CHECK(E.coeffs[R->unit()] == 1);
        CHECK(E.is_self_dual());
        CHECK(fusionmod::object_dim(E, &fp) == dv.squares[a]);
        // sum_i fpdim_i M[i] = d d^T
        for (int b = 0; b < K.rank(); ++b) {
          QuadNumber w;
          for (int i = 0; i < R->rank(); ++i) w += K.at(i, a, b) * fp.dims[i];
          CHECK(w == dv.product(a, b));
        }
      }
    }
  }
}

TEST_CASE("property: equivalence and canonical codes are relabeling invariant") {
  for (const char* name : {"HI-Z4", "2D2", "4442"}) {
    for (const auto& K : modules_of(name)) {
      for (int rep = 0; rep < 3; ++rep) {
        auto p = testsupport::random_permutation(K.rank());
        auto L = K.permuted(p);
        REQUIRE(fusionmod::validate_module(L).ok);
        CHECK(fusionmod::canonical_code(L) == fusionmod::canonical_code(K));
        CHECK(fusionmod::canonical_form(L) == fusionmod::canonical_form(K));
        auto q = fusionmod::modules_equivalent(K, L);
        REQUIRE(q);
        for (int i = 0; i < K.ring()->rank(); ++i)
          for (int a = 0; a < K.rank(); ++a)
            for (int b = 0; b < K.rank(); ++b) CHECK(L.at(i, (*q)[a], (*q)[b]) == K.at(i, a, b));
      }
      auto id = fusionmod::modules_equivalent(K, K);
      REQUIRE(id);
    }
  }
  const auto& mods = modules_of("HI-Z4");
  for (std::size_t x = 0; x < mods.size(); ++x)
    for (std::size_t y = x + 1; y < mods.size(); ++y) CHECK_FALSE(fusionmod::modules_equivalent(mods[x], mods[y]));
}

TEST_CASE("restriction to subrings") {
  auto C2 = ring("C2");
  auto parts = fusionmod::restrict_and_decompose(fusionmod::regular_module(C2), {0, 1, 2, 3, 4, 5, 6, 7});
  REQUIRE(parts.size() == 3);
  auto hi_reg = fusionmod::regular_module(ring("HI-Z2xZ2"));
  for (const auto& P : parts) {
    CHECK(fusionmod::validate_module(P).ok);
    CHECK(fusionmod::modules_equivalent(P, hi_reg));
  }

  auto R = ring("HI-Z4");
  std::vector<int> all(R->rank());
  for (int i = 0; i < R->rank(); ++i) all[i] = i;
  for (const auto& K : modules_of("HI-Z4")) {
    auto same = fusionmod::restrict_and_decompose(K, all);
    REQUIRE(same.size() == 1);
    CHECK(fusionmod::modules_equivalent(same[0], K));
  }

  auto C1 = ring("4442");
  auto beta = fusionmod::restrict_and_decompose(fusionmod::regular_module(C1), {0, 1, 2, 3});
  int total = 0;
  for (const auto& P : beta) {
    CHECK(fusionmod::validate_module(P).ok);
    CHECK(fusionmod::find_isomorphism(*P.ring(), *ring("RepA4")));
    total += P.rank();
  }
  CHECK(total == 8);
  CHECK(beta.size() == 2);
  CHECK_THROWS_AS(fusionmod::restrict_and_decompose(fusionmod::regular_module(C1), {0, 4}), fusionmod::Error);
}

TEST_CASE("module gradings") {
  auto C2 = ring("C2");
  REQUIRE(C2->grading());
  auto g = fusionmod::grade_module(fusionmod::regular_module(C2), *C2->grading());
  REQUIRE(g);
  REQUIRE(g->blocks.size() == 3);
  for (const auto& b : g->blocks) CHECK(b.size() == 8);

  auto R = ring("HI-Z4");
  std::vector<int> all(R->rank());
  for (int i = 0; i < R->rank(); ++i) all[i] = i;
  auto trivial = fusionmod::grading_from_subring(*R, all);
  REQUIRE(trivial);
  for (const auto& K : modules_of("HI-Z4")) {
    auto gk = fusionmod::grade_module(K, *trivial);
    REQUIRE(gk);
    CHECK(gk->blocks.size() == 1);
  }

  // rank-1 module over Vec(Z2) on which the generator acts trivially
  auto Z2 = ring("VecG(Z2)");
  FusionModule one(Z2, 1, {{1}, {1}});
  REQUIRE(fusionmod::validate_module(one).ok);
  auto z2grading = fusionmod::grading_from_subring(*Z2, {Z2->unit()});
  REQUIRE(z2grading);
  CHECK(z2grading->order() == 2);
  CHECK_FALSE(fusionmod::grade_module(one, *z2grading));
}
