#include <algorithm>
#include <map>

#include "doctest.h"
#include "fusionmod/catalog.hpp"
#include "fusionmod/compat.hpp"
#include "fusionmod/enumerate.hpp"
#include "fusionmod/error.hpp"
#include "fusionmod/expr.hpp"
#include "support.hpp"

using fusionmod::FusionModule;
using fusionmod::QuadNumber;
using testsupport::ring;

namespace {

const std::vector<FusionModule>& modules_of(const std::string& name) {
  static std::map<std::string, std::vector<FusionModule>> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, fusionmod::enumerate_modules(ring(name))).first;
  return it->second;
}

fusionmod::ObjectVector obj(const std::string& R, const std::string& src) {
  return fusionmod::parse_object(ring(R), src);
}

int multiplicity(const FusionModule& K, const fusionmod::ObjectVector& X) {
  int n = 0;
  for (int a = 0; a < K.rank(); ++a) n += fusionmod::internal_end(K, a) == X;
  return n;
}

}  // namespace

TEST_CASE("hom dimensions") {
  for (const char* g : {"a0", "a1", "a2", "a3"})
    for (const char* h : {"a0", "a1", "a2", "a3"}) {
      if (std::string(g) == h) continue;
      auto X = obj("HI-Z2xZ2", std::string("1+") + g + "*r");
      auto Y = obj("HI-Z2xZ2", std::string("1+") + h + "*r");
      CHECK(fusionmod::hom_dim(X, Y) == 1);
    }
  CHECK(fusionmod::hom_dim(obj("4442", "Lambda*(1+x)"), obj("4442", "1+x")) == 2);
  CHECK(fusionmod::hom_dim(obj("4442", "Lambda+b*x"), obj("4442", "1+x")) == 1);
  CHECK(fusionmod::hom_dim(obj("HI-Z4", "1"), obj("HI-Z4", "1")) == 1);
  CHECK_THROWS_AS(fusionmod::hom_dim(obj("HI-Z4", "1"), obj("HI-Z2xZ2", "1")), fusionmod::Error);
}

TEST_CASE("object dimensions") {
  QuadNumber d = QuadNumber::d();
  CHECK(fusionmod::object_dim(obj("HI-Z2xZ2", "1+Gamma*r")) == 1 + 4 * d);
  CHECK(fusionmod::object_dim(obj("HI-Z2xZ2", "1")) == QuadNumber(1));
  CHECK(fusionmod::object_dim(obj("HI-Z4", "Pi*(1+r)")) == 4 + 4 * d);
  CHECK(fusionmod::object_dim(obj("4442", "Lambda*(1+x)")) == 3 + 3 * d);
}

TEST_CASE("division dimensions") {
  QuadNumber d = QuadNumber::d();
  CHECK(fusionmod::division_dim(4 + 12 * d, 4) == 1 + 3 * d);
  CHECK(fusionmod::division_dim(3 + 3 * d, 3) == 1 + d);
  CHECK(fusionmod::division_dim(d, 1) == d);
  CHECK_THROWS_AS(fusionmod::division_dim(d, 0), fusionmod::Error);
}

TEST_CASE("easycomp over 4442") {
  QuadNumber d = QuadNumber::d();
  const auto& mods = modules_of("4442");
  REQUIRE(mods.size() == 19);
  auto regular = fusionmod::regular_module(ring("4442"));

  auto a = fusionmod::easycomp_filter(mods, {(1 + d) * (1 + d), 2});
  REQUIRE(a.size() == 1);
  CHECK(fusionmod::modules_equivalent(mods[a[0].index], regular));

  auto b = fusionmod::easycomp_filter(mods, {3 * (1 + d) * (1 + d), 2});
  REQUIRE(b.size() == 1);
  CHECK(multiplicity(mods[b[0].index], obj("4442", "Lambda")) == 4);

  for (const auto& hit : fusionmod::easycomp_filter(mods, {(1 + d) * (1 + d), 2})) {
    auto dv = fusionmod::dim_vector(mods[hit.index]);
    QuadNumber s;
    int n = 0;
    for (int x = 0; x < mods[hit.index].rank(); ++x) {
      n += hit.witness[x] * hit.witness[x];
      s += hit.witness[x] * *dv.value(x);
    }
    CHECK(n == 2);
    CHECK(s * s == (1 + d) * (1 + d));
  }
}

TEST_CASE("easycomp with a unit query keeps modules with a dimension-1 object") {
  for (const char* name : {"HI-Z4", "2D2", "4442"}) {
    const auto& mods = modules_of(name);
    auto hits = fusionmod::easycomp_filter(mods, {1, 1});
    std::vector<std::size_t> got;
    for (const auto& h : hits) got.push_back(h.index);
    std::vector<std::size_t> want;
    for (std::size_t k = 0; k < mods.size(); ++k) {
      auto dv = fusionmod::dim_vector(mods[k]);
      for (const auto& s : dv.squares)
        if (s == QuadNumber(1)) {
          want.push_back(k);
          break;
        }
    }
    CHECK(got == want);
  }
}

TEST_CASE("property: easycomp keeps modules that contain the witness") {
  for (const char* name : {"HI-Z4", "2D2", "4442"}) {
    const auto& mods = modules_of(name);
    for (std::size_t k = 0; k < mods.size(); ++k) {
      auto dv = fusionmod::dim_vector(mods[k]);
      for (int it = 0; it < 5; ++it) {
        std::vector<int> c(mods[k].rank(), 0);
        int n = 0;
        for (int x = 0; x < mods[k].rank(); ++x) {
          c[x] = testsupport::uniform(0, 9) < 3 ? testsupport::uniform(1, 2) : 0;
          n += c[x] * c[x];
        }
        if (n == 0) continue;
        // the squared dimension of sum c_a m_a is sum c_a c_b d_a d_b
        QuadNumber s;
        for (int x = 0; x < mods[k].rank(); ++x)
          for (int y = 0; y < mods[k].rank(); ++y) s += c[x] * c[y] * dv.product(x, y);
        auto hits = fusionmod::easycomp_filter({mods[k]}, {s, n});
        CHECK(hits.size() == 1);
      }
    }
  }
}

TEST_CASE("modules with a given algebra") {
  const auto& hi = modules_of("HI-Z2xZ2");
  REQUIRE(hi.size() == 50);
  auto one_rho = obj("HI-Z2xZ2", "1+r");
  auto h = fusionmod::modules_with_algebra(hi, one_rho);
  REQUIRE(h.size() == 1);
  CHECK(multiplicity(hi[h[0]], one_rho) == 4);

  const auto& c1 = modules_of("4442");
  auto h16 = fusionmod::modules_with_algebra(c1, obj("4442", "1+x"));
  REQUIRE(h16.size() == 1);
  CHECK(multiplicity(c1[h16[0]], obj("4442", "1+x")) == 3);
  CHECK(multiplicity(c1[h16[0]], obj("4442", "(Lambda+2*b)*(1+x)")) == 1);

  for (const char* name : {"HI-Z4", "4442", "HI-Z2xZ2"}) {
    const auto& mods = modules_of(name);
    auto u = fusionmod::modules_with_algebra(mods, obj(name, "1"));
    REQUIRE(u.size() == 1);
    CHECK(fusionmod::modules_equivalent(mods[u[0]], fusionmod::regular_module(ring(name))));
  }
}

TEST_CASE("property: hom symmetry and multiplicative dimensions") {
  for (const char* name : {"HI-Z4", "HI-Z2xZ2", "4442", "2D2", "C2"}) {
    auto R = ring(name);
    for (int it = 0; it < 40; ++it) {
      auto X = testsupport::random_object(R, 2);
      auto Y = testsupport::random_object(R, 2);
      CHECK(fusionmod::hom_dim(X, Y) == fusionmod::hom_dim(Y, X));
      auto XY = fusionmod::parse_object(R, "(" + fusionmod::format_object(X) + ")*(" + fusionmod::format_object(Y) + ")");
      CHECK(fusionmod::object_dim(XY) == fusionmod::object_dim(X) * fusionmod::object_dim(Y));
      CHECK(fusionmod::division_dim(fusionmod::object_dim(X), 1) == fusionmod::object_dim(X));
    }
  }
}
