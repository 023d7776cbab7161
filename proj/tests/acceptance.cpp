// Acceptance criteria A1-A13, computed directly from the library. One line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fusionmod/catalog.hpp"
#include "fusionmod/compat.hpp"
#include "fusionmod/dual.hpp"
#include "fusionmod/enumerate.hpp"
#include "fusionmod/error.hpp"
#include "fusionmod/expr.hpp"
#include "fusionmod/io.hpp"
#include "fusionmod/module.hpp"
#include "fusionmod_cli/fixtures.hpp"
#include "support.hpp"

using namespace fusionmod;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// every criterion is an exact comparison
constexpr const char* kTolerance = "exact";

QuadNumber d() { return QuadNumber::d(); }

const std::vector<FusionModule>& modules_of(const std::string& name) {
  static std::map<std::string, std::vector<FusionModule>> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, enumerate_modules(catalog_ring(name))).first;
  return it->second;
}

std::vector<QuadNumber> sorted(std::vector<QuadNumber> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string dims_string(const std::vector<QuadNumber>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_d_string();
  return s + "}";
}

const FusionModule& fixture_module(const std::string& fig, const std::string& row) {
  const auto& f = cli::figure_fixture(fig);
  const auto& mods = modules_of(f.ring);
  long k = cli::find_fixture_module(f, row, mods);
  if (k < 0) throw Error("no unique module for " + fig + " row " + row);
  return mods[k];
}

Outcome count(const std::string& ring, std::size_t want) {
  std::size_t got = modules_of(ring).size();
  return {got == want, "enumerate(" + ring + ") = " + std::to_string(got) + ", expected " + std::to_string(want)};
}

Outcome a5() {
  std::string detail;
  bool ok = true;
  for (const auto& fig : cli::figure_fixtures()) {
    const auto& mods = modules_of(fig.ring);
    auto matches = cli::match_fixture(fig, mods);
    std::set<long> chosen;
    int good = 0, relabeled = 0;
    for (const auto& m : matches) {
      if (m.chosen >= 0 && chosen.insert(m.chosen).second) ++good;
      if (m.exact.empty() && !m.relabeled.empty()) ++relabeled;
    }
    bool fig_ok = good == static_cast<int>(fig.rows.size());
    ok = ok && fig_ok;
    detail += (detail.empty() ? "" : "; ") + fig.name + " " + std::to_string(good) + "/" + std::to_string(fig.rows.size()) +
              " rows matched" + (relabeled ? " (" + std::to_string(relabeled) + " after relabeling)" : "");
  }
  return {ok, detail};
}

const DualRingCandidate* p2_candidate(const std::vector<DualRingCandidate>& cands) {
  const auto want = sorted({1, 1, d(), d(), d() - 1, d() + 1});
  for (const auto& c : cands)
    if (sorted(c.fp.dims) == want) return &c;
  return nullptr;
}

Outcome a6() {
  auto cands = dual_rings(fixture_module("z4algs", "9"));
  const auto* c = p2_candidate(cands);
  return {c != nullptr, std::to_string(cands.size()) + " dual candidates; " +
                            (c ? "found dims " + dims_string(sorted(c->fp.dims)) : std::string("no candidate with {1,1,d,d,d-1,d+1}"))};
}

Outcome a7() {
  auto cands = dual_rings(fixture_module("z4algs", "9"));
  const auto* c = p2_candidate(cands);
  if (!c) return {false, "P2 candidate missing"};
  auto mods = enumerate_modules(c->ring);
  auto fp = fp_dims(*c->ring);
  const QuadNumber target = (1 + d()) * (1 + 3 * d());
  int hits = 0;
  for (const auto& K : mods)
    for (int a = 0; a < K.rank(); ++a)
      if (object_dim(internal_end(K, a), &fp) == target) ++hits;
  return {hits == 0 && !mods.empty(), std::to_string(mods.size()) + " modules over P2, " + std::to_string(hits) +
                                          " ends of dimension " + target.to_d_string()};
}

Outcome a8() {
  const auto want = sorted({1, (d() - 1) / 2, (d() - 1) / 2, (d() + 1) / 2, (d() + 1) / 2, d()});
  const auto& mods = modules_of("2D2");
  int pairs = 0;
  std::string detail;
  bool ok = true;
  for (std::size_t k = 0; k < mods.size(); ++k) {
    const auto& K = mods[k];
    bool has = false;
    for (int a = 0; a < K.rank(); ++a) has = has || object_dim(internal_end(K, a)) == 1 + d();
    if (!has) continue;
    for (const auto& c : dual_rings(K)) {
      if (sorted(c.fp.dims) != want) continue;
      ++pairs;
      auto over = enumerate_modules(c.ring);
      FusionModule graph(c.ring, K.rank(), c.L);
      FusionModule regular = regular_module(c.ring);
      std::vector<const FusionModule*> other;
      for (const auto& M : over)
        if (!modules_equivalent(M, graph) && !modules_equivalent(M, regular)) other.push_back(&M);
      bool good = over.size() == 3 && other.size() == 1 && other[0]->rank() == 2 &&
                  sorted(dim_vector(*other[0]).squares) == sorted({(d() - 1) * (d() - 1), (d() + 1) * (d() + 1)});
      ok = ok && good;
      detail += (detail.empty() ? "" : "; ") + std::string("module ") + std::to_string(k) + ": " +
                std::to_string(over.size()) + " modules over Q2";
      if (other.size() == 1) {
        auto dv = dim_vector(*other[0]);
        detail += ", extra one rank " + std::to_string(other[0]->rank()) + " dims {" + dv.describe(0) +
                  (dv.size() > 1 ? ", " + dv.describe(1) : "") + "}";
      }
    }
  }
  return {ok && pairs > 0, pairs ? detail : "no Q2 candidate"};
}

Outcome a9() {
  auto cands = dual_rings(fixture_module("c1algs", "17"));
  auto target = catalog_ring("4442");
  for (const auto& c : cands)
    if (find_isomorphism(*c.ring, *target)) return {true, std::to_string(cands.size()) + " candidates, one isomorphic to 4442"};
  return {false, std::to_string(cands.size()) + " candidates, none isomorphic to 4442"};
}

Outcome a10() {
  constexpr std::int64_t kBudget = 50000;
  auto res = dual_search(fixture_module("c1algs", "19"), kBudget);
  FusionRing target = crossed_product(*catalog_ring("HI-Z2xZ2"), klein_three_cycle(), 3);
  bool found = false;
  for (const auto& c : res.candidates) found = found || find_isomorphism(*c.ring, target).has_value();
  return {found, std::to_string(res.candidates.size()) + " candidates after " + std::to_string(res.nodes) + " nodes (" +
                     (res.complete ? "search complete" : "stopped at budget") + "); crossed product " +
                     (found ? "found" : "not found")};
}

Outcome a11() {
  auto hi = catalog_ring("HI-Z2xZ2"), c1 = catalog_ring("4442"), c2 = catalog_ring("C2");
  auto hom = [](const RingPtr& R, const std::string& x, const std::string& y) {
    return hom_dim(parse_object(R, x), parse_object(R, y));
  };
  int total = 0, good = 0;
  auto expect = [&](bool b) {
    ++total;
    good += b;
  };
  for (const char* g : {"a0", "a1", "a2", "a3"})
    for (const char* h : {"a0", "a1", "a2", "a3"})
      if (std::string(g) != h) expect(hom(hi, std::string("1+") + g + "*r", std::string("1+") + h + "*r") == 1);
  expect(hom(c1, "Lambda*(1+x)", "1+x") == 2);
  expect(hom(c1, "Lambda+b*x", "1+x") == 1);
  expect(hom(c2, "Gamma", "Gamma") == 4);
  expect(division_dim(4 + 12 * d(), 4) == 1 + 3 * d());
  expect(division_dim(3 + 3 * d(), 3) == 1 + d());
  return {good == total, std::to_string(good) + "/" + std::to_string(total) + " hom/division fixtures hold"};
}

Outcome a12() {
  const auto& mods = modules_of("4442");
  const QuadNumber s = (1 + d()) * (1 + d());
  auto pick = [&](const QuadNumber& t) {
    std::vector<std::size_t> out;
    for (const auto& m : easycomp_filter(mods, {t, 2})) out.push_back(m.index);
    return out;
  };
  auto a = pick(s), b = pick(3 * s);
  bool ok = a.size() == 1 && modules_equivalent(mods[a[0]], regular_module(catalog_ring("4442"))) && b.size() == 1 &&
            mods[b[0]] == fixture_module("c1algs", "19");
  auto list = [](const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
  };
  return {ok, "(1+d)^2 selects " + list(a) + " (regular module), 3(1+d)^2 selects " + list(b) + " (row 19)"};
}

Outcome a13() {
  std::vector<std::string> failed;
  auto require = [&](bool b, const std::string& what) {
    if (!b) failed.push_back(what);
  };
  // ring axioms and fp homomorphism
  for (const auto& name : testsupport::catalog_instances()) {
    auto R = catalog_ring(name);
    require(validate_ring(*R).ok, "ring " + name);
    auto fp = fp_dims(*R);
    for (int i = 0; i < R->rank(); ++i)
      for (int j = 0; j < R->rank(); ++j) {
        QuadNumber s;
        for (int k = 0; k < R->rank(); ++k) s += R->N(i, j, k) * fp.dims[k];
        if (s != fp.dims[i] * fp.dims[j]) {
          require(false, "fp homomorphism " + name);
          i = j = R->rank();
        }
      }
  }
  // module axioms, sum d_a^2, internal ends
  for (const char* name : {"HI-Z2xZ2", "4442", "HI-Z4", "2D2"}) {
    auto fp = fp_dims(*catalog_ring(name));
    for (const auto& K : modules_of(name)) {
      require(validate_module(K).ok, std::string("module over ") + name);
      auto dv = dim_vector(K, &fp);
      QuadNumber s;
      for (const auto& x : dv.squares) s += x;
      require(s == fp.global, std::string("sum d_a^2 over ") + name);
      for (int a = 0; a < K.rank(); ++a) {
        auto E = internal_end(K, a);
        require(E.coeffs[K.ring()->unit()] == 1 && E.is_self_dual(), std::string("end shape over ") + name);
        require(object_dim(E, &fp) == dv.squares[a], std::string("end dimension over ") + name);
      }
    }
  }
  // worker determinism
  for (const char* name : {"HI-Z4", "4442"}) {
    EnumerationConfig three;
    three.worker_count = 3;
    require(enumerate_modules(catalog_ring(name), three) == modules_of(name), std::string("workers ") + name);
  }
  // io round-trips
  for (const char* name : {"HI-Z4", "4442", "2D2", "C2"}) {
    auto R = catalog_ring(name);
    require(load_ring(save_ring(*R))->same_structure(*R), std::string("ring io ") + name);
  }
  for (const char* name : {"HI-Z4", "2D2"}) {
    auto R = catalog_ring(name);
    for (auto fmt : {ModuleFormat::Json, ModuleFormat::Text})
      require(load_modules(save_modules(modules_of(name), *R, fmt), R, fmt) == modules_of(name), std::string("module io ") + name);
  }
  // expr round-trips under the seeded generator
  for (const auto& name : testsupport::catalog_instances()) {
    auto R = catalog_ring(name);
    for (int it = 0; it < 50; ++it) {
      auto X = testsupport::random_object(R, 5);
      require(parse_object(R, format_object(X)).coeffs == X.coeffs, "expr round-trip " + name);
    }
  }
  // crossed product dimension and restriction of C2
  auto c2 = catalog_ring("C2");
  auto g2 = fp_dims(*c2).global;
  require(g2 == 12 + 12 * d() * d() && g2 == 3 * (4 + 4 * d() * d()), "crossed-product global dimension");
  auto parts = restrict_and_decompose(regular_module(c2), {0, 1, 2, 3, 4, 5, 6, 7});
  bool three_regular = parts.size() == 3;
  auto hi_reg = regular_module(catalog_ring("HI-Z2xZ2"));
  for (const auto& P : parts) three_regular = three_regular && modules_equivalent(P, hi_reg).has_value();
  require(three_regular, "C2 restriction");

  std::string detail = "seed " + std::to_string(testsupport::seed()) + "; ";
  if (failed.empty()) return {true, detail + "all property suites hold"};
  detail += std::to_string(failed.size()) + " failures:";
  for (std::size_t i = 0; i < failed.size() && i < 5; ++i) detail += " [" + failed[i] + "]";
  return {false, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"A1", [] { return count("HI-Z2xZ2", 50); }},
      {"A2", [] { return count("4442", 19); }},
      {"A3", [] { return count("HI-Z4", 12); }},
      {"A4", [] { return count("2D2", 7); }},
      {"A5", a5},
      {"A6", a6},
      {"A7", a7},
      {"A8", a8},
      {"A9", a9},
      {"A10", a10},
      {"A11", a11},
      {"A12", a12},
      {"A13", a13},
  };
  int passed = 0;
  for (const auto& [id, fn] : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    passed += o.pass;
    std::printf("%-4s %s  [tol %s, %.2fs]  %s\n", id, o.pass ? "PASS" : "FAIL", kTolerance, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
