#include <string>

#include "doctest.h"
#include "fusionmod/catalog.hpp"
#include "fusionmod/compat.hpp"
#include "fusionmod/error.hpp"
#include "fusionmod/expr.hpp"
#include "support.hpp"

using fusionmod::QuadNumber;
using testsupport::ring;

namespace {

std::vector<int> parse(const char* R, const std::string& s) { return fusionmod::parse_object(ring(R), s).coeffs; }

// Random expression over labels, shorthands and integers, with parentheses.
std::string random_expr(const fusionmod::RingPtr& R, int depth) {
  using testsupport::uniform;
  std::vector<std::string> atoms = R->labels();
  for (const auto& [name, v] : R->shorthands()) atoms.push_back(name);
  std::string out;
  int terms = uniform(1, 3);
  for (int t = 0; t < terms; ++t) {
    if (t) out += "+";
    int factors = uniform(1, 2);
    for (int f = 0; f < factors; ++f) {
      if (f) out += "*";
      int kind = uniform(0, 5);
      if (kind == 0) {
        out += std::to_string(uniform(0, 3));
      } else if (kind == 1 && depth > 0) {
        out += "(" + random_expr(R, depth - 1) + ")";
      } else {
        out += atoms[uniform(0, static_cast<int>(atoms.size()) - 1)];
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("parse examples") {
  CHECK(parse("HI-Z4", "1 + r") == std::vector<int>{1, 0, 0, 0, 1, 0, 0, 0});
  CHECK(parse("HI-Z2xZ2", "Gamma*(1+3*r)") == std::vector<int>{1, 1, 1, 1, 3, 3, 3, 3});
  QuadNumber d = QuadNumber::d();
  CHECK(fusionmod::object_dim(fusionmod::parse_object(ring("HI-Z4"), "Pi*(1+3*r)")) == 4 + 12 * d);
  CHECK(parse("HI-Z4", "a0") == parse("HI-Z4", "1"));
  CHECK(parse("HI-Z4", "2*r") == parse("HI-Z4", "r+r"));
  // juxtaposition next to a parenthesized group
  CHECK(parse("HI-Z2xZ2", "Gamma(1+3*r)") == parse("HI-Z2xZ2", "Gamma*(1+3*r)"));
  CHECK(parse("HI-Z2xZ2", "(1+r)(1+r)") == parse("HI-Z2xZ2", "(1+r)*(1+r)"));
  CHECK(parse("4442", "Lambda(1+2*x)+b(1+6*x)") == parse("4442", "Lambda*(1+2*x)+b*(1+6*x)"));
}

TEST_CASE("parse errors carry positions") {
  auto R = ring("HI-Z4");
  CHECK_THROWS_AS(fusionmod::parse_object(R, "1 + "), fusionmod::ParseError);
  CHECK_THROWS_AS(fusionmod::parse_object(R, "nosuch"), fusionmod::ParseError);
  CHECK_THROWS_AS(fusionmod::parse_object(R, "(1+r"), fusionmod::ParseError);
  CHECK_THROWS_AS(fusionmod::parse_object(R, "1+r)"), fusionmod::ParseError);
  CHECK_THROWS_AS(fusionmod::parse_object(R, "-r"), fusionmod::ParseError);
  CHECK_THROWS_AS(fusionmod::parse_object(R, "r r"), fusionmod::ParseError);
  CHECK_THROWS_AS(fusionmod::parse_object(R, ""), fusionmod::ParseError);
  try {
    fusionmod::parse_object(R, "1 + q");
    FAIL("expected a parse error");
  } catch (const fusionmod::ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("coefficients past the int range are rejected") {
  auto R = ring("HI-Z4");
  CHECK(parse("HI-Z4", "2147483647*r")[4] == 2147483647);
  CHECK_THROWS_AS(fusionmod::parse_object(R, "2147483648*r"), fusionmod::ParseError);
  CHECK_THROWS_AS(fusionmod::parse_object(R, "99999999999999999999"), fusionmod::ParseError);
  CHECK_THROWS_AS(fusionmod::parse_object(R, "2147483647*r + r"), fusionmod::ParseError);
  CHECK_THROWS_AS(fusionmod::parse_object(R, "65536*(65536*r)"), fusionmod::ParseError);
}

TEST_CASE("format examples") {
  auto Z = ring("HI-Z4");
  CHECK(fusionmod::format_object({Z, {1, 0, 0, 0, 1, 0, 0, 0}}) == "1 + r");
  CHECK(fusionmod::format_object({Z, {1, 0, 0, 0, 2, 0, 0, 0}}) == "1 + 2*r");
  CHECK(fusionmod::format_object({Z, {0, 0, 0, 0, 0, 0, 0, 0}}) == "0");
  auto K = ring("HI-Z2xZ2");
  CHECK(fusionmod::format_object({K, {1, 1, 1, 1, 0, 0, 0, 0}}) == "1 + a1 + a2 + a3");
}

TEST_CASE("property: format then parse is the identity") {
  for (const auto& name : testsupport::catalog_instances()) {
    auto R = ring(name);
    for (int it = 0; it < 50; ++it) {
      auto X = testsupport::random_object(R, 5);
      CHECK(fusionmod::parse_object(R, fusionmod::format_object(X)).coeffs == X.coeffs);
    }
  }
}

TEST_CASE("property: products distribute over sums") {
  for (const char* name : {"HI-Z4", "HI-Z2xZ2", "4442", "2D2", "C2"}) {
    auto R = ring(name);
    for (int it = 0; it < 30; ++it) {
      std::string A = random_expr(R, 1), B = random_expr(R, 1), C = random_expr(R, 1);
      auto lhs = fusionmod::parse_object(R, "(" + A + ")*(" + B + "+" + C + ")");
      auto rhs = fusionmod::parse_object(R, "(" + A + ")*(" + B + ")+(" + A + ")*(" + C + ")");
      CAPTURE(A);
      CAPTURE(B);
      CAPTURE(C);
      CHECK(lhs.coeffs == rhs.coeffs);
      auto left = fusionmod::parse_object(R, "(" + B + "+" + C + ")*(" + A + ")");
      auto right = fusionmod::parse_object(R, "(" + B + ")*(" + A + ")+(" + C + ")*(" + A + ")");
      CHECK(left.coeffs == right.coeffs);
    }
  }
}

TEST_CASE("property: mutated input either parses or fails with a position") {
  const std::string alphabet = "0123456789+*() arxbGammaPi_";
  for (const char* name : {"HI-Z4", "4442"}) {
    auto R = ring(name);
    for (int it = 0; it < 500; ++it) {
      std::string s = random_expr(R, 2);
      int edits = testsupport::uniform(1, 3);
      for (int e = 0; e < edits; ++e) {
        int pos = testsupport::uniform(0, static_cast<int>(s.size()));
        int op = testsupport::uniform(0, 2);
        char c = alphabet[testsupport::uniform(0, static_cast<int>(alphabet.size()) - 1)];
        if (op == 0) {
          s.insert(s.begin() + pos, c);
        } else if (pos < static_cast<int>(s.size())) {
          if (op == 1) s.erase(s.begin() + pos);
          else s[pos] = c;
        }
      }
      CAPTURE(s);
      try {
        auto X = fusionmod::parse_object(R, s);
        CHECK(static_cast<int>(X.coeffs.size()) == R->rank());
        for (int v : X.coeffs) CHECK(v >= 0);
      } catch (const fusionmod::ParseError& e) {
        CHECK(e.position() <= s.size());
      }
    }
  }
}
