#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fusionmod/module.hpp"

namespace fusionmod::cli {

// One figure row: algebra objects (as expressions) with the number of module basis
// elements having that internal end.
struct FixtureRow {
  std::string id;
  std::vector<std::pair<std::string, int>> ends;
};

struct FigureFixture {
  std::string name;
  std::string ring;
  std::vector<FixtureRow> rows;
};

// calgs (expanded to 50 rows), c1algs (19 rows), z4algs (12 rows)
std::vector<FigureFixture> figure_fixtures();
const FigureFixture& figure_fixture(const std::string& name);

using AlgebraTable = std::vector<std::pair<std::vector<int>, int>>;

// Sorted (coefficients, multiplicity) pairs.
AlgebraTable fixture_table(const FixtureRow& row, const RingPtr& R);
AlgebraTable module_table(const FusionModule& K);

struct FixtureMatch {
  std::string id;
  std::vector<std::size_t> exact;     // modules with exactly this table
  std::vector<std::size_t> relabeled; // modules matching after some ring automorphism
  // the module this row pins down, or -1: the unique exact match, else the unique relabeled one
  long chosen = -1;
};

std::vector<FixtureMatch> match_fixture(const FigureFixture& fig, const std::vector<FusionModule>& mods);

// Index of the unique module whose table matches the row (exactly, else up to ring automorphism).
long find_fixture_module(const FigureFixture& fig, const std::string& row_id, const std::vector<FusionModule>& mods);

}  // namespace fusionmod::cli
