#include "fusionmod_cli/fixtures.hpp"

#include <algorithm>
#include <set>

#include "fusionmod/catalog.hpp"
#include "fusionmod/error.hpp"
#include "fusionmod/expr.hpp"
#include "fusionmod/ring.hpp"

namespace fusionmod::cli {

namespace {

std::string alpha(int g) { return "a" + std::to_string(g); }

FigureFixture calgs() {
  FigureFixture f{"calgs", "HI-Z2xZ2", {}};
  f.rows.push_back({"1", {{"Gamma", 1}, {"Gamma*(1+4*r)", 1}}});
  f.rows.push_back({"2", {{"Gamma*(1+r)", 1}, {"Gamma*(1+3*r)", 1}}});
  for (int g = 1; g < 4; ++g)
    f.rows.push_back({"3_" + alpha(g), {{"1+" + alpha(g), 2}, {"1+" + alpha(g) + "+2*Gamma*r", 2}}});
  // only whether k lies in {0, g} matters; k = 0 or the first element outside {0, g}
  auto reps = [](int g) {
    for (int k = 1; k < 4; ++k)
      if (k != g) return std::vector<int>{0, k};
    return std::vector<int>{0};
  };
  for (int g = 1; g < 4; ++g)
    for (int k : reps(g))
      for (int h = 1; h < 4; ++h)
        for (int l : reps(h)) {
          // printed as "+ Gamma"; the end dimension (d+1)^2 = 2+6d forces Gamma*r
          std::string id = "4_{" + alpha(g) + "," + alpha(h) + "," + alpha(k) + "," + alpha(l) + "}";
          f.rows.push_back({id,
                            {{"(1+" + alpha(g) + ")*(1+" + alpha(k) + "*r)", 2},
                             {"(1+" + alpha(h) + ")*(1+" + alpha(l) + "*r)+Gamma*r", 2}}});
        }
  for (int g = 0; g < 4; ++g)
    f.rows.push_back({"5_" + alpha(g), {{"1+" + alpha(g) + "*r", 4}, {"Gamma*(1+3*r)", 1}}});
  for (int g = 0; g < 4; ++g) {
    std::string rest;
    for (int h = 0; h < 4; ++h)
      if (h != g) rest += (rest.empty() ? "" : "+") + alpha(h);
    f.rows.push_back({"6_" + alpha(g), {{"1+(" + rest + ")*r", 4}, {"Gamma*(1+r)", 1}}});
  }
  f.rows.push_back({"7", {{"1", 4}, {"1+Gamma*r", 4}}});
  return f;
}

FigureFixture c1algs() {
  FigureFixture f{"c1algs", "4442", {}};
  f.rows = {
      {"1", {{"Lambda+3*b", 1}, {"(Lambda+3*b)*(1+4*x)", 1}}},
      {"2", {{"(Lambda+3*b)*(1+x)", 1}, {"(Lambda+3*b)*(1+3*x)", 1}}},
      {"3", {{"Lambda+b", 2}, {"Lambda*(1+2*x)+b*(1+6*x)", 2}}},
      {"4", {{"(Lambda+b)*(1+x)", 2}, {"Lambda*(1+2*x)+b*(1+4*x)", 2}}},
      {"5", {{"(Lambda+b)*(1+x)", 2}, {"Lambda*(1+x)+b*(1+5*x)", 2}}},
      {"6", {{"Lambda+b+2*b*x", 2}, {"Lambda*(1+2*x)+b*(1+4*x)", 2}}},
      {"7", {{"Lambda+b+2*b*x", 2}, {"Lambda*(1+x)+b*(1+5*x)", 2}}},
      {"8", {{"Lambda*(1+x)", 4}, {"(Lambda+3*b)*(1+3*x)", 1}}},
      {"9", {{"Lambda*(1+x)", 2}, {"Lambda+b*x", 2}, {"(Lambda+3*b)*(1+3*x)", 1}}},
      {"10", {{"Lambda+b*x", 4}, {"(Lambda+3*b)*(1+3*x)", 1}}},
      {"11", {{"Lambda*(1+x)+2*b*x", 4}, {"(Lambda+3*b)*(1+x)", 1}}},
      {"12", {{"Lambda*(1+x)+2*b*x", 2}, {"Lambda+3*b*x", 2}, {"(Lambda+3*b)*(1+x)", 1}}},
      {"13", {{"Lambda+3*b*x", 4}, {"(Lambda+3*b)*(1+x)", 1}}},
      {"14", {{"1+b", 3}, {"1+(1+Lambda)*x+b*(1+4*x)", 3}}},
      {"15", {{"(1+b)*(1+x)", 3}, {"1+Lambda*x+b*(1+3*x)", 3}}},
      {"16", {{"1+x", 3}, {"(Lambda+2*b)*(1+x)", 1}, {"1+Lambda*x+b*(1+3*x)", 3}}},
      {"17", {{"1+b*x", 3}, {"(1+b)*(1+x)", 3}, {"Lambda*(1+2*x)+b*(2+7*x)", 1}}},
      {"18", {{"1", 3}, {"1+x+b*x", 3}, {"Lambda*(1+3*x)+b*(2+9*x)", 1}, {"Lambda+2*b", 1}}},
      {"19", {{"Lambda", 4}, {"Lambda*(1+x)+3*b*x", 4}}},
  };
  return f;
}

FigureFixture z4algs() {
  FigureFixture f{"z4algs", "HI-Z4", {}};
  f.rows = {
      {"1", {{"Pi", 1}, {"Pi*(1+4*r)", 1}}},
      {"2", {{"Pi*(1+r)", 1}, {"Pi*(1+3*r)", 1}}},
      {"3", {{"Phi", 2}, {"Phi+2*Pi*r", 2}}},
      {"4", {{"Phi*(1+r)", 2}, {"Phi*(1+r)+Pi*r", 2}}},
      {"5", {{"Phi*(1+r)", 2}, {"Phi*(1+a1*r)+Pi*r", 2}}},
      {"6", {{"Phi*(1+a1*r)", 2}, {"Phi*(1+r)+Pi*r", 2}}},
      {"7", {{"Phi*(1+a1*r)", 2}, {"Phi*(1+a1*r)+Pi*r", 2}}},
      {"8", {{"1+a1*r", 2}, {"1+a3*r", 2}, {"Pi*(1+3*r)", 1}}},
      {"9", {{"1+r", 2}, {"1+a2*r", 2}, {"Pi*(1+3*r)", 1}}},
      {"10", {{"1+r+Phi*a1*r", 2}, {"1+a2*r+Phi*a1*r", 2}, {"Pi*(1+r)", 1}}},
      {"11", {{"1+a1*r+Phi*r", 2}, {"1+a3*r+Phi*r", 2}, {"Pi*(1+r)", 1}}},
      {"12", {{"1", 4}, {"1+Pi*r", 4}}},
  };
  return f;
}

AlgebraTable normalized(AlgebraTable t) {
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

std::vector<FigureFixture> figure_fixtures() { return {calgs(), c1algs(), z4algs()}; }

const FigureFixture& figure_fixture(const std::string& name) {
  static const std::vector<FigureFixture> all = figure_fixtures();
  for (const auto& f : all)
    if (f.name == name) return f;
  throw Error("unknown figure fixture '" + name + "'");
}

AlgebraTable fixture_table(const FixtureRow& row, const RingPtr& R) {
  AlgebraTable t;
  for (const auto& [src, n] : row.ends) t.push_back({parse_object(R, src).coeffs, n});
  return normalized(std::move(t));
}

AlgebraTable module_table(const FusionModule& K) {
  AlgebraTable t;
  for (const auto& [X, n] : algebra_table(K)) t.push_back({X.coeffs, n});
  return normalized(std::move(t));
}

std::vector<FixtureMatch> match_fixture(const FigureFixture& fig, const std::vector<FusionModule>& mods) {
  RingPtr R = catalog_ring(fig.ring);
  std::vector<AlgebraTable> tables;
  for (const auto& K : mods) tables.push_back(module_table(K));
  const auto autos = automorphisms(*R);
  std::vector<FixtureMatch> out;
  for (const auto& row : fig.rows) {
    FixtureMatch m;
    m.id = row.id;
    const AlgebraTable want = fixture_table(row, R);
    std::set<AlgebraTable> images;
    for (const auto& p : autos) {
      AlgebraTable img;
      for (const auto& [x, n] : want) {
        std::vector<int> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[p[i]] = x[i];
        img.push_back({y, n});
      }
      images.insert(normalized(std::move(img)));
    }
    for (std::size_t t = 0; t < tables.size(); ++t) {
      if (tables[t] == want) m.exact.push_back(t);
      if (images.count(tables[t])) m.relabeled.push_back(t);
    }
    if (m.exact.size() == 1) m.chosen = static_cast<long>(m.exact[0]);
    else if (m.exact.empty() && m.relabeled.size() == 1) m.chosen = static_cast<long>(m.relabeled[0]);
    out.push_back(std::move(m));
  }
  return out;
}

long find_fixture_module(const FigureFixture& fig, const std::string& row_id, const std::vector<FusionModule>& mods) {
  for (const auto& m : match_fixture(fig, mods))
    if (m.id == row_id) return m.chosen;
  throw Error("figure " + fig.name + " has no row '" + row_id + "'");
}

}  // namespace fusionmod::cli
