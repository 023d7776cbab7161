#include "fusionmod/module.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "fusionmod/error.hpp"

namespace fusionmod {

FusionModule::FusionModule(RingPtr ring, int rank, std::vector<IntMatrix> matrices)
    : ring_(std::move(ring)), rank_(rank), M_(std::move(matrices)) {}

FusionModule FusionModule::permuted(const std::vector<int>& p) const {
  std::vector<IntMatrix> out(M_.size(), IntMatrix(M_.empty() ? 0 : M_[0].size()));
  for (std::size_t i = 0; i < M_.size(); ++i)
    for (int a = 0; a < rank_; ++a)
      for (int b = 0; b < rank_; ++b) out[i][static_cast<std::size_t>(p[a]) * rank_ + p[b]] = at(static_cast<int>(i), a, b);
  return FusionModule(ring_, rank_, std::move(out));
}

FusionModule regular_module(const RingPtr& ring) {
  const int n = ring->rank();
  std::vector<IntMatrix> M(n, IntMatrix(static_cast<std::size_t>(n) * n));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) M[i][static_cast<std::size_t>(a) * n + b] = ring->N(a, i, b);
  return FusionModule(ring, n, std::move(M));
}

bool is_connected(const FusionModule& K) {
  const int r = K.rank();
  if (r == 0) return false;
  std::vector<int> seen(r, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int count = 1;
  const int n = K.ring()->rank();
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < r; ++b)
        if (!seen[b] && (K.at(i, a, b) > 0 || K.at(i, b, a) > 0)) {
          seen[b] = 1;
          ++count;
          queue.push_back(b);
        }
  }
  return count == r;
}

Report validate_module(const FusionModule& K) {
  if (!K.ring()) return Report::fail("shape", "module has no ring");
  const FusionRing& R = *K.ring();
  const int n = R.rank();
  const int r = K.rank();
  if (r < 1) return Report::fail("shape", "module rank must be positive");
  if (static_cast<int>(K.matrices().size()) != n) return Report::fail("shape", "need one matrix per ring basis element");
  for (int i = 0; i < n; ++i) {
    if (K.matrix(i).size() != static_cast<std::size_t>(r) * r) {
      return Report::fail("shape", "matrix for " + R.label(i) + " is not rank x rank");
    }
    for (int v : K.matrix(i))
      if (v < 0) return Report::fail("shape", "negative entry in matrix for " + R.label(i));
  }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (K.at(R.unit(), a, b) != (a == b ? 1 : 0)) return Report::fail("unit", "unit does not act as the identity");
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        if (K.at(R.dual(i), a, b) != K.at(i, b, a)) {
          return Report::fail("frobenius", "matrix for " + R.label(R.dual(i)) + " is not the transpose of the matrix for " +
                                               R.label(i) + " at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
        }
  std::vector<long long> prod(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::fill(prod.begin(), prod.end(), 0);
      for (int a = 0; a < r; ++a)
        for (int c = 0; c < r; ++c) {
          int x = K.at(i, a, c);
          if (!x) continue;
          for (int b = 0; b < r; ++b) prod[static_cast<std::size_t>(a) * r + b] += static_cast<long long>(x) * K.at(j, c, b);
        }
      for (int k = 0; k < n; ++k) {
        int c = R.N(i, j, k);
        if (!c) continue;
        for (std::size_t e = 0; e < prod.size(); ++e) prod[e] -= static_cast<long long>(c) * K.matrix(k)[e];
      }
      for (std::size_t e = 0; e < prod.size(); ++e)
        if (prod[e] != 0) {
          return Report::fail("associativity", "M[" + R.label(i) + "] M[" + R.label(j) + "] differs from the fusion rule at (" +
                                                   std::to_string(e / r) + ", " + std::to_string(e % r) + ")");
        }
    }
  if (!is_connected(K)) return Report::fail("connectivity", "module decomposes (support graph is disconnected)");
  return Report::pass();
}

std::optional<QuadNumber> DimVector::value(int a) const { return field_sqrt(squares[a]); }

double DimVector::numeric(int a) const { return std::sqrt(squares[a].to_double()); }

std::string DimVector::describe(int a) const {
  if (auto v = value(a)) return v->to_d_string();
  return "sqrt(" + squares[a].to_d_string() + ")";
}

DimVector dim_vector(const FusionModule& K, const FpData* fp) {
  FpData own;
  if (!fp) {
    own = fp_dims(*K.ring());
    fp = &own;
  }
  const int r = K.rank();
  const int n = K.ring()->rank();
  std::vector<QuadNumber> W(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < n; ++i)
    for (std::size_t e = 0; e < W.size(); ++e)
      if (K.matrix(i)[e]) W[e] += QuadNumber(K.matrix(i)[e]) * fp->dims[i];
  DimVector dv;
  dv.squares.resize(r);
  dv.ratios.resize(r);
  if (W[0].sign() <= 0) throw Error("module dimension vector: degenerate action");
  QuadNumber total;
  for (int a = 0; a < r; ++a) {
    dv.squares[a] = W[static_cast<std::size_t>(a) * r + a];
    dv.ratios[a] = W[static_cast<std::size_t>(a) * r] / W[0];
    total += dv.squares[a];
    if (dv.ratios[a].sign() <= 0) throw Error("module dimension vector: nonpositive entry at index " + std::to_string(a));
  }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (W[static_cast<std::size_t>(a) * r + b] != dv.product(a, b)) {
        throw Error("module dimension vector: internal Hom dimensions are not of rank one");
      }
  if (total != fp->global) throw Error("module dimension vector: normalization mismatch");
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < r; ++a) {
      QuadNumber s;
      for (int b = 0; b < r; ++b)
        if (K.at(i, a, b)) s += QuadNumber(K.at(i, a, b)) * dv.ratios[b];
      if (s != fp->dims[i] * dv.ratios[a]) throw Error("module dimension vector fails the eigenvector check");
    }
  return dv;
}

ObjectVector internal_end(const FusionModule& K, int a) {
  ObjectVector e{K.ring(), std::vector<int>(K.ring()->rank())};
  for (int i = 0; i < K.ring()->rank(); ++i) e.coeffs[i] = K.at(i, a, a);
  return e;
}

std::vector<std::pair<ObjectVector, int>> algebra_table(const FusionModule& K, const FpData* fp) {
  FpData own;
  if (!fp) {
    own = fp_dims(*K.ring());
    fp = &own;
  }
  std::map<std::vector<int>, int> counts;
  for (int a = 0; a < K.rank(); ++a) ++counts[internal_end(K, a).coeffs];
  std::vector<std::pair<QuadNumber, std::pair<ObjectVector, int>>> rows;
  for (const auto& [c, k] : counts) {
    QuadNumber dim;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i]) dim += QuadNumber(c[i]) * fp->dims[i];
    rows.push_back({dim, {ObjectVector{K.ring(), c}, k}});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    auto o = x.first <=> y.first;
    if (o != 0) return o < 0;
    return x.second.first.coeffs < y.second.first.coeffs;
  });
  std::vector<std::pair<ObjectVector, int>> out;
  for (auto& row : rows) out.push_back(std::move(row.second));
  return out;
}

std::vector<FusionModule> restrict_and_decompose(const FusionModule& K, const std::vector<int>& sub_indices) {
  std::vector<int> sub(sub_indices);
  std::sort(sub.begin(), sub.end());
  sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
  auto S = std::make_shared<FusionRing>(subring(*K.ring(), sub));
  const int r = K.rank();
  std::vector<int> comp(r, -1);
  int ncomp = 0;
  for (int s = 0; s < r; ++s) {
    if (comp[s] >= 0) continue;
    std::deque<int> queue{s};
    comp[s] = ncomp;
    while (!queue.empty()) {
      int a = queue.front();
      queue.pop_front();
      for (int i : sub)
        for (int b = 0; b < r; ++b)
          if (comp[b] < 0 && (K.at(i, a, b) > 0 || K.at(i, b, a) > 0)) {
            comp[b] = ncomp;
            queue.push_back(b);
          }
    }
    ++ncomp;
  }
  std::vector<FusionModule> parts;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> idx;
    for (int a = 0; a < r; ++a)
      if (comp[a] == c) idx.push_back(a);
    const int m = static_cast<int>(idx.size());
    std::vector<IntMatrix> M;
    for (int i : sub) {
      IntMatrix X(static_cast<std::size_t>(m) * m);
      for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) X[static_cast<std::size_t>(x) * m + y] = K.at(i, idx[x], idx[y]);
      M.push_back(std::move(X));
    }
    FusionModule part(S, m, std::move(M));
    Report rep = validate_module(part);
    if (!rep.ok) throw Error("restricted component fails validation: " + rep.message);
    parts.push_back(std::move(part));
  }
  std::vector<std::pair<std::pair<int, std::vector<int>>, std::size_t>> keys;
  for (std::size_t t = 0; t < parts.size(); ++t) keys.push_back({{parts[t].rank(), canonical_code(parts[t])}, t});
  std::sort(keys.begin(), keys.end());
  std::vector<FusionModule> out;
  for (const auto& k : keys) out.push_back(parts[k.second]);
  return out;
}

std::optional<ModuleGrading> grade_module(const FusionModule& K, const Grading& g) {
  const int r = K.rank();
  const int n = K.ring()->rank();
  if (static_cast<int>(g.degree.size()) != n) throw Error("grading does not match the ring");
  int anchor = 0;
  for (int a = 0; a < r; ++a) {
    ObjectVector e = internal_end(K, a);
    bool unit_only = true;
    for (int i = 0; i < n; ++i) unit_only &= e.coeffs[i] == (i == K.ring()->unit() ? 1 : 0);
    if (unit_only) {
      anchor = a;
      break;
    }
  }
  std::vector<std::optional<std::vector<int>>> label(r);
  label[anchor] = g.identity();
  std::deque<int> queue{anchor};
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < r; ++b) {
        if (K.at(i, a, b) > 0) {
          auto want = g.add(*label[a], g.degree[i]);
          if (!label[b]) {
            label[b] = want;
            queue.push_back(b);
          } else if (*label[b] != want) {
            return std::nullopt;
          }
        }
        if (K.at(i, b, a) > 0) {
          auto want = g.add(*label[a], g.negate(g.degree[i]));
          if (!label[b]) {
            label[b] = want;
            queue.push_back(b);
          } else if (*label[b] != want) {
            return std::nullopt;
          }
        }
      }
  }
  ModuleGrading out;
  std::map<std::vector<int>, std::vector<int>> blocks;
  for (int a = 0; a < r; ++a) {
    if (!label[a]) return std::nullopt;
    out.label.push_back(*label[a]);
    blocks[*label[a]].push_back(a);
  }
  for (auto& [k, v] : blocks) out.blocks.push_back(v);
  return out;
}

}  // namespace fusionmod
