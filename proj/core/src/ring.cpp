#include "fusionmod/ring.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "fusionmod/error.hpp"

namespace fusionmod {

int Grading::order() const {
  int n = 1;
  for (int f : factors) n *= f;
  return n;
}

std::vector<int> Grading::add(const std::vector<int>& x, const std::vector<int>& y) const {
  std::vector<int> z(factors.size());
  for (std::size_t t = 0; t < factors.size(); ++t) z[t] = (x[t] + y[t]) % factors[t];
  return z;
}

std::vector<int> Grading::negate(const std::vector<int>& x) const {
  std::vector<int> z(factors.size());
  for (std::size_t t = 0; t < factors.size(); ++t) z[t] = (factors[t] - x[t]) % factors[t];
  return z;
}

FusionRing::FusionRing(std::string name, std::vector<std::string> labels, int unit, std::vector<int> dual,
                       std::vector<int> tensor)
    : name_(std::move(name)),
      labels_(std::move(labels)),
      rank_(static_cast<int>(labels_.size())),
      unit_(unit),
      dual_(std::move(dual)),
      tensor_(std::move(tensor)) {}

std::optional<int> FusionRing::find_label(std::string_view label) const {
  for (int i = 0; i < rank_; ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::vector<long long> FusionRing::multiply(const std::vector<long long>& x, const std::vector<long long>& y) const {
  std::vector<long long> z(rank_, 0);
  for (int i = 0; i < rank_; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) {
      if (y[j] == 0) continue;
      long long c = x[i] * y[j];
      for (int k = 0; k < rank_; ++k) z[k] += c * N(i, j, k);
    }
  }
  return z;
}

bool FusionRing::is_commutative() const {
  for (int i = 0; i < rank_; ++i)
    for (int j = i + 1; j < rank_; ++j)
      for (int k = 0; k < rank_; ++k)
        if (N(i, j, k) != N(j, i, k)) return false;
  return true;
}

void FusionRing::set_shorthand(const std::string& name, std::vector<int> coeffs) {
  if (static_cast<int>(coeffs.size()) != rank_) throw Error("shorthand '" + name + "' has wrong length");
  shorthands_[name] = std::move(coeffs);
}

bool FusionRing::same_structure(const FusionRing& other) const {
  return rank_ == other.rank_ && unit_ == other.unit_ && dual_ == other.dual_ && tensor_ == other.tensor_;
}

bool ObjectVector::is_self_dual() const {
  for (int i = 0; i < ring->rank(); ++i) {
    if (coeffs[i] != coeffs[ring->dual(i)]) return false;
  }
  return true;
}

bool ObjectVector::is_algebra_candidate() const { return coeffs[ring->unit()] == 1 && is_self_dual(); }

namespace {

std::string triple(const FusionRing& r, int i, int j, int k) {
  return "(" + r.label(i) + ", " + r.label(j) + ", " + r.label(k) + ")";
}

}  // namespace

Report validate_ring(const FusionRing& r) {
  const int n = r.rank();
  if (n == 0) return Report::fail("shape", "ring has no basis elements");
  if (static_cast<int>(r.duals().size()) != n) return Report::fail("shape", "dual list length differs from rank");
  if (r.tensor().size() != static_cast<std::size_t>(n) * n * n) {
    return Report::fail("shape", "structure tensor size is not rank^3");
  }
  if (r.unit() < 0 || r.unit() >= n) return Report::fail("shape", "unit index out of range");
  std::set<std::string> seen(r.labels().begin(), r.labels().end());
  if (static_cast<int>(seen.size()) != n) return Report::fail("shape", "labels are not distinct");
  for (int i = 0; i < n; ++i) {
    int j = r.dual(i);
    if (j < 0 || j >= n) return Report::fail("shape", "dual of " + r.label(i) + " out of range");
  }
  for (int v : r.tensor()) {
    if (v < 0) return Report::fail("shape", "negative structure constant");
  }
  for (int i = 0; i < n; ++i) {
    if (r.dual(r.dual(i)) != i) return Report::fail("duality", "dual is not an involution at " + r.label(i));
  }
  if (r.dual(r.unit()) != r.unit()) return Report::fail("duality", "unit is not self-dual");
  const int u = r.unit();
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      int e = j == k ? 1 : 0;
      if (r.N(u, j, k) != e) return Report::fail("unit", "left unit law fails at " + triple(r, u, j, k));
      if (r.N(j, u, k) != e) return Report::fail("unit", "right unit law fails at " + triple(r, j, u, k));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int e = j == r.dual(i) ? 1 : 0;
      if (r.N(i, j, u) != e) return Report::fail("duality", "N" + triple(r, i, j, u) + " should be " + std::to_string(e));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        int v = r.N(i, j, k);
        if (r.N(r.dual(i), k, j) != v || r.N(k, r.dual(j), i) != v) {
          return Report::fail("frobenius", "Frobenius reciprocity fails at " + triple(r, i, j, k));
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          long long lhs = 0, rhs = 0;
          for (int m = 0; m < n; ++m) {
            lhs += static_cast<long long>(r.N(i, j, m)) * r.N(m, k, l);
            rhs += static_cast<long long>(r.N(j, k, m)) * r.N(i, m, l);
          }
          if (lhs != rhs) {
            return Report::fail("associativity", "(x_i x_j) x_k != x_i (x_j x_k) at coefficient of " + r.label(l) +
                                                     " for " + triple(r, i, j, k));
          }
        }
      }
    }
  }
  return Report::pass();
}

FpData fp_dims(const FusionRing& r) {
  const int n = r.rank();
  std::vector<double> t(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) t[j * n + k] += r.N(i, j, k);
  std::vector<double> v(n, 1.0), w(n);
  for (int iter = 0; iter < 200000; ++iter) {
    for (int j = 0; j < n; ++j) {
      double s = v[j];  // shift by the identity to rule out oscillation
      for (int k = 0; k < n; ++k) s += t[j * n + k] * v[k];
      w[j] = s;
    }
    double scale = w[r.unit()];
    double diff = 0;
    for (int j = 0; j < n; ++j) {
      w[j] /= scale;
      diff = std::max(diff, std::fabs(w[j] - v[j]));
    }
    v.swap(w);
    if (diff < 1e-14) break;
  }
  FpData out;
  out.dims.resize(n);
  for (int i = 0; i < n; ++i) {
    auto q = recognize_float(v[i]);
    if (!q || q->sign() <= 0) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "Frobenius-Perron dimension of basis index " << i << " (" << r.label(i) << ") ~ " << v[i]
          << " is not recognized in Q(sqrt5)";
      throw Error(msg.str());
    }
    out.dims[i] = *q;
  }
  if (out.dims[r.unit()] != QuadNumber(1)) throw Error("unit does not have dimension 1");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      QuadNumber rhs;
      for (int k = 0; k < n; ++k) {
        if (r.N(i, j, k)) rhs += QuadNumber(r.N(i, j, k)) * out.dims[k];
      }
      if (out.dims[i] * out.dims[j] != rhs) {
        throw Error("Frobenius-Perron dimension of basis index " + std::to_string(i) + " (" + r.label(i) +
                    ") fails the exact homomorphism check");
      }
    }
  }
  for (const auto& d : out.dims) out.global += d * d;
  return out;
}

FusionRing crossed_product(const FusionRing& r, const std::vector<int>& theta, int n) {
  const int m = r.rank();
  if (n < 1) throw Error("crossed product order must be positive");
  if (static_cast<int>(theta.size()) != m) throw Error("automorphism has wrong length");
  std::vector<int> seen(m, 0);
  for (int x : theta) {
    if (x < 0 || x >= m || seen[x]++) throw Error("automorphism is not a permutation");
  }
  if (theta[r.unit()] != r.unit()) throw Error("automorphism does not fix the unit");
  for (int i = 0; i < m; ++i) {
    if (theta[r.dual(i)] != r.dual(theta[i])) throw Error("automorphism does not commute with duality");
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (r.N(theta[i], theta[j], theta[k]) != r.N(i, j, k)) {
          throw Error("permutation does not preserve the structure constants");
        }
  // powers of theta
  std::vector<std::vector<int>> pw(n + 1, std::vector<int>(m));
  std::iota(pw[0].begin(), pw[0].end(), 0);
  for (int k = 1; k <= n; ++k)
    for (int i = 0; i < m; ++i) pw[k][i] = theta[pw[k - 1][i]];
  if (pw[n] != pw[0]) throw Error("automorphism order does not divide " + std::to_string(n));

  const int rank = m * n;
  std::vector<std::string> labels(rank);
  std::vector<int> dual(rank);
  std::vector<int> tensor(static_cast<std::size_t>(rank) * rank * rank, 0);
  auto idx = [m](int k, int i) { return k * m + i; };
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < m; ++i) {
      labels[idx(k, i)] = k == 0 ? r.label(i) : r.label(i) + "_g" + std::to_string(k);
      int kinv = (n - k) % n;
      dual[idx(k, i)] = idx(kinv, pw[kinv][r.dual(i)]);
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < m; ++i)
      for (int l = 0; l < n; ++l)
        for (int j = 0; j < m; ++j) {
          int tj = pw[k][j];
          int kl = (k + l) % n;
          for (int c = 0; c < m; ++c) {
            int v = r.N(i, tj, c);
            if (v) tensor[(static_cast<std::size_t>(idx(k, i)) * rank + idx(l, j)) * rank + idx(kl, c)] = v;
          }
        }
  std::string name = n == 1 ? r.name() : r.name() + "#" + std::to_string(n);
  FusionRing out(name, labels, r.unit(), dual, tensor);
  Grading g;
  if (n > 1) g.factors = {n};
  g.degree.resize(rank);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < m; ++i) g.degree[idx(k, i)] = n > 1 ? std::vector<int>{k} : std::vector<int>{};
  out.set_grading(g);
  if (n == 1) {
    for (const auto& [key, c] : r.shorthands()) out.set_shorthand(key, c);
  }
  return out;
}

namespace {

// Relabeling-invariant fingerprint of a basis element.
std::vector<long long> fingerprint(const FusionRing& r, int i, const std::vector<QuadNumber>* dims) {
  const int n = r.rank();
  std::vector<long long> f;
  if (dims) {
    f.push_back((*dims)[i].halves().first.get_num().get_si());
    f.push_back((*dims)[i].halves().second.get_num().get_si());
  }
  f.push_back(r.dual(i) == i ? 1 : 0);
  f.push_back(i == r.unit() ? 1 : 0);
  f.push_back(r.N(i, i, i));
  std::map<int, long long> left, right, sq;
  long long tr = 0;
  for (int j = 0; j < n; ++j) {
    tr += r.N(i, j, j);
    for (int k = 0; k < n; ++k) {
      ++left[r.N(i, j, k)];
      ++right[r.N(j, i, k)];
    }
    ++sq[r.N(i, i, j)];
  }
  f.push_back(tr);
  for (auto* h : {&left, &right, &sq}) {
    f.push_back(-1);
    for (auto [v, c] : *h) {
      f.push_back(v);
      f.push_back(c);
    }
  }
  return f;
}

struct IsoSearch {
  const FusionRing& r;
  const FusionRing& s;
  std::vector<int> order;
  std::vector<std::vector<int>> candidates;  // per index of r
  std::vector<int> map, used;
  std::vector<int> assigned;
  bool all = false;
  std::vector<std::vector<int>> found;

  bool consistent(int i, int x) {
    if (r.dual(i) == i && s.dual(x) != x) return false;
    int di = r.dual(i);
    if (map[di] >= 0 && map[di] != s.dual(x)) return false;
    for (int j : assigned) {
      int y = map[j];
      for (int k : assigned) {
        int z = map[k];
        if (r.N(i, j, k) != s.N(x, y, z) || r.N(j, i, k) != s.N(y, x, z) || r.N(j, k, i) != s.N(y, z, x)) return false;
      }
      if (r.N(i, i, j) != s.N(x, x, y) || r.N(i, j, i) != s.N(x, y, x) || r.N(j, i, i) != s.N(y, x, x)) return false;
    }
    return r.N(i, i, i) == s.N(x, x, x);
  }

  bool dfs(std::size_t depth) {
    if (depth == order.size()) {
      found.push_back(map);
      return !all;
    }
    int i = order[depth];
    for (int x : candidates[i]) {
      if (used[x]) continue;
      if (!consistent(i, x)) continue;
      map[i] = x;
      used[x] = 1;
      assigned.push_back(i);
      if (dfs(depth + 1)) return true;
      assigned.pop_back();
      used[x] = 0;
      map[i] = -1;
    }
    return false;
  }
};

std::vector<std::vector<int>> isomorphisms(const FusionRing& r, const FusionRing& s, bool all) {
  const int n = r.rank();
  if (n != s.rank()) return {};
  std::optional<FpData> fr, fs;
  try {
    fr = fp_dims(r);
    fs = fp_dims(s);
  } catch (const Error&) {
    fr.reset();
    fs.reset();
  }
  std::vector<std::vector<long long>> pr(n), ps(n);
  for (int i = 0; i < n; ++i) {
    pr[i] = fingerprint(r, i, fr ? &fr->dims : nullptr);
    ps[i] = fingerprint(s, i, fs ? &fs->dims : nullptr);
  }
  auto a = pr, b = ps;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return {};
  IsoSearch search{r, s, {}, std::vector<std::vector<int>>(n), std::vector<int>(n, -1), std::vector<int>(n, 0), {},
                   all, {}};
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < n; ++x)
      if (pr[i] == ps[x]) search.candidates[i].push_back(x);
  // unit first, then smallest candidate classes, preferring elements adjacent to already ordered ones
  std::vector<int> order{r.unit()};
  std::vector<int> in(n, 0);
  in[r.unit()] = 1;
  while (static_cast<int>(order.size()) < n) {
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (in[i]) continue;
      if (best < 0 || search.candidates[i].size() < search.candidates[best].size()) best = i;
    }
    order.push_back(best);
    in[best] = 1;
  }
  search.order = order;
  search.dfs(0);
  return search.found;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const FusionRing& r, const FusionRing& s) {
  auto found = isomorphisms(r, s, false);
  if (found.empty()) return std::nullopt;
  return found.front();
}

std::vector<std::vector<int>> automorphisms(const FusionRing& ring) { return isomorphisms(ring, ring, true); }

FusionRing opposite_ring(const FusionRing& r) {
  const int n = r.rank();
  std::vector<int> t(r.tensor().size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) t[(static_cast<std::size_t>(i) * n + j) * n + k] = r.N(j, i, k);
  FusionRing out(r.name() + "^op", r.labels(), r.unit(), r.duals(), t);
  for (const auto& [key, c] : r.shorthands()) out.set_shorthand(key, c);
  return out;
}

bool is_subring(const FusionRing& r, const std::vector<int>& indices) {
  std::vector<int> in(r.rank(), 0);
  for (int i : indices) {
    if (i < 0 || i >= r.rank()) return false;
    in[i] = 1;
  }
  if (!in[r.unit()]) return false;
  for (int i : indices) {
    if (!in[r.dual(i)]) return false;
    for (int j : indices)
      for (int k = 0; k < r.rank(); ++k)
        if (r.N(i, j, k) && !in[k]) return false;
  }
  return true;
}

FusionRing subring(const FusionRing& r, std::vector<int> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!is_subring(r, indices)) throw Error("indices do not span a subring of " + r.name());
  const int m = static_cast<int>(indices.size());
  std::vector<int> pos(r.rank(), -1);
  for (int t = 0; t < m; ++t) pos[indices[t]] = t;
  std::vector<std::string> labels;
  std::vector<int> dual;
  for (int i : indices) {
    labels.push_back(r.label(i));
    dual.push_back(pos[r.dual(i)]);
  }
  std::vector<int> t(static_cast<std::size_t>(m) * m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) t[(static_cast<std::size_t>(a) * m + b) * m + c] = r.N(indices[a], indices[b], indices[c]);
  std::string name = r.name() + "{";
  for (int a = 0; a < m; ++a) name += (a ? "," : "") + std::to_string(indices[a]);
  name += "}";
  return FusionRing(name, labels, pos[r.unit()], dual, t);
}

namespace {

int find_root(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

// Invariant factors f1 | f2 | ... of an abelian group given by its table, with generators.
std::optional<std::pair<std::vector<int>, std::vector<int>>> decompose_group(const std::vector<std::vector<int>>& mul,
                                                                             int identity) {
  const int n = static_cast<int>(mul.size());
  std::vector<int> ord(n);
  for (int g = 0; g < n; ++g) {
    int x = g, k = 1;
    while (x != identity) {
      x = mul[x][g];
      ++k;
    }
    ord[g] = k;
  }
  // divisibility chains with product n
  std::vector<std::vector<int>> chains;
  std::function<void(int, int, std::vector<int>&)> gen = [&](int rest, int last, std::vector<int>& cur) {
    if (rest == 1) {
      chains.push_back(cur);
      return;
    }
    for (int f = 2; f <= rest; ++f) {
      if (rest % f) continue;
      if (last && f % last) continue;
      cur.push_back(f);
      gen(rest / f, f, cur);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  gen(n, 0, cur);
  // prefer fewer factors
  std::sort(chains.begin(), chains.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  for (const auto& chain : chains) {
    std::vector<int> gens;
    std::vector<int> span{identity};  // elements generated so far
    std::function<bool(std::size_t)> pick = [&](std::size_t t) -> bool {
      if (t == chain.size()) return static_cast<int>(span.size()) == n;
      for (int g = 0; g < n; ++g) {
        if (ord[g] != chain[t]) continue;
        // span x <g> must have size |span| * ord(g)
        std::vector<int> next;
        std::vector<int> seen(n, 0);
        int p = identity;
        bool ok = true;
        for (int k = 0; k < chain[t] && ok; ++k) {
          for (int s : span) {
            int e = mul[s][p];
            if (seen[e]) {
              ok = false;
              break;
            }
            seen[e] = 1;
            next.push_back(e);
          }
          p = mul[p][g];
        }
        if (!ok) continue;
        auto saved = span;
        span = next;
        gens.push_back(g);
        if (pick(t + 1)) return true;
        gens.pop_back();
        span = saved;
      }
      return false;
    };
    if (pick(0)) return std::make_pair(chain, gens);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Grading> grading_from_subring(const FusionRing& r, const std::vector<int>& trivial) {
  if (!is_subring(r, trivial)) throw Error("trivial component is not a subring");
  const int n = r.rank();
  std::vector<int> in(n, 0);
  for (int t : trivial) in[t] = 1;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int dj = r.dual(j);
      for (int k = 0; k < n; ++k)
        if (r.N(i, dj, k) && in[k]) {
          parent[find_root(parent, i)] = find_root(parent, j);
          break;
        }
    }
  std::map<int, int> comp_of_root;
  std::vector<int> comp(n);
  for (int i = 0; i < n; ++i) {
    int root = find_root(parent, i);
    auto it = comp_of_root.find(root);
    if (it == comp_of_root.end()) it = comp_of_root.emplace(root, static_cast<int>(comp_of_root.size())).first;
    comp[i] = it->second;
  }
  const int c = static_cast<int>(comp_of_root.size());
  for (int i = 0; i < n; ++i)
    if ((comp[i] == comp[r.unit()]) != (in[i] == 1)) return std::nullopt;
  std::vector<std::vector<int>> mul(c, std::vector<int>(c, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (!r.N(i, j, k)) continue;
        int& slot = mul[comp[i]][comp[j]];
        if (slot < 0) {
          slot = comp[k];
        } else if (slot != comp[k]) {
          return std::nullopt;
        }
      }
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b)
      if (mul[a][b] < 0 || mul[a][b] != mul[b][a]) return std::nullopt;
  int e = comp[r.unit()];
  for (int a = 0; a < c; ++a) {
    bool has_inverse = false;
    for (int b = 0; b < c; ++b) has_inverse |= mul[a][b] == e;
    if (!has_inverse || mul[e][a] != a) return std::nullopt;
  }
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b)
      for (int x = 0; x < c; ++x)
        if (mul[mul[a][b]][x] != mul[a][mul[b][x]]) return std::nullopt;
  auto dec = decompose_group(mul, e);
  if (!dec) return std::nullopt;
  const auto& [factors, gens] = *dec;
  // coordinates of each component
  std::vector<std::vector<int>> coord(c);
  std::vector<int> counter(factors.size(), 0);
  for (;;) {
    int x = e;
    for (std::size_t t = 0; t < factors.size(); ++t)
      for (int k = 0; k < counter[t]; ++k) x = mul[x][gens[t]];
    coord[x] = counter;
    std::size_t t = 0;
    while (t < factors.size() && ++counter[t] == factors[t]) counter[t++] = 0;
    if (t == factors.size()) break;
  }
  Grading g;
  g.factors = factors;
  g.degree.resize(n);
  for (int i = 0; i < n; ++i) g.degree[i] = coord[comp[i]];
  return g;
}

}  // namespace fusionmod
