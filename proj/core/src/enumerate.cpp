#include "fusionmod/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "fusionmod/error.hpp"
#include "search.hpp"

namespace fusionmod {

namespace {

using detail::LinearConstraint;
using detail::SquareBound;
using detail::VarSearch;
using detail::Z5;

long floor_of(const QuadNumber& x) {
  long k = static_cast<long>(std::floor(x.to_double()));
  while (QuadNumber(k + 1) <= x) ++k;
  while (QuadNumber(k) > x) --k;
  return k;
}

struct Plan {
  RingPtr ring;
  FpData fp;
  int n = 0;
  int unit = 0;
  std::vector<Z5> D2;
  std::vector<char> inv;
  std::vector<int> dim_floor;
  std::vector<long long> dim_sq_floor;
  std::vector<std::vector<std::pair<int, int>>> sup;  // sup[i*n+j] = (k, N_ij^k)
  std::vector<int> gens;

  const std::vector<std::pair<int, int>>& support(int i, int j) const { return sup[static_cast<std::size_t>(i) * n + j]; }
  int single(int i, int j) const { return support(i, j).front().first; }
};

// Indices reachable from `known` by duality and by products with a single unknown summand.
std::vector<char> closure(const Plan& P, std::vector<char> known) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < P.n; ++i)
      if (known[i] && !known[P.ring->dual(i)]) {
        known[P.ring->dual(i)] = 1;
        changed = true;
      }
    for (int i = 0; i < P.n; ++i) {
      if (!known[i]) continue;
      for (int j = 0; j < P.n; ++j) {
        if (!known[j]) continue;
        int cnt = 0;
        int last = -1;
        for (const auto& [k, m] : P.support(i, j))
          if (!known[k]) {
            ++cnt;
            last = k;
          }
        if (cnt == 1) {
          known[last] = 1;
          changed = true;
        }
      }
    }
  }
  return known;
}

bool covers(const Plan& P, const std::vector<int>& set) {
  std::vector<char> known(P.n, 0);
  known[P.unit] = 1;
  for (int g : set) known[g] = 1;
  auto c = closure(P, known);
  return std::all_of(c.begin(), c.end(), [](char x) { return x != 0; });
}

// Calls fn on each k-subset of items in lexicographic order; stops when fn returns true.
bool for_each_subset(const std::vector<int>& items, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> pick;
  std::function<bool(int)> rec = [&](int start) -> bool {
    if (static_cast<int>(pick.size()) == k) return fn(pick);
    for (int i = start; i < static_cast<int>(items.size()); ++i) {
      pick.push_back(items[i]);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

// Smallest generating set, fewest non-invertibles first; invertibles are listed first.
std::vector<int> choose_generators(const Plan& P) {
  std::vector<int> invs;
  std::vector<int> others;
  for (int i = 0; i < P.n; ++i) {
    if (i == P.unit || P.ring->dual(i) < i) continue;
    (P.inv[i] ? invs : others).push_back(i);
  }
  std::stable_sort(others.begin(), others.end(),
                   [&](int x, int y) { return P.fp.dims[x] < P.fp.dims[y]; });
  for (int kn = 0; kn <= static_cast<int>(others.size()); ++kn) {
    for (int ki = 0; ki <= static_cast<int>(invs.size()); ++ki) {
      std::vector<int> result;
      bool hit = for_each_subset(others, kn, [&](const std::vector<int>& so) {
        return for_each_subset(invs, ki, [&](const std::vector<int>& si) {
          std::vector<int> set = si;
          set.insert(set.end(), so.begin(), so.end());
          if (!covers(P, set)) return false;
          result = set;
          return true;
        });
      });
      if (hit) return result;
    }
  }
  throw Error("no generating set found for ring " + P.ring->name());
}

Plan make_plan(const RingPtr& ring) {
  Plan P;
  P.ring = ring;
  P.fp = fp_dims(*ring);
  P.n = ring->rank();
  P.unit = ring->unit();
  P.sup.resize(static_cast<std::size_t>(P.n) * P.n);
  for (int i = 0; i < P.n; ++i)
    for (int j = 0; j < P.n; ++j)
      for (int k = 0; k < P.n; ++k)
        if (ring->N(i, j, k) != 0) P.sup[static_cast<std::size_t>(i) * P.n + j].push_back({k, ring->N(i, j, k)});
  for (int i = 0; i < P.n; ++i) {
    const auto& d = P.fp.dims[i];
    P.D2.push_back(detail::twice(d));
    P.inv.push_back(d == QuadNumber(1) ? 1 : 0);
    P.dim_floor.push_back(static_cast<int>(floor_of(d)));
    P.dim_sq_floor.push_back(floor_of(d * d));
  }
  P.gens = choose_generators(P);
  return P;
}

int element_order(const Plan& P, int g) {
  int x = g;
  int k = 1;
  while (x != P.unit) {
    x = P.single(x, g);
    ++k;
  }
  return k;
}

struct Task {
  int rank = 0;
  bool has_w = false;
  std::vector<Z5> W2;              // 2 * d_a d_b
  std::vector<int> class_of;       // module indices with equal d_a share a class
};

IntMatrix multiply(const IntMatrix& A, const IntMatrix& B, int r) {
  IntMatrix C(static_cast<std::size_t>(r) * r, 0);
  for (int a = 0; a < r; ++a)
    for (int c = 0; c < r; ++c) {
      int x = A[a * r + c];
      if (x == 0) continue;
      for (int b = 0; b < r; ++b) C[a * r + b] += x * B[c * r + b];
    }
  return C;
}

IntMatrix transpose(const IntMatrix& A, int r) {
  IntMatrix T(A.size());
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) T[b * r + a] = A[a * r + b];
  return T;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
};

// Partitions of m into parts dividing ord, parts non-increasing.
void partitions(int m, int maxpart, int ord, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (m == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(m, maxpart); p >= 1; --p) {
    if (ord % p != 0) continue;
    cur.push_back(p);
    partitions(m - p, p, ord, cur, out);
    cur.pop_back();
  }
}

class TaskSearch {
 public:
  TaskSearch(const Plan& plan, const Task& task, std::atomic<std::int64_t>& nodes)
      : P_(plan), T_(task), r_(task.rank), nodes_(nodes) {}

  void run() {
    State s;
    s.M.assign(P_.n, IntMatrix(static_cast<std::size_t>(r_) * r_, 0));
    s.known.assign(P_.n, 0);
    s.verified.assign(static_cast<std::size_t>(P_.n) * P_.n, 0);
    for (int a = 0; a < r_; ++a) s.M[P_.unit][a * r_ + a] = 1;
    s.known[P_.unit] = 1;
    if (!derive(s) || !check(s)) return;
    step(0, s);
  }

  std::map<std::vector<int>, FusionModule> found;

 private:
  struct State {
    std::vector<IntMatrix> M;
    std::vector<char> known;
    std::vector<char> verified;
  };

  bool derive(State& s) const {
    const int n = P_.n;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < n; ++i) {
        int j = P_.ring->dual(i);
        if (s.known[i] && !s.known[j]) {
          s.M[j] = transpose(s.M[i], r_);
          s.known[j] = 1;
          changed = true;
        }
      }
      for (int i = 0; i < n; ++i) {
        if (!s.known[i]) continue;
        for (int j = 0; j < n; ++j) {
          if (!s.known[j]) continue;
          int cnt = 0;
          int target = -1;
          int mult = 0;
          for (const auto& [k, m] : P_.support(i, j))
            if (!s.known[k]) {
              ++cnt;
              target = k;
              mult = m;
            }
          if (cnt != 1) continue;
          IntMatrix C = multiply(s.M[i], s.M[j], r_);
          for (const auto& [k, m] : P_.support(i, j)) {
            if (k == target) continue;
            for (std::size_t e = 0; e < C.size(); ++e) C[e] -= m * s.M[k][e];
          }
          for (auto& x : C) {
            if (x < 0 || x % mult != 0) return false;
            x /= mult;
          }
          s.M[target] = std::move(C);
          s.known[target] = 1;
          changed = true;
        }
      }
    }
    return true;
  }

  bool check(State& s) const {
    const int n = P_.n;
    for (int i = 0; i < n; ++i) {
      int j = P_.ring->dual(i);
      if (i < j && s.known[i] && s.known[j] && s.M[j] != transpose(s.M[i], r_)) return false;
    }
    if (!T_.has_w) {
      // trace(sum_i d_i M[i]) = sum_a d_a^2 = global dimension
      Z5 acc{};
      for (int i = 0; i < n; ++i)
        if (s.known[i])
          for (int a = 0; a < r_; ++a)
            if (s.M[i][a * r_ + a] != 0) acc = acc + static_cast<long long>(s.M[i][a * r_ + a]) * P_.D2[i];
      if ((detail::twice(P_.fp.global) - acc).sign() < 0) return false;
    }
    if (T_.has_w) {
      for (int e = 0; e < r_ * r_; ++e) {
        Z5 acc{};
        for (int i = 0; i < n; ++i)
          if (s.known[i] && s.M[i][e] != 0) acc = acc + static_cast<long long>(s.M[i][e]) * P_.D2[i];
        if ((T_.W2[e] - acc).sign() < 0) return false;
      }
    }
    for (int i = 0; i < n; ++i) {
      if (!s.known[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (!s.known[j] || s.verified[i * n + j]) continue;
        bool ready = true;
        for (const auto& [k, m] : P_.support(i, j))
          if (!s.known[k]) ready = false;
        if (!ready) continue;
        IntMatrix C = multiply(s.M[i], s.M[j], r_);
        for (const auto& [k, m] : P_.support(i, j))
          for (std::size_t e = 0; e < C.size(); ++e) C[e] -= m * s.M[k][e];
        for (int x : C)
          if (x != 0) return false;
        s.verified[i * n + j] = 1;
      }
    }
    return true;
  }

  void leaf(const State& s) {
    for (char k : s.known)
      if (!k) throw Error("internal: generators do not determine every matrix");
    FusionModule K(P_.ring, r_, s.M);
    if (!validate_module(K)) return;
    auto code = canonical_code(K);
    if (found.count(code)) return;
    found.emplace(std::move(code), canonical_form(K));
  }

  void step(std::size_t t, State& s) {
    nodes_.fetch_add(1, std::memory_order_relaxed);
    while (t < P_.gens.size() && s.known[P_.gens[t]]) ++t;
    if (t == P_.gens.size()) {
      leaf(s);
      return;
    }
    int g = P_.gens[t];
    if (t == 0 && P_.inv[g]) {
      first_invertible(s, g);
    } else {
      generator_search(t, s, g);
    }
  }

  // Up to conjugation by class-preserving relabelings only the cycle type matters.
  void first_invertible(const State& s, int g) {
    int ord = element_order(P_, g);
    std::vector<std::vector<int>> classes;
    for (int a = 0; a < r_; ++a) {
      int c = T_.class_of[a];
      if (c >= static_cast<int>(classes.size())) classes.resize(c + 1);
      classes[c].push_back(a);
    }
    std::vector<std::vector<std::vector<int>>> options;
    for (const auto& cls : classes) {
      std::vector<std::vector<int>> parts;
      std::vector<int> cur;
      partitions(static_cast<int>(cls.size()), static_cast<int>(cls.size()), ord, cur, parts);
      options.push_back(parts);
    }
    std::vector<int> perm(r_);
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
      if (c == classes.size()) {
        State s2 = s;
        IntMatrix& Mg = s2.M[g];
        std::fill(Mg.begin(), Mg.end(), 0);
        for (int a = 0; a < r_; ++a) Mg[a * r_ + perm[a]] = 1;
        s2.known[g] = 1;
        if (derive(s2) && check(s2)) step(1, s2);
        return;
      }
      for (const auto& part : options[c]) {
        std::size_t pos = 0;
        for (int len : part) {
          for (int q = 0; q < len; ++q)
            perm[classes[c][pos + q]] = classes[c][pos + (q + 1) % len];
          pos += len;
        }
        rec(c + 1);
      }
    };
    rec(0);
  }

  struct EntryCheck {
    struct Term {
      int lv, lc, rv, rc;
    };
    std::vector<Term> lhs;
    long long rhs_const = 0;
    std::vector<std::pair<int, int>> rhs_vars;
    bool inequality = false;
    // with unknown summands: the excess e must satisfy e * scale <= mult * room
    int divisor = 0;
    bool bounded = false;
    Z5 scale;
    long long mult = 1;
    Z5 room_const;
    std::vector<std::pair<int, Z5>> room_vars;

    bool operator()(const std::vector<int>& x) const {
      long long l = 0;
      for (const auto& t : lhs) l += static_cast<long long>(t.lv >= 0 ? x[t.lv] : t.lc) * (t.rv >= 0 ? x[t.rv] : t.rc);
      long long r = rhs_const;
      for (const auto& [v, m] : rhs_vars) r += static_cast<long long>(m) * x[v];
      if (!inequality) return l == r;
      long long excess = l - r;
      if (excess < 0) return false;
      if (divisor > 1 && excess % divisor != 0) return false;
      if (bounded && excess > 0) {
        Z5 room = room_const;
        for (const auto& [v, c] : room_vars) room = room - static_cast<long long>(x[v]) * c;
        if ((mult * room - excess * scale).sign() < 0) return false;
      }
      return true;
    }
  };

  void generator_search(std::size_t t, const State& s, int g) {
    const int r = r_;
    const int rr = r * r;
    const int gd = P_.ring->dual(g);
    std::vector<int> H;
    std::vector<std::vector<int>> pi(P_.n), pinv(P_.n);
    for (int h = 0; h < P_.n; ++h) {
      if (!s.known[h] || !P_.inv[h]) continue;
      H.push_back(h);
      pi[h].assign(r, 0);
      pinv[h].assign(r, 0);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
          if (s.M[h][a * r + b] == 1) {
            pi[h][a] = b;
            pinv[h][b] = a;
          }
    }
    // entry orbits of M[g] under the known invertible symmetries
    UnionFind uf(rr);
    for (int h : H)
      for (int h2 : H) {
        int e = P_.single(P_.single(h, g), h2);
        for (int a = 0; a < r; ++a)
          for (int b = 0; b < r; ++b) {
            int src = pi[h][a] * r + pinv[h2][b];
            if (e == g) uf.unite(a * r + b, src);
            if (e == gd) uf.unite(b * r + a, src);
          }
      }
    VarSearch vs;
    std::vector<int> var_of(rr, -1);
    std::vector<int> root_var(rr, -1);
    for (int e = 0; e < rr; ++e) {
      int root = uf.find(e);
      if (root_var[root] < 0) root_var[root] = vs.add_var(P_.dim_floor[g]);
      var_of[e] = root_var[root];
    }
    // matrices fixed by M[g]: images h g h' and h g* h'
    std::map<int, std::vector<int>> active;
    for (int h : H)
      for (int h2 : H)
        for (int side = 0; side < 2; ++side) {
          int base = side == 0 ? g : gd;
          int e = P_.single(P_.single(h, base), h2);
          if (s.known[e] || active.count(e)) continue;
          std::vector<int> map(rr);
          for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
              int x = pi[h][a];
              int y = pinv[h2][b];
              map[a * r + b] = side == 0 ? var_of[x * r + y] : var_of[y * r + x];
            }
          active.emplace(e, std::move(map));
        }

    auto merged = [](std::map<int, Z5>& terms) {
      std::vector<std::pair<int, Z5>> out(terms.begin(), terms.end());
      return out;
    };
    if (T_.has_w) {
      for (int side = 0; side < (gd == g ? 1 : 2); ++side)
        for (int a = 0; a < r; ++a) {
          std::map<int, Z5> terms;
          for (int b = 0; b < r; ++b) {
            int e = side == 0 ? a * r + b : b * r + a;
            Z5& c = terms[var_of[e]];
            c = c + 2 * T_.W2[e];
          }
          LinearConstraint lc;
          lc.terms = merged(terms);
          lc.rhs = P_.D2[g] * T_.W2[a * r + a];
          lc.equality = true;
          vs.add_constraint(std::move(lc));
        }
      for (int e = 0; e < rr; ++e) {
        Z5 room = T_.W2[e];
        for (int i = 0; i < P_.n; ++i)
          if (s.known[i] && s.M[i][e] != 0) room = room - static_cast<long long>(s.M[i][e]) * P_.D2[i];
        std::map<int, Z5> terms;
        for (const auto& [k, map] : active) {
          Z5& c = terms[map[e]];
          c = c + P_.D2[k];
        }
        LinearConstraint lc;
        lc.terms = merged(terms);
        lc.rhs = room;
        vs.add_constraint(std::move(lc));
      }
    } else if (!P_.inv[g]) {
      for (int side = 0; side < (gd == g ? 1 : 2); ++side)
        for (int a = 0; a < r; ++a) {
          std::map<int, long long> terms;
          for (int b = 0; b < r; ++b) terms[var_of[side == 0 ? a * r + b : b * r + a]] += 1;
          SquareBound sb;
          sb.terms.assign(terms.begin(), terms.end());
          sb.bound = P_.dim_sq_floor[g];
          vs.add_square_bound(std::move(sb));
        }
    }
    if (!T_.has_w) {
      Z5 room = detail::twice(P_.fp.global);
      for (int i = 0; i < P_.n; ++i)
        if (s.known[i])
          for (int a = 0; a < r; ++a)
            if (s.M[i][a * r + a] != 0) room = room - static_cast<long long>(s.M[i][a * r + a]) * P_.D2[i];
      std::map<int, Z5> terms;
      for (const auto& [k, map] : active)
        for (int a = 0; a < r; ++a) {
          Z5& c = terms[map[a * r + a]];
          c = c + P_.D2[k];
        }
      LinearConstraint lc;
      lc.terms = merged(terms);
      lc.rhs = room;
      vs.add_constraint(std::move(lc));
    }
    if (P_.inv[g]) {
      for (int side = 0; side < 2; ++side)
        for (int a = 0; a < r; ++a) {
          std::map<int, Z5> terms;
          for (int b = 0; b < r; ++b) {
            Z5& c = terms[var_of[side == 0 ? a * r + b : b * r + a]];
            c = c + Z5{1, 0};
          }
          LinearConstraint lc;
          lc.terms = merged(terms);
          lc.rhs = Z5{1, 0};
          lc.equality = true;
          vs.add_constraint(std::move(lc));
        }
    }

    // relations with g as a left or right factor
    std::vector<int> members;
    for (int i = 0; i < P_.n; ++i)
      if (s.known[i] || active.count(i)) members.push_back(i);
    auto entry = [&](int i, int e, int& var, int& cst) {
      auto it = active.find(i);
      if (it != active.end()) {
        var = it->second[e];
        cst = 0;
      } else {
        var = -1;
        cst = s.M[i][e];
      }
    };
    std::set<std::pair<int, int>> pairs;
    for (int x : members) {
      pairs.insert({g, x});
      pairs.insert({x, g});
    }
    for (const auto& [i, j] : pairs) {
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          EntryCheck chk;
          QuadNumber scale_value;
          std::vector<int> deps;
          for (int c = 0; c < r; ++c) {
            EntryCheck::Term term{};
            entry(i, a * r + c, term.lv, term.lc);
            entry(j, c * r + b, term.rv, term.rc);
            if ((term.lv < 0 && term.lc == 0) || (term.rv < 0 && term.rc == 0)) continue;
            if (term.lv >= 0) deps.push_back(term.lv);
            if (term.rv >= 0) deps.push_back(term.rv);
            chk.lhs.push_back(term);
          }
          int unknown_count = 0;
          for (const auto& [k, m] : P_.support(i, j)) {
            if (!s.known[k] && !active.count(k)) {
              chk.inequality = true;
              ++unknown_count;
              chk.divisor = m;
              // smallest d_k / m among unknown summands
              if (!chk.bounded || P_.fp.dims[k] * QuadNumber(chk.mult) < QuadNumber(m) * scale_value) {
                chk.bounded = true;
                chk.scale = P_.D2[k];
                chk.mult = m;
                scale_value = P_.fp.dims[k];
              }
              continue;
            }
            int var = 0;
            int cst = 0;
            entry(k, a * r + b, var, cst);
            if (var >= 0) {
              chk.rhs_vars.push_back({var, m});
              deps.push_back(var);
            } else {
              chk.rhs_const += static_cast<long long>(m) * cst;
            }
          }
          if (unknown_count != 1) chk.divisor = 0;
          if (chk.bounded && T_.has_w) {
            const int e = a * r + b;
            chk.room_const = T_.W2[e];
            for (int q = 0; q < P_.n; ++q)
              if (s.known[q] && s.M[q][e] != 0) chk.room_const = chk.room_const - static_cast<long long>(s.M[q][e]) * P_.D2[q];
            for (const auto& [q, map] : active) {
              chk.room_vars.push_back({map[e], P_.D2[q]});
              deps.push_back(map[e]);
            }
          } else {
            chk.bounded = false;
          }
          if (chk.lhs.empty() && chk.rhs_vars.empty() && chk.rhs_const == 0) continue;
          vs.add_check(deps, chk);
        }
    }

    std::int64_t local = 0;
    vs.run(
        [&](const std::vector<int>& x) {
          State s2 = s;
          for (const auto& [k, map] : active) {
            for (int e = 0; e < rr; ++e) s2.M[k][e] = x[map[e]];
            s2.known[k] = 1;
          }
          if (derive(s2) && check(s2)) step(t + 1, s2);
          return true;
        },
        &local);
    nodes_.fetch_add(local, std::memory_order_relaxed);
  }

  const Plan& P_;
  const Task& T_;
  int r_;
  std::atomic<std::int64_t>& nodes_;
};

// Lattice value (u + v sqrt5)/2 as integers.
struct Half {
  long long u = 0;
  long long v = 0;
};

Half to_half(const QuadNumber& x) {
  Z5 z = detail::twice(x);
  return {z.p, z.q};
}

}  // namespace

std::vector<std::vector<QuadNumber>> candidate_dimension_vectors(const FusionRing& ring, std::optional<int> max_rank) {
  FpData fp = fp_dims(ring);
  const int n = ring.rank();
  // dimensions of self-dual vectors with unit coefficient 1
  std::set<QuadNumber> values{QuadNumber(1)};
  for (int i = 0; i < n; ++i) {
    int j = ring.dual(i);
    if (i == ring.unit() || j < i) continue;
    QuadNumber w = i == j ? fp.dims[i] : fp.dims[i] + fp.dims[j];
    long ub = floor_of(fp.dims[i]);
    std::set<QuadNumber> next;
    for (const auto& v : values)
      for (long c = 0; c <= ub; ++c) {
        QuadNumber x = v + QuadNumber(c) * w;
        if (x > fp.global) break;
        next.insert(x);
      }
    values = std::move(next);
  }
  QuadNumber dim_sum(0);
  for (const auto& d : fp.dims) dim_sum += d;
  const double dsum = dim_sum.to_double();
  bool coords = true;
  for (const auto& d : fp.dims) {
    Half h = to_half(d);
    if (h.v < 0 || h.u - h.v < 0) coords = false;
  }
  // group by square class
  std::vector<std::vector<QuadNumber>> classes;
  for (const auto& v : values) {
    bool placed = false;
    for (auto& cls : classes)
      if (field_sqrt(v * cls.front())) {
        cls.push_back(v);
        placed = true;
        break;
      }
    if (!placed) classes.push_back({v});
  }
  const int cap = max_rank.value_or(static_cast<int>(floor_of(fp.global)));
  const Half target = to_half(fp.global);
  std::vector<std::vector<QuadNumber>> out;
  for (const auto& cls : classes) {
    std::vector<Half> hv;
    std::vector<double> root;
    for (const auto& v : cls) {
      hv.push_back(to_half(v));
      root.push_back(std::sqrt(v.to_double()));
    }
    std::vector<int> pick;
    std::function<void(std::size_t, Half, double)> rec = [&](std::size_t start, Half rem, double root_sum) {
      if (rem.u == 0 && rem.v == 0) {
        std::vector<QuadNumber> ms;
        for (int p : pick) ms.push_back(cls[p]);
        // every d_a d_b must be integral
        for (std::size_t x = 0; x < ms.size(); ++x)
          for (std::size_t y = x + 1; y < ms.size(); ++y) {
            if (ms[x] == ms[y]) continue;
            auto w = field_sqrt(ms[x] * ms[y]);
            if (!w || !w->is_integral()) return;
          }
        out.push_back(std::move(ms));
        return;
      }
      if (static_cast<int>(pick.size()) >= cap) return;
      for (std::size_t i = start; i < hv.size(); ++i) {
        Half next{rem.u - hv[i].u, rem.v - hv[i].v};
        if (coords) {
          if (next.v < 0 || next.u - next.v < 0) continue;
        } else if (Z5{next.u, next.v}.sign() < 0) {
          break;
        }
        double sum = root_sum + root[i];
        double dmin = pick.empty() ? root[i] : root[pick.front()];
        if (sum > dmin * dsum + 1e-7) break;
        pick.push_back(static_cast<int>(i));
        rec(i, next, sum);
        pick.pop_back();
      }
    };
    rec(0, target, 0.0);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  return out;
}

std::vector<FusionModule> enumerate_modules(const RingPtr& ring, const EnumerationConfig& config) {
  Report rep = validate_ring(*ring);
  if (!rep) throw Error("ring " + ring->name() + " is invalid: " + rep.message);
  Plan plan = make_plan(ring);
  const int cap = config.max_rank.value_or(static_cast<int>(floor_of(plan.fp.global)));

  std::vector<Task> tasks;
  if (config.dim_prefilter) {
    for (const auto& ms : candidate_dimension_vectors(*ring, cap)) {
      Task t;
      t.rank = static_cast<int>(ms.size());
      t.has_w = true;
      t.W2.resize(ms.size() * ms.size());
      t.class_of.resize(ms.size());
      for (std::size_t a = 0; a < ms.size(); ++a) {
        t.class_of[a] = a == 0 ? 0 : t.class_of[a - 1] + (ms[a] == ms[a - 1] ? 0 : 1);
        for (std::size_t b = 0; b < ms.size(); ++b) {
          QuadNumber w = a == b ? ms[a] : *field_sqrt(ms[a] * ms[b]);
          t.W2[a * ms.size() + b] = detail::twice(w);
        }
      }
      tasks.push_back(std::move(t));
    }
  } else {
    for (int r = 1; r <= cap; ++r) {
      Task t;
      t.rank = r;
      t.class_of.assign(r, 0);
      tasks.push_back(std::move(t));
    }
  }

  int workers = config.worker_count;
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min<int>(workers, std::max<std::size_t>(1, tasks.size()));

  std::vector<std::map<std::vector<int>, FusionModule>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::int64_t> nodes{0};
  std::mutex mu;
  std::int64_t done = 0;
  std::int64_t found = 0;
  std::exception_ptr failure;

  auto work = [&] {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      try {
        TaskSearch search(plan, tasks[k], nodes);
        search.run();
        std::lock_guard<std::mutex> lock(mu);
        results[k] = std::move(search.found);
        ++done;
        found += static_cast<std::int64_t>(results[k].size());
        if (config.progress)
          config.progress({done, static_cast<std::int64_t>(tasks.size()), nodes.load(), found});
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(tasks.size());
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::map<std::pair<int, std::vector<int>>, FusionModule> merged;
  for (auto& res : results)
    for (auto& [code, K] : res) merged.emplace(std::make_pair(K.rank(), code), std::move(K));
  std::vector<FusionModule> out;
  out.reserve(merged.size());
  for (auto& [key, K] : merged) out.push_back(std::move(K));
  return out;
}

}  // namespace fusionmod
