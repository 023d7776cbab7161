#include <algorithm>
#include <map>

#include "fusionmod/module.hpp"

namespace fusionmod {

namespace {

// Color refinement seeded by internal ends; colors are numbered canonically.
std::vector<int> refined_colors(const FusionModule& K) {
  const int r = K.rank();
  const int n = K.ring()->rank();
  std::vector<std::vector<int>> sig(r);
  for (int a = 0; a < r; ++a) sig[a] = internal_end(K, a).coeffs;
  std::vector<int> color(r);
  int ncolors = 0;
  for (;;) {
    std::map<std::vector<int>, int> ids;
    for (const auto& s : sig) ids.emplace(s, 0);
    int c = 0;
    for (auto& [s, id] : ids) id = c++;
    for (int a = 0; a < r; ++a) color[a] = ids[sig[a]];
    if (c == ncolors) break;
    ncolors = c;
    for (int a = 0; a < r; ++a) {
      std::vector<std::vector<int>> nb;
      for (int b = 0; b < r; ++b) {
        std::vector<int> e{color[b]};
        for (int i = 0; i < n; ++i) {
          e.push_back(K.at(i, a, b));
          e.push_back(K.at(i, b, a));
        }
        nb.push_back(std::move(e));
      }
      std::sort(nb.begin(), nb.end());
      std::vector<int> s{color[a]};
      for (const auto& e : nb) s.insert(s.end(), e.begin(), e.end());
      sig[a] = std::move(s);
    }
  }
  return color;
}

struct Canonizer {
  const FusionModule& K;
  int r, n;
  std::vector<int> slot_color;  // color required at each position
  std::vector<int> color;
  std::vector<int> order, used;
  std::vector<int> cur, best, best_order;
  bool have_best = false;
  long updates = 0;

  void block(int t, int x, std::vector<int>& out) const {
    for (int s = 0; s < t; ++s) {
      int y = order[s];
      for (int i = 0; i < n; ++i) {
        out.push_back(K.at(i, x, y));
        out.push_back(K.at(i, y, x));
      }
    }
    for (int i = 0; i < n; ++i) out.push_back(K.at(i, x, x));
  }

  void dfs(int t, bool tight) {
    if (t == r) {
      if (!have_best || !tight) {
        best = cur;
        best_order = order;
        have_best = true;
        ++updates;
      }
      return;
    }
    for (int x = 0; x < r; ++x) {
      if (used[x] || color[x] != slot_color[t]) continue;
      std::size_t start = cur.size();
      order.push_back(x);
      block(t, x, cur);
      bool child_tight = tight;
      bool prune = false;
      if (have_best && tight) {
        int cmp = 0;
        for (std::size_t e = start; e < cur.size() && cmp == 0; ++e) {
          if (cur[e] < best[e]) cmp = -1;
          if (cur[e] > best[e]) cmp = 1;
        }
        if (cmp > 0) prune = true;
        if (cmp < 0) child_tight = false;
      }
      if (!prune) {
        used[x] = 1;
        long before = updates;
        dfs(t + 1, child_tight);
        used[x] = 0;
        // a new best shares the current prefix
        if (updates != before) tight = true;
      }
      cur.resize(start);
      order.pop_back();
    }
  }
};

Canonizer run_canonizer(const FusionModule& K) {
  Canonizer c{K, K.rank(), K.ring()->rank(), {}, refined_colors(K), {}, std::vector<int>(K.rank(), 0), {}, {}, {}};
  c.slot_color = c.color;
  std::sort(c.slot_color.begin(), c.slot_color.end());
  c.dfs(0, true);
  return c;
}

}  // namespace

std::vector<int> canonical_code(const FusionModule& K) { return run_canonizer(K).best; }

FusionModule canonical_form(const FusionModule& K) {
  Canonizer c = run_canonizer(K);
  std::vector<int> p(K.rank());
  for (int t = 0; t < K.rank(); ++t) p[c.best_order[t]] = t;
  return K.permuted(p);
}

std::optional<std::vector<int>> modules_equivalent(const FusionModule& K, const FusionModule& L) {
  if (K.rank() != L.rank()) return std::nullopt;
  if (!K.ring()->same_structure(*L.ring())) return std::nullopt;
  const int r = K.rank();
  const int n = K.ring()->rank();
  std::vector<std::vector<int>> ek(r), el(r);
  for (int a = 0; a < r; ++a) {
    ek[a] = internal_end(K, a).coeffs;
    el[a] = internal_end(L, a).coeffs;
  }
  {
    auto x = ek, y = el;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return std::nullopt;
  }
  std::vector<int> p(r, -1), used(r, 0), order;
  // breadth-first order keeps each new index adjacent to assigned ones
  {
    std::vector<int> seen(r, 0);
    for (int s = 0; s < r; ++s) {
      if (seen[s]) continue;
      seen[s] = 1;
      order.push_back(s);
      for (std::size_t q = order.size() - 1; q < order.size(); ++q) {
        int a = order[q];
        for (int b = 0; b < r; ++b) {
          if (seen[b]) continue;
          for (int i = 0; i < n; ++i)
            if (K.at(i, a, b)) {
              seen[b] = 1;
              order.push_back(b);
              break;
            }
        }
      }
    }
  }
  std::vector<int> assigned;
  auto fits = [&](int a, int x) {
    if (ek[a] != el[x]) return false;
    for (int b : assigned) {
      int y = p[b];
      for (int i = 0; i < n; ++i)
        if (K.at(i, a, b) != L.at(i, x, y) || K.at(i, b, a) != L.at(i, y, x)) return false;
    }
    return true;
  };
  auto dfs = [&](auto&& self, std::size_t t) -> bool {
    if (t == order.size()) return true;
    int a = order[t];
    for (int x = 0; x < r; ++x) {
      if (used[x] || !fits(a, x)) continue;
      p[a] = x;
      used[x] = 1;
      assigned.push_back(a);
      if (self(self, t + 1)) return true;
      assigned.pop_back();
      used[x] = 0;
      p[a] = -1;
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  return p;
}

}  // namespace fusionmod
