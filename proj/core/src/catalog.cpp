#include "fusionmod/catalog.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <regex>

#include "fusionmod/error.hpp"

namespace fusionmod {

namespace {

std::size_t at(int n, int i, int j, int k) { return (static_cast<std::size_t>(i) * n + j) * n + k; }

void require_valid(const FusionRing& r) {
  Report rep = validate_ring(r);
  if (!rep.ok) throw Error("catalog ring " + r.name() + " is inconsistent: " + rep.message);
}

std::vector<std::vector<int>> cyclic_table(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

std::vector<std::vector<int>> klein_table() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return t;
}

// Even permutations of {0,1,2,3} in lexicographic order.
std::vector<std::vector<int>> alternating4_table() {
  std::vector<std::array<int, 4>> elems;
  std::array<int, 4> p{0, 1, 2, 3};
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inv += p[i] > p[j];
    if (inv % 2 == 0) elems.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::array<int, 4> c{};
      for (int i = 0; i < 4; ++i) c[i] = elems[a][elems[b][i]];
      t[a][b] = static_cast<int>(std::find(elems.begin(), elems.end(), c) - elems.begin());
    }
  return t;
}

std::vector<std::string> numbered(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

FusionRing rep_a4(const std::string& name, const std::vector<std::string>& labels) {
  // 1, w, w^2, t with w^3 = 1, w t = t w = t, t^2 = 1 + w + w^2 + 2t
  const int n = 4;
  std::vector<int> t(n * n * n, 0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) t[at(n, a, b, (a + b) % 3)] = 1;
  for (int a = 0; a < 3; ++a) {
    t[at(n, a, 3, 3)] = 1;
    t[at(n, 3, a, 3)] = 1;
  }
  t[at(n, 3, 3, 0)] = t[at(n, 3, 3, 1)] = t[at(n, 3, 3, 2)] = 1;
  t[at(n, 3, 3, 3)] = 2;
  return FusionRing(name, labels, 0, {0, 2, 1, 3}, t);
}

RingPtr build(const std::string& name) {
  if (name == "Trivial") {
    return std::make_shared<FusionRing>("Trivial", std::vector<std::string>{"1"}, 0, std::vector<int>{0},
                                        std::vector<int>{1});
  }
  if (name == "Fib") {
    FusionRing base("Trivial", {"1"}, 0, {0}, {1});
    return std::make_shared<FusionRing>(central_extension(base, "Fib", "t", {1}, {1}));
  }
  if (name == "HI-Z2xZ2") {
    auto r = haagerup_izumi_ring(name, {"a0", "a1", "a2", "a3"}, klein_table());
    r.set_shorthand("Gamma", {1, 1, 1, 1, 0, 0, 0, 0});
    return std::make_shared<FusionRing>(std::move(r));
  }
  if (name == "HI-Z4") {
    auto r = haagerup_izumi_ring(name, {"a0", "a1", "a2", "a3"}, cyclic_table(4));
    r.set_shorthand("Pi", {1, 1, 1, 1, 0, 0, 0, 0});
    r.set_shorthand("Phi", {1, 0, 1, 0, 0, 0, 0, 0});
    return std::make_shared<FusionRing>(std::move(r));
  }
  if (name == "RepA4") return std::make_shared<FusionRing>(rep_a4("RepA4", {"1", "w", "w2", "t"}));
  if (name == "4442") {
    FusionRing base = rep_a4("RepA4", {"1", "al", "al2", "b"});
    auto r = central_extension(base, "4442", "x", {1, 0, 0, 0}, {1, 0, 0, 1});
    r.set_shorthand("Lambda", {1, 1, 1, 0, 0, 0, 0, 0});
    return std::make_shared<FusionRing>(std::move(r));
  }
  if (name == "2D2") {
    FusionRing base = group_ring("VecG(Z2)", {"1", "a"}, cyclic_table(2));
    return std::make_shared<FusionRing>(central_extension(base, "2D2", "r", {1, 0}, {2, 2}));
  }
  if (name == "C2") {
    auto hi = catalog_ring("HI-Z2xZ2");
    auto r = crossed_product(*hi, klein_three_cycle(), 3);
    r.set_name("C2");
    r.set_shorthand("Gamma", [&] {
      std::vector<int> c(r.rank(), 0);
      for (int i = 0; i < 4; ++i) c[i] = 1;
      return c;
    }());
    return std::make_shared<FusionRing>(std::move(r));
  }
  if (name == "VecG(A4)") {
    return std::make_shared<FusionRing>(group_ring(name, numbered("g", 12), alternating4_table()));
  }
  if (name == "VecG(Z2xZ2)") {
    return std::make_shared<FusionRing>(group_ring(name, numbered("g", 4), klein_table()));
  }
  static const std::regex kCyclic(R"(VecG\(Z([1-9][0-9]?)\))");
  std::smatch m;
  if (std::regex_match(name, m, kCyclic)) {
    int n = std::stoi(m[1].str());
    return std::make_shared<FusionRing>(group_ring(name, numbered("g", n), cyclic_table(n)));
  }
  return nullptr;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"Trivial", "Fib", "HI-Z2xZ2", "HI-Z4", "4442", "2D2", "RepA4", "C2", "VecG(Zn)", "VecG(Z2xZ2)", "VecG(A4)"};
}

RingPtr catalog_ring(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, RingPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
  }
  RingPtr r = build(name);
  if (!r) {
    std::string list;
    for (const auto& n : catalog_names()) list += (list.empty() ? "" : ", ") + n;
    throw Error("unknown ring '" + name + "'; catalog: " + list);
  }
  require_valid(*r);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(name, r).first->second;
}

FusionRing group_ring(const std::string& name, const std::vector<std::string>& labels,
                      const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  if (static_cast<int>(labels.size()) != n) throw Error("group table and labels differ in size");
  std::vector<int> t(static_cast<std::size_t>(n) * n * n, 0);
  std::vector<int> dual(n, -1);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n) throw Error("group table is not square");
    for (int b = 0; b < n; ++b) {
      int c = table[a][b];
      if (c < 0 || c >= n) throw Error("group table entry out of range");
      t[at(n, a, b, c)] = 1;
      if (c == 0) dual[a] = b;
    }
  }
  for (int a = 0; a < n; ++a)
    if (dual[a] < 0) throw Error("group table has no inverse for " + labels[a]);
  FusionRing r(name, labels, 0, dual, t);
  require_valid(r);
  return r;
}

FusionRing haagerup_izumi_ring(const std::string& name, const std::vector<std::string>& group_labels,
                               const std::vector<std::vector<int>>& add) {
  const int g = static_cast<int>(add.size());
  const int n = 2 * g;
  std::vector<int> neg(g);
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b)
      if (add[a][b] == 0) neg[a] = b;
  auto sub = [&](int a, int b) { return add[a][neg[b]]; };
  // basis: alpha_a (index a), alpha_a rho (index g + a)
  std::vector<std::string> labels(group_labels);
  for (int a = 0; a < g; ++a) labels.push_back(a == 0 ? std::string("r") : group_labels[a] + "r");
  std::vector<int> t(static_cast<std::size_t>(n) * n * n, 0);
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) {
      t[at(n, a, b, add[a][b])] = 1;              // alpha_a alpha_b
      t[at(n, a, g + b, g + add[a][b])] = 1;      // alpha_a (alpha_b rho)
      t[at(n, g + a, b, g + sub(a, b))] = 1;      // (alpha_a rho) alpha_b = alpha_{a-b} rho
      int c = sub(a, b);                          // (alpha_a rho)(alpha_b rho) = alpha_{a-b} rho^2
      t[at(n, g + a, g + b, c)] += 1;
      for (int k = 0; k < g; ++k) t[at(n, g + a, g + b, g + add[c][k])] += 1;
    }
  std::vector<int> dual(n);
  for (int a = 0; a < g; ++a) {
    dual[a] = neg[a];
    dual[g + a] = g + a;
  }
  FusionRing r(name, labels, 0, dual, t);
  require_valid(r);
  return r;
}

FusionRing central_extension(const FusionRing& base, const std::string& name, const std::string& generator,
                             const std::vector<int>& c0, const std::vector<int>& c1) {
  const int m = base.rank();
  const int n = 2 * m;
  std::vector<std::string> labels(base.labels());
  for (int i = 0; i < m; ++i) labels.push_back(i == base.unit() ? generator : base.label(i) + generator);
  std::vector<long long> s0(c0.begin(), c0.end()), s1(c1.begin(), c1.end());
  std::vector<int> t(static_cast<std::size_t>(n) * n * n, 0);
  auto basis = [m](int i) {
    std::vector<long long> v(m, 0);
    v[i] = 1;
    return v;
  };
  // (A + Bx)(C + Dx) = AC + BD c0 + (AD + BC + BD c1) x
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto p = base.multiply(basis(i), basis(j));
      for (int k = 0; k < m; ++k) {
        t[at(n, i, j, k)] = static_cast<int>(p[k]);
        t[at(n, i, m + j, m + k)] = static_cast<int>(p[k]);
        t[at(n, m + i, j, m + k)] = static_cast<int>(p[k]);
      }
      auto q0 = base.multiply(p, s0);
      auto q1 = base.multiply(p, s1);
      for (int k = 0; k < m; ++k) {
        t[at(n, m + i, m + j, k)] = static_cast<int>(q0[k]);
        t[at(n, m + i, m + j, m + k)] = static_cast<int>(q1[k]);
      }
    }
  std::vector<int> dual(n);
  for (int i = 0; i < m; ++i) {
    dual[i] = base.dual(i);
    dual[m + i] = m + base.dual(i);
  }
  FusionRing r(name, labels, base.unit(), dual, t);
  require_valid(r);
  return r;
}

std::vector<int> klein_three_cycle() { return {0, 2, 3, 1, 4, 6, 7, 5}; }

}  // namespace fusionmod
