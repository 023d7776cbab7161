#include "search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fusionmod/error.hpp"

namespace fusionmod::detail {

namespace {
const double kSqrt5 = std::sqrt(5.0);
}

int Z5::sign() const {
  if (p >= 0 && q >= 0) return (p > 0 || q > 0) ? 1 : 0;
  if (p <= 0 && q <= 0) return -1;
  __int128 a = static_cast<__int128>(p) * p;
  __int128 b = static_cast<__int128>(q) * q * 5;
  return a > b ? (p > 0 ? 1 : -1) : (q > 0 ? 1 : -1);
}

double Z5::value() const { return static_cast<double>(p) + static_cast<double>(q) * kSqrt5; }

Z5 twice(const QuadNumber& x) {
  auto [u, v] = x.halves();
  if (u.get_den() != 1 || v.get_den() != 1) throw Error("value is not on the half-integer lattice");
  return {u.get_num().get_si(), v.get_num().get_si()};
}

int VarSearch::add_var(int upper_bound) {
  ub_.push_back(upper_bound);
  uses_.emplace_back();
  sq_uses_.emplace_back();
  forced_by_.emplace_back();
  checks_.emplace_back();
  return static_cast<int>(ub_.size()) - 1;
}

void VarSearch::add_constraint(LinearConstraint c) {
  int id = static_cast<int>(cons_.size());
  int last = -1;
  for (const auto& [v, coef] : c.terms) {
    uses_[v].push_back({id, coef});
    last = std::max(last, v);
  }
  last_var_.push_back(last);
  if (c.equality && last >= 0) forced_by_[last].push_back(id);
  cons_.push_back(std::move(c));
}

void VarSearch::add_square_bound(SquareBound b) {
  int id = static_cast<int>(sq_.size());
  for (const auto& [v, count] : b.terms) sq_uses_[v].push_back({id, count});
  sq_.push_back(std::move(b));
}

void VarSearch::add_check(const std::vector<int>& deps, std::function<bool(const std::vector<int>&)> fn) {
  int last = -1;
  for (int v : deps) last = std::max(last, v);
  if (last < 0) {
    unconditional_.push_back(std::move(fn));
  } else {
    checks_[last].push_back(std::move(fn));
  }
}

bool VarSearch::run(const std::function<bool(const std::vector<int>&)>& on_solution, std::int64_t* nodes) {
  values_.assign(ub_.size(), -1);
  partial_.assign(cons_.size(), Z5{});
  maxrem_.assign(cons_.size(), Z5{});
  for (std::size_t c = 0; c < cons_.size(); ++c)
    for (const auto& [v, coef] : cons_[c].terms) maxrem_[c] = maxrem_[c] + static_cast<long long>(ub_[v]) * coef;
  sq_partial_.assign(sq_.size(), 0);
  on_solution_ = &on_solution;
  nodes_ = nodes;
  // constraints without variables must hold outright
  for (std::size_t c = 0; c < cons_.size(); ++c) {
    if (last_var_[c] >= 0) continue;
    int s = cons_[c].rhs.sign();
    if (s < 0 || (cons_[c].equality && s != 0)) return true;
  }
  for (const auto& b : sq_)
    if (b.bound < 0) return true;
  for (const auto& fn : unconditional_)
    if (!fn(values_)) return true;
  return dfs(0);
}

bool VarSearch::dfs(int t) {
  if (nodes_) ++*nodes_;
  if (t == static_cast<int>(ub_.size())) return (*on_solution_)(values_);
  // bounds for this variable
  long long hi = ub_[t];
  long long lo = 0;
  for (const auto& u : uses_[t]) {
    Z5 room = cons_[u.constraint].rhs - partial_[u.constraint];
    double r = room.value() / u.coef.value();
    long long cap = static_cast<long long>(std::floor(r + 1e-9));
    hi = std::min(hi, cap);
  }
  for (const auto& u : sq_uses_[t]) {
    long long room = sq_[u.bound].bound - sq_partial_[u.bound];
    long long cap = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(room) / static_cast<double>(u.count)) + 1e-9));
    hi = std::min(hi, cap);
  }
  // an equality constraint closing at t fixes the value
  for (int c : forced_by_[t]) {
    Z5 room = cons_[c].rhs - partial_[c];
    Z5 coef{};
    for (const auto& u : uses_[t])
      if (u.constraint == c) coef = coef + u.coef;
    double r = room.value() / coef.value();
    long long k = std::llround(r);
    if (k < 0 || !(static_cast<long long>(k) * coef == room)) return true;
    lo = std::max(lo, k);
    hi = std::min(hi, k);
  }
  for (long long v = lo; v <= hi; ++v) {
    values_[t] = static_cast<int>(v);
    bool ok = true;
    for (const auto& u : uses_[t]) {
      partial_[u.constraint] = partial_[u.constraint] + v * u.coef;
      maxrem_[u.constraint] = maxrem_[u.constraint] - static_cast<long long>(ub_[t]) * u.coef;
    }
    for (const auto& u : sq_uses_[t]) sq_partial_[u.bound] += u.count * v * v;
    for (const auto& u : uses_[t]) {
      Z5 room = cons_[u.constraint].rhs - partial_[u.constraint];
      int s = room.sign();
      if (s < 0 || (s != 0 && cons_[u.constraint].equality && last_var_[u.constraint] == t)) {
        ok = false;
        break;
      }
      if (cons_[u.constraint].equality && (maxrem_[u.constraint] - room).sign() < 0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const auto& u : sq_uses_[t])
        if (sq_partial_[u.bound] > sq_[u.bound].bound) {
          ok = false;
          break;
        }
    }
    if (ok) {
      for (const auto& fn : checks_[t])
        if (!fn(values_)) {
          ok = false;
          break;
        }
    }
    bool cont = true;
    if (ok) cont = dfs(t + 1);
    for (const auto& u : uses_[t]) {
      partial_[u.constraint] = partial_[u.constraint] - v * u.coef;
      maxrem_[u.constraint] = maxrem_[u.constraint] + static_cast<long long>(ub_[t]) * u.coef;
    }
    for (const auto& u : sq_uses_[t]) sq_partial_[u.bound] -= u.count * v * v;
    values_[t] = -1;
    if (!cont) return false;
    // the room shrinks as v grows; once negative for any constraint, larger v cannot help
    bool overflow = false;
    for (const auto& u : uses_[t]) {
      Z5 room = cons_[u.constraint].rhs - partial_[u.constraint] - (v + 1) * u.coef;
      if (room.sign() < 0) {
        overflow = true;
        break;
      }
    }
    if (overflow) break;
  }
  return true;
}

}  // namespace fusionmod::detail
