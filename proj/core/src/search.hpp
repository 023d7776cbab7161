#pragma once

// Internal: bounded depth-first search over nonnegative integer variables.

#include <cstdint>
#include <functional>
#include <vector>

#include "fusionmod/quad.hpp"

namespace fusionmod::detail {

// p + q*sqrt5 with integer coordinates.
struct Z5 {
  long long p = 0;
  long long q = 0;

  friend Z5 operator+(Z5 x, Z5 y) { return {x.p + y.p, x.q + y.q}; }
  friend Z5 operator-(Z5 x, Z5 y) { return {x.p - y.p, x.q - y.q}; }
  friend Z5 operator*(Z5 x, Z5 y) { return {x.p * y.p + 5 * x.q * y.q, x.p * y.q + x.q * y.p}; }
  friend Z5 operator*(long long k, Z5 x) { return {k * x.p, k * x.q}; }
  friend bool operator==(Z5 x, Z5 y) { return x.p == y.p && x.q == y.q; }
  int sign() const;
  double value() const;
};

// 2x as a Z5; x must lie on the half-integer lattice.
Z5 twice(const QuadNumber& x);

struct LinearConstraint {
  std::vector<std::pair<int, Z5>> terms;  // positive coefficients
  Z5 rhs;
  bool equality = false;
};

// sum count * v^2 <= bound
struct SquareBound {
  std::vector<std::pair<int, long long>> terms;
  long long bound = 0;
};

class VarSearch {
 public:
  int add_var(int upper_bound);
  void add_constraint(LinearConstraint c);
  void add_square_bound(SquareBound b);
  // Runs once every variable in deps is set (in variable order).
  void add_check(const std::vector<int>& deps, std::function<bool(const std::vector<int>&)> fn);

  // Calls on_solution for every complete assignment; stops early when it returns false.
  // Returns false if stopped early.
  bool run(const std::function<bool(const std::vector<int>&)>& on_solution, std::int64_t* nodes = nullptr);

  int var_count() const { return static_cast<int>(ub_.size()); }

 private:
  struct Use {
    int constraint;
    Z5 coef;
  };
  struct SqUse {
    int bound;
    long long count;
  };

  bool dfs(int t);

  std::vector<int> ub_;
  std::vector<LinearConstraint> cons_;
  std::vector<SquareBound> sq_;
  std::vector<std::vector<Use>> uses_;
  std::vector<std::vector<SqUse>> sq_uses_;
  std::vector<std::vector<int>> forced_by_;  // equality constraints whose last variable is t
  std::vector<int> last_var_;
  std::vector<std::vector<std::function<bool(const std::vector<int>&)>>> checks_;
  std::vector<std::function<bool(const std::vector<int>&)>> unconditional_;

  std::vector<int> values_;
  std::vector<Z5> partial_;
  std::vector<Z5> maxrem_;  // equality constraints: largest contribution of unset variables
  std::vector<long long> sq_partial_;
  const std::function<bool(const std::vector<int>&)>* on_solution_ = nullptr;
  std::int64_t* nodes_ = nullptr;
};

}  // namespace fusionmod::detail
