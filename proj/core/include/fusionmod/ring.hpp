#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusionmod/quad.hpp"

namespace fusionmod {

// Outcome of a structural check. `kind` names the violated identity.
struct Report {
  bool ok = true;
  std::string kind;
  std::string message;

  static Report pass() { return {}; }
  static Report fail(std::string kind, std::string message) {
    return {false, std::move(kind), std::move(message)};
  }
  explicit operator bool() const { return ok; }
};

// Finite abelian group Z/f1 x ... x Z/fm (f1 | f2 | ... | fm) and a degree map.
struct Grading {
  std::vector<int> factors;
  std::vector<std::vector<int>> degree;  // one element per basis index

  int order() const;
  std::vector<int> identity() const { return std::vector<int>(factors.size(), 0); }
  std::vector<int> add(const std::vector<int>& x, const std::vector<int>& y) const;
  std::vector<int> negate(const std::vector<int>& x) const;
};

class FusionRing {
 public:
  FusionRing(std::string name, std::vector<std::string> labels, int unit, std::vector<int> dual,
             std::vector<int> tensor);

  const std::string& name() const { return name_; }
  int rank() const { return rank_; }
  int unit() const { return unit_; }
  int dual(int i) const { return dual_[i]; }
  const std::vector<int>& duals() const { return dual_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }
  std::optional<int> find_label(std::string_view label) const;

  int N(int i, int j, int k) const { return tensor_[(static_cast<std::size_t>(i) * rank_ + j) * rank_ + k]; }
  const std::vector<int>& tensor() const { return tensor_; }
  std::vector<int>& mutable_tensor() { return tensor_; }

  // Product of two coefficient vectors.
  std::vector<long long> multiply(const std::vector<long long>& x, const std::vector<long long>& y) const;
  bool is_commutative() const;

  // Named objects such as Gamma = a0+a1+a2+a3.
  const std::map<std::string, std::vector<int>>& shorthands() const { return shorthands_; }
  void set_shorthand(const std::string& name, std::vector<int> coeffs);
  const std::optional<Grading>& grading() const { return grading_; }
  void set_grading(Grading g) { grading_ = std::move(g); }
  void set_name(std::string name) { name_ = std::move(name); }

  // Same rank, unit, duality and structure constants (labels and name ignored).
  bool same_structure(const FusionRing& other) const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  int rank_;
  int unit_;
  std::vector<int> dual_;
  std::vector<int> tensor_;
  std::map<std::string, std::vector<int>> shorthands_;
  std::optional<Grading> grading_;
};

using RingPtr = std::shared_ptr<const FusionRing>;

// Nonnegative integer combination of basis elements of a ring.
struct ObjectVector {
  RingPtr ring;
  std::vector<int> coeffs;

  bool is_self_dual() const;
  // unit coefficient 1 and self-dual
  bool is_algebra_candidate() const;
  friend bool operator==(const ObjectVector& x, const ObjectVector& y) { return x.coeffs == y.coeffs; }
};

struct FpData {
  std::vector<QuadNumber> dims;
  QuadNumber global;
};

Report validate_ring(const FusionRing& ring);

// Throws Error naming the first basis index whose dimension is not recognized in Q(sqrt5).
FpData fp_dims(const FusionRing& ring);

// Ring with basis x_i g^k, (x_i g^k)(x_j g^l) = x_i theta^k(x_j) g^(k+l mod n), carrying the Z/n grading.
FusionRing crossed_product(const FusionRing& ring, const std::vector<int>& theta, int n);

// Bijection p with N'[p i][p j][p k] = N[i][j][k], or none.
std::optional<std::vector<int>> find_isomorphism(const FusionRing& r, const FusionRing& s);
std::vector<std::vector<int>> automorphisms(const FusionRing& ring);

// Ring with reversed multiplication.
FusionRing opposite_ring(const FusionRing& ring);

bool is_subring(const FusionRing& ring, const std::vector<int>& indices);
// Restriction to sorted `indices`; throws Error if they do not span a subring.
FusionRing subring(const FusionRing& ring, std::vector<int> indices);

// Throws Error when `trivial` is not a subring.
std::optional<Grading> grading_from_subring(const FusionRing& ring, const std::vector<int>& trivial);

}  // namespace fusionmod
