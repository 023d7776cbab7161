#include "fusionmod/compat.hpp"

#include <cmath>
#include <functional>

#include "fusionmod/error.hpp"

namespace fusionmod {

namespace {

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!a || !b) throw Error("object vector without a ring");
  if (a != b && !(a->same_structure(*b) && a->labels() == b->labels()))
    throw Error("objects live over different rings (" + a->name() + ", " + b->name() + ")");
}

}  // namespace

int hom_dim(const ObjectVector& X, const ObjectVector& Y) {
  require_same_ring(X.ring, Y.ring);
  if (X.coeffs.size() != Y.coeffs.size()) throw Error("object vectors of different length");
  int s = 0;
  for (std::size_t i = 0; i < X.coeffs.size(); ++i) s += X.coeffs[i] * Y.coeffs[i];
  return s;
}

QuadNumber object_dim(const ObjectVector& X, const FpData* fp) {
  if (!X.ring) throw Error("object vector without a ring");
  FpData local;
  if (!fp) {
    local = fp_dims(*X.ring);
    fp = &local;
  }
  if (X.coeffs.size() != fp->dims.size()) throw Error("object vector length does not match the ring");
  QuadNumber s;
  for (std::size_t i = 0; i < X.coeffs.size(); ++i)
    if (X.coeffs[i] != 0) s += QuadNumber(X.coeffs[i]) * fp->dims[i];
  return s;
}

std::vector<CompatMatch> easycomp_filter(const std::vector<FusionModule>& modules, const CompatQuery& q) {
  if (q.n < 1) throw Error("compat query needs n >= 1");
  if (q.s.sign() <= 0) throw Error("compat query needs s > 0");
  std::vector<CompatMatch> out;
  if (modules.empty()) return out;
  const FpData fp = fp_dims(*modules.front().ring());
  const int cmax = static_cast<int>(std::sqrt(static_cast<double>(q.n)) + 1e-9);

  for (std::size_t t = 0; t < modules.size(); ++t) {
    const FusionModule& K = modules[t];
    const DimVector dv = dim_vector(K, &fp);
    const int r = K.rank();
    std::vector<int> c(r, 0);
    // sq = (sum c_a d_a)^2 over the prefix, kept exact through the pairwise products
    std::function<bool(int, int, const QuadNumber&)> dfs = [&](int a, int norm, const QuadNumber& sq) {
      if (a == r) return norm == q.n && sq == q.s;
      for (int v = 0; v <= cmax && norm + v * v <= q.n; ++v) {
        QuadNumber next = sq;
        if (v > 0) {
          QuadNumber cross = QuadNumber(v) * QuadNumber(v) * dv.product(a, a);
          for (int b = 0; b < a; ++b)
            if (c[b] != 0) cross += QuadNumber(2 * v * c[b]) * dv.product(a, b);
          next += cross;
          if (next > q.s) break;
        }
        c[a] = v;
        if (dfs(a + 1, norm + v * v, next)) return true;
      }
      c[a] = 0;
      return false;
    };
    if (dfs(0, 0, QuadNumber())) out.push_back({t, c});
  }
  return out;
}

QuadNumber division_dim(const QuadNumber& dimA, const QuadNumber& dimA0) {
  if (dimA0.is_zero()) throw Error("division by a zero-dimensional algebra");
  return dimA / dimA0;
}

std::vector<std::size_t> modules_with_algebra(const std::vector<FusionModule>& modules, const ObjectVector& X) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < modules.size(); ++t) {
    const FusionModule& K = modules[t];
    require_same_ring(K.ring(), X.ring);
    for (int a = 0; a < K.rank(); ++a)
      if (internal_end(K, a).coeffs == X.coeffs) {
        out.push_back(t);
        break;
      }
  }
  return out;
}

}  // namespace fusionmod
