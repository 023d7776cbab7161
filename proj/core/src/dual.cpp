#include "fusionmod/dual.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "fusionmod/error.hpp"
#include "search.hpp"

namespace fusionmod {

namespace {

using detail::Z5;

using Row = std::vector<mpq_class>;

// Reduced row echelon form in place over the first `cols` columns; returns pivot columns.
std::vector<int> rref(std::vector<Row>& A, int cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < A.size(); ++c) {
    std::size_t p = row;
    while (p < A.size() && sgn(A[p][c]) == 0) ++p;
    if (p == A.size()) continue;
    std::swap(A[p], A[row]);
    mpq_class inv = 1 / A[row][c];
    for (auto& x : A[row]) x *= inv;
    for (std::size_t q = 0; q < A.size(); ++q) {
      if (q == row || sgn(A[q][c]) == 0) continue;
      mpq_class f = A[q][c];
      for (std::size_t t = c; t < A[q].size(); ++t)
        if (sgn(A[row][t]) != 0) A[q][t] -= f * A[row][t];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

// Rows expressing X M[i] - M[i] X = 0, with a trailing zero column when `affine`.
std::vector<Row> commutation_rows(const FusionModule& K, bool affine) {
  const int r = K.rank();
  const int width = r * r + (affine ? 1 : 0);
  std::vector<Row> rows;
  for (int i = 0; i < K.ring()->rank(); ++i) {
    if (i == K.ring()->unit()) continue;
    for (int a = 0; a < r; ++a)
      for (int c = 0; c < r; ++c) {
        Row row(width, 0);
        bool nonzero = false;
        for (int b = 0; b < r; ++b) {
          int x = K.at(i, b, c);
          if (x) {
            row[a * r + b] += x;
            nonzero = true;
          }
          int y = K.at(i, a, b);
          if (y) {
            row[b * r + c] -= y;
            nonzero = true;
          }
        }
        if (nonzero) rows.push_back(std::move(row));
      }
  }
  return rows;
}

long floor_of(const QuadNumber& x) {
  long k = static_cast<long>(std::floor(x.to_double()));
  while (QuadNumber(k + 1) <= x) ++k;
  while (QuadNumber(k) > x) --k;
  return k;
}

struct BudgetExceeded {};

struct Candidate {
  QuadNumber lam;
  Z5 lam2;
  Z5 conj_sq2;  // 2 lambda'^2
  IntMatrix L;
  int transpose = -1;
  bool indecomposable = true;
};

class DualSearch {
 public:
  DualSearch(const FusionModule& K, std::int64_t budget) : K_(K), r_(K.rank()), budget_(budget) {
    FpData fp = fp_dims(*K.ring());
    gdim_ = fp.global;
    DimVector dv = dim_vector(K, &fp);
    W_.resize(static_cast<std::size_t>(r_) * r_);
    W2_.resize(W_.size());
    for (int a = 0; a < r_; ++a)
      for (int b = 0; b < r_; ++b) {
        W_[a * r_ + b] = dv.product(a, b);
        W2_[a * r_ + b] = detail::twice(W_[a * r_ + b]);
      }
  }

  DualSearchResult run() {
    DualSearchResult res;
    const std::int64_t start = budget_;
    try {
      collect_candidates();
      solve_all(decompositions(true), res.candidates);
      // dual basis elements need not be minimal in the commutant cone
      if (res.candidates.empty()) solve_all(decompositions(false), res.candidates);
    } catch (const BudgetExceeded&) {
      res.complete = false;
    }
    res.nodes = start - std::max<std::int64_t>(budget_, 0);
    return res;
  }

 private:
  void collect_candidates() {
    // lambda = (u + v sqrt5)/2 with |lambda'| <= lambda forces u, v >= 0
    const QuadNumber cap = gdim_ - QuadNumber(1);
    std::vector<QuadNumber> lams;
    for (long v = 0;; ++v) {
      QuadNumber base = QuadNumber::from_halves(v, v);
      if (base * base > cap && v > 0) break;
      for (long u = v % 2 == 0 ? 0 : 1;; u += 2) {
        QuadNumber lam = QuadNumber::from_halves(u, v);
        if (lam * lam > cap) break;
        if (lam >= QuadNumber(1)) lams.push_back(lam);
      }
    }
    std::sort(lams.begin(), lams.end());
    for (const auto& lam : lams) candidates_for(lam);
    std::sort(cands_.begin(), cands_.end(), [](const Candidate& x, const Candidate& y) {
      if (x.lam != y.lam) return x.lam < y.lam;
      return x.L < y.L;
    });
    for (std::size_t c = 0; c < cands_.size(); ++c) {
      IntMatrix T(cands_[c].L.size());
      for (int a = 0; a < r_; ++a)
        for (int b = 0; b < r_; ++b) T[b * r_ + a] = cands_[c].L[a * r_ + b];
      for (std::size_t t = 0; t < cands_.size(); ++t)
        if (cands_[t].lam == cands_[c].lam && cands_[t].L == T) cands_[c].transpose = static_cast<int>(t);
      if (cands_[c].transpose < 0) throw Error("internal: transpose of a dual candidate is missing");
      for (std::size_t a = 0; a < c; ++a) {
        if (!(cands_[a].lam < cands_[c].lam)) continue;
        bool below = true;
        for (std::size_t e = 0; e < T.size() && below; ++e) below = cands_[a].L[e] <= cands_[c].L[e];
        if (below) {
          cands_[c].indecomposable = false;
          break;
        }
      }
    }
  }

  // Nonnegative integer L in the commutant with L d = lambda d, d^T L = lambda d^T and
  // lambda L <= W - I.
  void candidates_for(const QuadNumber& lam) {
    const int rr = r_ * r_;
    const Z5 lam2 = detail::twice(lam);
    if (comm_.empty()) {
      comm_ = commutation_rows(K_, true);
      std::size_t rank = rref(comm_, rr).size();
      comm_.resize(rank);
      if (comm_.empty()) comm_.push_back(Row(rr + 1, 0));
    }
    std::vector<Row> A = comm_;
    // sum_b L_ab 2 W2_ab = lam2 W2_aa, split into rational and sqrt5 parts; likewise columns
    for (int side = 0; side < 2; ++side)
      for (int a = 0; a < r_; ++a) {
        Row p(rr + 1, 0), q(rr + 1, 0);
        for (int b = 0; b < r_; ++b) {
          int e = side == 0 ? a * r_ + b : b * r_ + a;
          p[e] = static_cast<long>(2 * W2_[e].p);
          q[e] = static_cast<long>(2 * W2_[e].q);
        }
        Z5 rhs = lam2 * W2_[a * r_ + a];
        p[rr] = static_cast<long>(rhs.p);
        q[rr] = static_cast<long>(rhs.q);
        A.push_back(std::move(p));
        A.push_back(std::move(q));
      }
    std::vector<int> pivots = rref(A, rr);
    for (std::size_t row = pivots.size(); row < A.size(); ++row)
      if (sgn(A[row][rr]) != 0) return;
    std::vector<int> ub(rr);
    for (int e = 0; e < rr; ++e) {
      QuadNumber room = W_[e] - QuadNumber(e / r_ == e % r_ ? 1 : 0);
      if (room.sign() < 0) return;
      ub[e] = static_cast<int>(std::min(floor_of(room / lam), floor_of(lam)));
    }
    std::vector<char> is_pivot(rr, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<int> free_cols;
    for (int c = rr - 1; c >= 0; --c)
      if (!is_pivot[c]) free_cols.push_back(c);
    std::vector<int> step_of(rr, -1);
    for (std::size_t s = 0; s < free_cols.size(); ++s) step_of[free_cols[s]] = static_cast<int>(s);
    // pivot entry = (rhs - sum coef * x_f) / den
    struct PivotRow {
      int column;
      long long den;
      long long rhs;
      std::vector<std::pair<int, long long>> coefs;  // free column, coefficient
    };
    std::vector<std::vector<PivotRow>> ready(free_cols.size() + 1);
    for (std::size_t row = 0; row < pivots.size(); ++row) {
      mpz_class den = 1;
      for (int c = 0; c <= rr; ++c)
        if (sgn(A[row][c]) != 0) den = lcm(den, A[row][c].get_den());
      PivotRow pr;
      pr.column = pivots[row];
      pr.den = den.get_si();
      mpq_class scaled = A[row][rr] * den;
      pr.rhs = scaled.get_num().get_si();
      int last_step = -1;
      for (int c : free_cols) {
        if (sgn(A[row][c]) == 0) continue;
        mpq_class s = A[row][c] * den;
        pr.coefs.push_back({c, s.get_num().get_si()});
        last_step = std::max(last_step, step_of[c]);
      }
      ready[last_step + 1].push_back(std::move(pr));
    }
    std::vector<int> x(rr, 0);
    auto settle = [&](std::size_t level) {
      for (const auto& pr : ready[level]) {
        long long num = pr.rhs;
        for (const auto& [c, k] : pr.coefs) num -= k * x[c];
        if (num < 0 || num % pr.den != 0) return false;
        long long v = num / pr.den;
        if (v > ub[pr.column]) return false;
        x[pr.column] = static_cast<int>(v);
      }
      return true;
    };
    if (!settle(0)) return;
    std::function<void(std::size_t)> rec = [&](std::size_t s) {
      if (s == free_cols.size()) {
        Candidate cand;
        cand.lam = lam;
        cand.lam2 = lam2;
        cand.conj_sq2 = detail::twice(lam.conj() * lam.conj());
        cand.L = x;
        cands_.push_back(std::move(cand));
        return;
      }
      int c = free_cols[s];
      for (int v = 0; v <= ub[c]; ++v) {
        x[c] = v;
        if (settle(s + 1)) rec(s + 1);
      }
      x[c] = 0;
    };
    rec(0);
  }

  bool is_permutation(const IntMatrix& L) const {
    for (int a = 0; a < r_; ++a) {
      int row = 0, col = 0;
      for (int b = 0; b < r_; ++b) {
        row += L[a * r_ + b];
        col += L[b * r_ + a];
      }
      if (row != 1 || col != 1) return false;
    }
    return true;
  }

  // Invertible dual objects act by permutations forming a group H, each element of H hit
  // equally often. Candidate subgroups as sorted indices of their non-identity elements.
  std::vector<std::vector<int>> permutation_groups() {
    const int rr = r_ * r_;
    IntMatrix I(rr, 0);
    for (int a = 0; a < r_; ++a) I[a * r_ + a] = 1;
    std::map<IntMatrix, int> perm_index;
    for (std::size_t c = 0; c < cands_.size(); ++c)
      if (cands_[c].lam == QuadNumber(1) && cands_[c].L != I && is_permutation(cands_[c].L))
        perm_index[cands_[c].L] = static_cast<int>(c);
    auto close = [&](const std::vector<int>& gens) -> std::optional<std::vector<int>> {
      std::vector<int> group;
      std::vector<char> in(cands_.size(), 0);
      for (int g : gens)
        if (!in[g]) {
          in[g] = 1;
          group.push_back(g);
        }
      for (std::size_t s = 0; s < group.size(); ++s)
        for (std::size_t t = 0; t <= s; ++t)
          for (int rev = 0; rev < 2; ++rev) {
            IntMatrix P = rev ? product(cands_[group[t]].L, cands_[group[s]].L)
                              : product(cands_[group[s]].L, cands_[group[t]].L);
            if (P == I) continue;
            auto it = perm_index.find(P);
            if (it == perm_index.end()) return std::nullopt;
            if (!in[it->second]) {
              in[it->second] = 1;
              group.push_back(it->second);
            }
          }
      std::sort(group.begin(), group.end());
      return group;
    };
    std::vector<std::vector<int>> groups{{}};
    std::set<std::vector<int>> seen{{}};
    for (std::size_t s = 0; s < groups.size(); ++s)
      for (const auto& [L, p] : perm_index) {
        if (std::binary_search(groups[s].begin(), groups[s].end(), p)) continue;
        std::vector<int> gens = groups[s];
        gens.push_back(p);
        auto g = close(gens);
        if (g && seen.insert(*g).second) groups.push_back(*g);
        tick();
      }
    return groups;
  }

  // Multisets of candidates with sum lambda_j L_j = W - I, with invertibles forming a group H
  // and multiplicities constant on orbits under H x H and transposition.
  std::vector<std::vector<int>> decompositions(bool minimal_only) {
    const int rr = r_ * r_;
    IntMatrix I(rr, 0);
    for (int a = 0; a < r_; ++a) I[a * r_ + a] = 1;
    int identity = -1;
    for (std::size_t c = 0; c < cands_.size(); ++c)
      if (cands_[c].L == I) identity = static_cast<int>(c);
    std::map<std::pair<QuadNumber, IntMatrix>, int> index;
    for (std::size_t c = 0; c < cands_.size(); ++c) index[{cands_[c].lam, cands_[c].L}] = static_cast<int>(c);

    const std::vector<std::vector<int>> groups = permutation_groups();

    std::vector<std::vector<int>> out;
    // Galois conjugation preserves sum lambda_j^2 = gdim and every lambda_j'^2 >= 0
    const Z5 total = detail::twice(gdim_.conj()) - Z5{2, 0};
    for (const auto& H : groups) {
      std::vector<IntMatrix> Hm{I};
      for (int h : H) Hm.push_back(cands_[h].L);
      const long long order = static_cast<long long>(Hm.size());

      // orbits of the non-invertible candidates
      std::vector<std::vector<int>> orbits;
      std::vector<char> done(cands_.size(), 0);
      for (std::size_t c = 0; c < cands_.size(); ++c) {
        if (done[c] || cands_[c].lam == QuadNumber(1)) continue;
        if (minimal_only && !cands_[c].indecomposable) continue;
        std::vector<int> orbit{static_cast<int>(c)};
        done[c] = 1;
        bool complete = true;
        for (std::size_t s = 0; s < orbit.size() && complete; ++s) {
          const Candidate& cd = cands_[orbit[s]];
          std::vector<int> images{cd.transpose};
          for (const auto& g : Hm)
            for (const auto& h : Hm) {
              auto it = index.find({cd.lam, product(product(g, cd.L), h)});
              if (it == index.end()) {
                complete = false;
                break;
              }
              images.push_back(it->second);
            }
          for (int y : images)
            if (!done[y]) {
              done[y] = 1;
              orbit.push_back(y);
            }
        }
        if (!complete) continue;
        if (minimal_only)
          for (int y : orbit) complete = complete && cands_[y].indecomposable;
        if (complete) orbits.push_back(std::move(orbit));
      }
      std::vector<std::vector<Z5>> weight(orbits.size(), std::vector<Z5>(rr));
      std::vector<Z5> orbit_cost(orbits.size());
      for (std::size_t o = 0; o < orbits.size(); ++o)
        for (int c : orbits[o]) {
          for (int e = 0; e < rr; ++e)
            if (cands_[c].L[e]) weight[o][e] = weight[o][e] + static_cast<long long>(cands_[c].L[e]) * cands_[c].lam2;
          orbit_cost[o] = orbit_cost[o] + cands_[c].conj_sq2;
        }

      for (long long k = 1; identity >= 0 || k == 1; ++k) {
        Z5 budget = total - Z5{2 * (k * order - 1), 0};
        if (budget.sign() < 0) break;
        std::vector<Z5> R = W2_;
        bool fits = true;
        for (const auto& g : Hm)
          for (int e = 0; e < rr; ++e)
            if (g[e]) R[e] = R[e] - Z5{2 * k, 0};
        for (int e = 0; e < rr && fits; ++e) fits = R[e].sign() >= 0;
        if (!fits) break;
        std::vector<int> base;
        for (long long rep = 0; rep < k; ++rep) {
          base.insert(base.end(), H.begin(), H.end());
          if (rep > 0) base.push_back(identity);
        }

        std::vector<int> mult(orbits.size(), 0);
        std::vector<int> minidx(rr, 0);
        std::function<void()> rec = [&]() {
          tick();
          int e = 0;
          while (e < rr && R[e].sign() == 0) ++e;
          if (e == rr) {
            std::vector<int> ms = base;
            for (std::size_t o = 0; o < orbits.size(); ++o)
              for (int rep = 0; rep < mult[o]; ++rep) ms.insert(ms.end(), orbits[o].begin(), orbits[o].end());
            std::sort(ms.begin(), ms.end());
            out.push_back(std::move(ms));
            return;
          }
          for (int o = minidx[e]; o < static_cast<int>(orbits.size()); ++o) {
            if (weight[o][e].sign() == 0) continue;
            if ((budget - orbit_cost[o]).sign() < 0) continue;
            bool ok = true;
            std::vector<Z5> next = R;
            for (int f = 0; f < rr && ok; ++f) {
              if (weight[o][f].sign() == 0) continue;
              next[f] = next[f] - weight[o][f];
              ok = next[f].sign() >= 0;
            }
            if (!ok) continue;
            std::swap(R, next);
            int saved = minidx[e];
            minidx[e] = o;
            ++mult[o];
            budget = budget - orbit_cost[o];
            rec();
            budget = budget + orbit_cost[o];
            --mult[o];
            minidx[e] = saved;
            std::swap(R, next);
          }
        };
        rec();
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void solve_all(std::vector<std::vector<int>> decomps, std::vector<DualRingCandidate>& out) {
    auto repeats = [](const std::vector<int>& ms) {
      int n = 0;
      for (std::size_t t = 1; t < ms.size(); ++t) n += ms[t] == ms[t - 1];
      return n;
    };
    std::stable_sort(decomps.begin(), decomps.end(),
                     [&](const auto& x, const auto& y) { return repeats(x) < repeats(y); });
    for (const auto& ms : decomps) solve(ms, out);
  }

  static Z5 twice_product(const QuadNumber& x, const QuadNumber& y) { return detail::twice(x * y); }

  IntMatrix product(const IntMatrix& A, const IntMatrix& B) const {
    IntMatrix C(A.size(), 0);
    for (int a = 0; a < r_; ++a)
      for (int c = 0; c < r_; ++c) {
        int x = A[a * r_ + c];
        if (!x) continue;
        for (int b = 0; b < r_; ++b) C[a * r_ + b] += x * B[c * r_ + b];
      }
    return C;
  }

  void solve(std::vector<int> ms, std::vector<DualRingCandidate>& out) {
    Candidate unit;
    unit.lam = QuadNumber(1);
    unit.lam2 = Z5{2, 0};
    unit.L.assign(static_cast<std::size_t>(r_) * r_, 0);
    for (int a = 0; a < r_; ++a) unit.L[a * r_ + a] = 1;
    // invertibles acting trivially first; they pin down the most constants early
    std::stable_partition(ms.begin(), ms.end(), [&](int c) { return cands_[c].L == unit.L; });
    std::vector<const Candidate*> el{&unit};
    for (int c : ms) el.push_back(&cands_[c]);
    const int m = static_cast<int>(el.size());

    // duality: copies of L pair with copies of L^T in order; symmetric classes choose how many 2-cycles
    std::vector<int> dual(m, -1);
    dual[0] = 0;
    std::vector<std::vector<int>> sym_classes;
    std::map<int, std::vector<int>> by_cand;
    for (int j = 1; j < m; ++j) by_cand[ms[j - 1]].push_back(j);
    for (const auto& [c, members] : by_cand) {
      int t = cands_[c].transpose;
      if (t == c) {
        sym_classes.push_back(members);
      } else if (c < t) {
        const auto& partners = by_cand.at(t);
        for (std::size_t q = 0; q < members.size(); ++q) {
          dual[members[q]] = partners[q];
          dual[partners[q]] = members[q];
        }
      }
    }
    std::function<void(std::size_t)> pick = [&](std::size_t s) {
      if (s == sym_classes.size()) {
        structure_search(el, dual, out);
        return;
      }
      const auto& cls = sym_classes[s];
      for (std::size_t pairs = 0; 2 * pairs <= cls.size(); ++pairs) {
        for (std::size_t q = 0; q < cls.size(); ++q) dual[cls[q]] = cls[q];
        for (std::size_t q = 0; q < pairs; ++q) {
          dual[cls[2 * q]] = cls[2 * q + 1];
          dual[cls[2 * q + 1]] = cls[2 * q];
        }
        pick(s + 1);
      }
    };
    pick(0);
  }

  void structure_search(const std::vector<const Candidate*>& el, const std::vector<int>& dual,
                        std::vector<DualRingCandidate>& out) {
    const int m = static_cast<int>(el.size());
    const int rr = r_ * r_;
    std::vector<int> N(static_cast<std::size_t>(m) * m * m, -1);
    std::vector<std::size_t> trail;
    auto idx = [m](int i, int j, int k) { return (static_cast<std::size_t>(i) * m + j) * m + k; };
    // objects not yet mentioned by a non-unit constant; equal-L copies among them are interchangeable
    bool tracking = false;
    std::vector<int> touched(m, 0);
    auto touch = [&](std::size_t t, int delta) {
      touched[t / (static_cast<std::size_t>(m) * m)] += delta;
      touched[(t / m) % m] += delta;
      touched[t % m] += delta;
    };
    std::vector<char> invertible(m, 0);
    for (int l = 0; l < m; ++l) invertible[l] = el[l]->lam == QuadNumber(1);
    // img[x m + y]: the single summand of x y once known, when x or y is invertible
    std::vector<int> img(static_cast<std::size_t>(m) * m, -1);
    auto set_image = [&](std::size_t t, bool on) {
      const std::size_t xy = t / m;
      const int x = static_cast<int>(xy / m), y = static_cast<int>(xy % m);
      if (invertible[x] || invertible[y]) img[xy] = on ? static_cast<int>(t % m) : -1;
    };
    auto assign = [&](int i, int j, int k, int v) {
      int is = dual[i], js = dual[j], ks = dual[k];
      const std::size_t orbit[6] = {idx(i, j, k), idx(k, js, i), idx(is, k, j),
                                    idx(js, is, ks), idx(j, ks, is), idx(ks, i, js)};
      for (std::size_t t : orbit) {
        if (N[t] == -1) {
          N[t] = v;
          trail.push_back(t);
          if (v == 1) set_image(t, true);
          if (tracking) touch(t, 1);
        } else if (N[t] != v) {
          return false;
        }
      }
      return true;
    };
    auto undo = [&](std::size_t mark) {
      while (trail.size() > mark) {
        if (N[trail.back()] == 1) set_image(trail.back(), false);
        N[trail.back()] = -1;
        if (tracking) touch(trail.back(), -1);
        trail.pop_back();
      }
    };
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        if (!assign(0, j, k, j == k ? 1 : 0)) return;
        if (!assign(j, 0, k, j == k ? 1 : 0)) return;
        if (!assign(j, k, 0, k == dual[j] ? 1 : 0)) return;
      }
    tracking = true;
    std::vector<std::pair<int, int>> pairs;
    // grow a square of decided products so associativity among early elements is checked early
    for (int t = 1; t < m; ++t) {
      for (int k = 1; k <= t; ++k) pairs.push_back({t, k});
      for (int j = 1; j < t; ++j) pairs.push_back({j, t});
    }
    std::vector<IntMatrix> prods(static_cast<std::size_t>(m - 1) * (m - 1));
    for (int j = 1; j < m; ++j)
      for (int k = 1; k < m; ++k)
        prods[static_cast<std::size_t>(j - 1) * (m - 1) + (k - 1)] = product(el[j]->L, el[k]->L);

    // (a b) c = a (b c), skipping coordinates that still depend on unknown constants
    auto triple_ok = [&](int a, int b, int c) {
      for (int l = 0; l < m; ++l) {
        long long lhs = 0, rhs = 0;
        bool known = true;
        for (int q = 0; q < m && known; ++q) {
          int x = N[idx(a, b, q)];
          if (x == -1) known = false;
          else if (x) {
            int y = N[idx(q, c, l)];
            if (y == -1) known = false;
            else lhs += static_cast<long long>(x) * y;
          }
          int u = N[idx(b, c, q)];
          if (u == -1) known = false;
          else if (u) {
            int w = N[idx(a, q, l)];
            if (w == -1) known = false;
            else rhs += static_cast<long long>(u) * w;
          }
        }
        if (known && lhs != rhs) return false;
      }
      return true;
    };
    auto assoc_ok = [&](int j, int k) {
      for (int t = 1; t < m; ++t)
        if (!triple_ok(j, k, t) || !triple_ok(t, j, k)) return false;
      return true;
    };

    std::vector<int> inv;
    for (int l = 1; l < m; ++l)
      if (invertible[l]) inv.push_back(l);
    // N(ay, z, al) = N(y, z, l) = N(y, za, la) for invertible a, applied to every constant
    // decided since `mark` and to every constant an image decided since `mark` unlocks
    auto propagate = [&](std::size_t mark) {
      for (std::size_t w = mark; w < trail.size(); ++w) {
        const std::size_t t = trail[w];
        const int v = N[t];
        const int y = static_cast<int>(t / (static_cast<std::size_t>(m) * m));
        const int z = static_cast<int>((t / m) % m);
        const int l = static_cast<int>(t % m);
        for (int a : inv) {
          const int ay = img[a * m + y], al = img[a * m + l];
          if (ay >= 0 && al >= 0 && !assign(ay, z, al, v)) return false;
          const int za = img[z * m + a], la = img[l * m + a];
          if (za >= 0 && la >= 0 && !assign(y, za, la, v)) return false;
        }
        if (v != 1) continue;
        if (invertible[y] && y != 0) {
          // a = y, a z = l
          const int a = y;
          for (int z2 = 1; z2 < m; ++z2)
            for (int l2 = 0; l2 < m; ++l2) {
              const int u = N[idx(z, z2, l2)];
              const int al2 = img[a * m + l2];
              if (u >= 0 && al2 >= 0 && !assign(l, z2, al2, u)) return false;
              const int u2 = N[idx(l2, z2, z)];
              const int al3 = img[a * m + l2];
              if (u2 >= 0 && al3 >= 0 && !assign(al3, z2, l, u2)) return false;
            }
        }
        if (invertible[z] && z != 0) {
          // a = z, y a = l
          const int a = z;
          for (int y2 = 1; y2 < m; ++y2)
            for (int l2 = 0; l2 < m; ++l2) {
              const int u = N[idx(y2, y, l2)];
              const int l2a = img[l2 * m + a];
              if (u >= 0 && l2a >= 0 && !assign(y2, l, l2a, u)) return false;
              const int u2 = N[idx(y2, l2, y)];
              const int l2b = img[l2 * m + a];
              if (u2 >= 0 && l2b >= 0 && !assign(y2, l2b, l, u2)) return false;
            }
        }
      }
      return true;
    };

    // distinct dimensions (twice lambda and twice its conjugate)
    std::vector<std::pair<Z5, Z5>> dims;
    std::vector<int> dim_of(m);
    for (int l = 0; l < m; ++l) {
      std::pair<Z5, Z5> d{el[l]->lam2, detail::twice(el[l]->lam.conj())};
      auto it = std::find(dims.begin(), dims.end(), d);
      dim_of[l] = static_cast<int>(it - dims.begin());
      if (it == dims.end()) dims.push_back(d);
    }
    std::function<bool(std::size_t, Z5, Z5, unsigned)> dims_fit = [&](std::size_t t, Z5 D, Z5 Dc, unsigned mask) {
      if (D.sign() == 0) return Dc == Z5{0, 0};
      if (t == dims.size()) return false;
      if (!(mask >> t & 1u)) return dims_fit(t + 1, D, Dc, mask);
      for (;;) {
        if (dims_fit(t + 1, D, Dc, mask)) return true;
        D = D - dims[t].first;
        Dc = Dc - dims[t].second;
        if (D.sign() < 0) return false;
      }
    };
    // the known part of N(a, b, .) leaves a residual that free summands can still cover
    auto pair_feasible = [&](int a, int b) {
      IntMatrix P = prods[static_cast<std::size_t>(a - 1) * (m - 1) + (b - 1)];
      Z5 D = twice_product(el[a]->lam, el[b]->lam);
      Z5 Dc = twice_product(el[a]->lam.conj(), el[b]->lam.conj());
      std::vector<int> freel;
      for (int l = 0; l < m; ++l) {
        int v = N[idx(a, b, l)];
        if (v == -1) {
          freel.push_back(l);
        } else if (v > 0) {
          for (int e = 0; e < rr; ++e)
            if ((P[e] -= v * el[l]->L[e]) < 0) return false;
          D = D - static_cast<long long>(v) * el[l]->lam2;
          Dc = Dc - static_cast<long long>(v) * detail::twice(el[l]->lam.conj());
        }
      }
      unsigned mask = 0;
      for (int l : freel) {
        bool fits = true;
        for (int e = 0; e < rr && fits; ++e) fits = el[l]->L[e] <= P[e];
        if (fits) mask |= 1u << dim_of[l];
      }
      if (dims.size() > 8 * sizeof(unsigned)) return true;
      return dims_fit(0, D, Dc, mask);
    };
    std::vector<int> stamp(static_cast<std::size_t>(m) * m, -1);
    int stamp_id = 0;
    auto forward_ok = [&](std::size_t mark) {
      ++stamp_id;
      for (std::size_t t = mark; t < trail.size(); ++t) {
        const int a = static_cast<int>(trail[t] / (static_cast<std::size_t>(m) * m));
        const int b = static_cast<int>((trail[t] / m) % m);
        if (a == 0 || b == 0) continue;
        int& st = stamp[static_cast<std::size_t>(a) * m + b];
        if (st == stamp_id) continue;
        st = stamp_id;
        if (!pair_feasible(a, b)) return false;
      }
      return true;
    };

    std::function<void(std::size_t)> rec = [&](std::size_t p) {
      if (p == pairs.size()) {
        emit(el, dual, N, out);
        return;
      }
      const auto [j, k] = pairs[p];
      IntMatrix P = prods[static_cast<std::size_t>(j - 1) * (m - 1) + (k - 1)];
      // twice the dimension still to be covered, and its Galois conjugate
      Z5 dim = twice_product(el[j]->lam, el[k]->lam);
      Z5 dimc = twice_product(el[j]->lam.conj(), el[k]->lam.conj());
      std::vector<int> freel;
      for (int l = 0; l < m; ++l) {
        int v = N[idx(j, k, l)];
        if (v == -1) {
          freel.push_back(l);
          continue;
        }
        if (v == 0) continue;
        dim = dim - static_cast<long long>(v) * el[l]->lam2;
        dimc = dimc - static_cast<long long>(v) * detail::twice(el[l]->lam.conj());
        for (int e = 0; e < rr; ++e) {
          P[e] -= v * el[l]->L[e];
          if (P[e] < 0) return;
        }
      }
      // split the residual over the undecided summands
      std::vector<int> coef(m, 0);
      // prev[l]: an earlier interchangeable copy of l, whose coefficient must stay >= coef[l]
      std::vector<int> prev(m, -1);
      {
        auto fixed = [&](int x) { return touched[x] > 0 || x == j || x == k || x == dual[j] || x == dual[k]; };
        std::map<std::pair<const Candidate*, bool>, int> last;
        for (int l : freel) {
          if (fixed(l) || fixed(dual[l])) continue;
          auto key = std::make_pair(el[l], dual[l] == l);
          auto it = last.find(key);
          if (it != last.end()) prev[l] = it->second;
          last[key] = l;
        }
      }
      std::vector<int> minidx(rr, 0);
      std::function<void()> split = [&]() {
        tick();
        int e = 0;
        while (e < rr && P[e] == 0) ++e;
        if (e == rr) {
          if (dim.sign() != 0 || !(dimc == Z5{0, 0})) return;
          std::size_t mark = trail.size();
          bool ok = true;
          for (int l : freel)
            if (!assign(j, k, l, coef[l])) {
              ok = false;
              break;
            }
          if (ok && !inv.empty()) ok = propagate(mark);
          if (ok && assoc_ok(j, k) && forward_ok(mark)) rec(p + 1);
          undo(mark);
          return;
        }
        for (std::size_t q = minidx[e]; q < freel.size(); ++q) {
          int l = freel[q];
          const IntMatrix& L = el[l]->L;
          if (L[e] == 0) continue;
          if (prev[l] >= 0 && coef[l] + 1 > coef[prev[l]]) continue;
          bool fits = true;
          for (int f = 0; f < rr && fits; ++f) fits = P[f] >= L[f];
          if (!fits) continue;
          if ((dim - el[l]->lam2).sign() < 0) continue;
          for (int f = 0; f < rr; ++f) P[f] -= L[f];
          dim = dim - el[l]->lam2;
          dimc = dimc - detail::twice(el[l]->lam.conj());
          int saved = minidx[e];
          minidx[e] = static_cast<int>(q);
          ++coef[l];
          split();
          --coef[l];
          minidx[e] = saved;
          dim = dim + el[l]->lam2;
          dimc = dimc + detail::twice(el[l]->lam.conj());
          for (int f = 0; f < rr; ++f) P[f] += L[f];
        }
      };
      split();
    };
    rec(0);
  }

  void emit(const std::vector<const Candidate*>& el, const std::vector<int>& dual, const std::vector<int>& N,
            std::vector<DualRingCandidate>& out) {
    const int m = static_cast<int>(el.size());
    std::vector<std::string> labels;
    for (int j = 0; j < m; ++j) labels.push_back("y" + std::to_string(j));
    auto ring = std::make_shared<FusionRing>("dual(" + K_.ring()->name() + ")", labels, 0, dual, N);
    if (!validate_ring(*ring)) return;
    DualRingCandidate cand;
    cand.ring = ring;
    for (const auto* e : el) {
      cand.L.push_back(e->L);
      cand.fp.dims.push_back(e->lam);
      cand.fp.global += e->lam * e->lam;
    }
    for (const auto& prev : out)
      if (equivalent(prev, cand)) return;
    out.push_back(std::move(cand));
  }

  static bool equivalent(const DualRingCandidate& x, const DualRingCandidate& y) {
    const int m = x.ring->rank();
    if (y.ring->rank() != m) return false;
    std::vector<int> p(m, -1);
    std::vector<char> used(m, 0);
    std::function<bool(int)> rec = [&](int j) -> bool {
      if (j == m) return true;
      for (int t = 0; t < m; ++t) {
        if (used[t] || x.L[j] != y.L[t]) continue;
        p[j] = t;
        bool ok = true;
        for (int a = 0; a <= j && ok; ++a)
          for (int b = 0; b <= j && ok; ++b)
            for (int c = 0; c <= j && ok; ++c)
              if (a == j || b == j || c == j) ok = x.ring->N(a, b, c) == y.ring->N(p[a], p[b], p[c]);
        if (ok && x.ring->dual(j) <= j) ok = p[x.ring->dual(j)] == y.ring->dual(t);
        if (!ok) continue;
        used[t] = 1;
        if (rec(j + 1)) return true;
        used[t] = 0;
      }
      p[j] = -1;
      return false;
    };
    return rec(0);
  }

  void tick() {
    if (--budget_ < 0) throw BudgetExceeded{};
  }

  const FusionModule& K_;
  int r_;
  std::int64_t budget_;
  QuadNumber gdim_;
  std::vector<QuadNumber> W_;
  std::vector<Z5> W2_;
  std::vector<Candidate> cands_;
  std::vector<Row> comm_;
};

}  // namespace

std::vector<RationalMatrix> commutant_basis(const FusionModule& K) {
  const int rr = K.rank() * K.rank();
  std::vector<Row> A = commutation_rows(K, false);
  std::vector<int> pivots = rref(A, rr);
  std::vector<char> is_pivot(rr, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<RationalMatrix> basis;
  for (int f = 0; f < rr; ++f) {
    if (is_pivot[f]) continue;
    RationalMatrix X(rr, 0);
    X[f] = 1;
    for (std::size_t row = 0; row < pivots.size(); ++row) X[pivots[row]] = -A[row][f];
    basis.push_back(std::move(X));
  }
  return basis;
}

DualSearchResult dual_search(const FusionModule& K, std::int64_t node_budget) {
  Report rep = validate_module(K);
  if (!rep) throw Error("module is invalid: " + rep.message);
  DualSearch search(K, node_budget);
  return search.run();
}

std::vector<DualRingCandidate> dual_rings(const FusionModule& K, std::int64_t node_budget) {
  DualSearchResult res = dual_search(K, node_budget);
  if (!res.complete)
    throw Error("dual ring search exceeded its node budget (" + std::to_string(node_budget) + " nodes, " +
                std::to_string(res.candidates.size()) + " candidates so far)");
  if (res.candidates.empty()) throw Error("no dual ring found for this module");
  return std::move(res.candidates);
}

}  // namespace fusionmod
