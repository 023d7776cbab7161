#include "fusionmod_cli/verify.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "fusionmod/catalog.hpp"
#include "fusionmod/compat.hpp"
#include "fusionmod/dual.hpp"
#include "fusionmod/enumerate.hpp"
#include "fusionmod/error.hpp"
#include "fusionmod/expr.hpp"
#include "fusionmod/io.hpp"
#include "fusionmod/module.hpp"
#include "fusionmod_cli/fixtures.hpp"

namespace fusionmod::cli {

namespace {

using json = nlohmann::json;

// Node budget for the row-19 dual; enough to reach the C2 candidate, not to finish the search.
constexpr std::int64_t kCrossedDualBudget = 50000;

QuadNumber d() { return QuadNumber::d(); }

std::string dims_string(std::vector<QuadNumber> v) {
  std::sort(v.begin(), v.end());
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_d_string();
  return s + "}";
}

std::string list_string(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

class Context {
 public:
  explicit Context(const SuiteOptions& o) : opt_(o), rng_(o.seed) {}

  RingPtr ring(const std::string& name) {
    auto it = rings_.find(name);
    if (it != rings_.end()) return it->second;
    RingPtr R = opt_.ring ? opt_.ring(name) : catalog_ring(name);
    if (Report rep = validate_ring(*R); !rep) throw Error("ring " + name + " fails validation: " + rep.message);
    return rings_.emplace(name, R).first->second;
  }

  const std::vector<FusionModule>& modules(const std::string& name) {
    auto it = mods_.find(name);
    if (it != mods_.end()) return it->second;
    EnumerationConfig cfg;
    cfg.worker_count = opt_.workers;
    return mods_.emplace(name, enumerate_modules(ring(name), cfg)).first->second;
  }

  FusionModule figure_module(const std::string& fig, const std::string& row) {
    const FigureFixture& f = figure_fixture(fig);
    const auto& mods = modules(f.ring);
    long t = find_fixture_module(f, row, mods);
    if (t < 0) throw Error("no unique module matches " + fig + " row " + row);
    return mods[t];
  }

  // The dual of z4algs row 9 with dims {1, 1, d-1, d, d, d+1}.
  std::optional<DualRingCandidate> p2() {
    if (!p2_done_) {
      p2_done_ = true;
      const std::vector<QuadNumber> want = sorted({1, 1, d() - 1, d(), d(), d() + 1});
      for (auto& c : dual_search(figure_module("z4algs", "9")).candidates)
        if (sorted(c.fp.dims) == want) {
          p2_ = std::move(c);
          break;
        }
    }
    return p2_;
  }

  std::mt19937_64& rng() { return rng_; }
  const SuiteOptions& options() const { return opt_; }

  static std::vector<QuadNumber> sorted(std::vector<QuadNumber> v) {
    std::sort(v.begin(), v.end());
    return v;
  }

 private:
  const SuiteOptions& opt_;
  std::mt19937_64 rng_;
  std::map<std::string, RingPtr> rings_;
  std::map<std::string, std::vector<FusionModule>> mods_;
  bool p2_done_ = false;
  std::optional<DualRingCandidate> p2_;
};

struct Check {
  std::string id;
  std::string description;
  bool quick;
  std::function<void(Context&, CheckResult&)> run;
};

void count_check(Context& ctx, CheckResult& r, const std::string& ring, std::size_t want) {
  r.expected = std::to_string(want);
  r.actual = std::to_string(ctx.modules(ring).size());
  r.pass = ctx.modules(ring).size() == want;
}

void figure_check(Context& ctx, CheckResult& r, const std::string& fig) {
  const FigureFixture& f = figure_fixture(fig);
  const auto& mods = ctx.modules(f.ring);
  auto matches = match_fixture(f, mods);
  std::set<long> chosen;
  std::size_t unique = 0, relabeled = 0;
  std::string missing;
  for (const auto& m : matches) {
    if (m.chosen >= 0) {
      ++unique;
      chosen.insert(m.chosen);
      if (m.exact.empty()) ++relabeled;
    } else {
      missing += (missing.empty() ? "" : " ") + m.id + "(exact " + std::to_string(m.exact.size()) + ", relabeled " +
                 std::to_string(m.relabeled.size()) + ")";
    }
  }
  r.expected = std::to_string(f.rows.size()) + " rows each matching one distinct module of " +
               std::to_string(f.rows.size());
  r.actual = std::to_string(unique) + " rows matched, " + std::to_string(chosen.size()) + " distinct modules of " +
             std::to_string(mods.size());
  if (relabeled) r.actual += ", " + std::to_string(relabeled) + " via ring automorphism";
  if (!missing.empty()) r.actual += "; unmatched: " + missing;
  r.pass = unique == f.rows.size() && chosen.size() == f.rows.size() && mods.size() == f.rows.size();
}

std::vector<Check> all_checks() {
  std::vector<Check> checks;
  checks.push_back({"rings", "catalog rings used by the suite validate", true, [](Context& ctx, CheckResult& r) {
                      std::vector<std::string> names{"HI-Z2xZ2", "4442", "HI-Z4", "2D2", "C2"};
                      r.expected = "all valid";
                      std::string bad;
                      for (const auto& n : names) {
                        try {
                          ctx.ring(n);
                        } catch (const Error& e) {
                          bad += (bad.empty() ? "" : "; ") + std::string(e.what());
                        }
                      }
                      r.actual = bad.empty() ? "all valid" : bad;
                      r.pass = bad.empty();
                    }});
  checks.push_back({"A1", "fusion modules over HI-Z2xZ2", false,
                    [](Context& ctx, CheckResult& r) { count_check(ctx, r, "HI-Z2xZ2", 50); }});
  checks.push_back({"A2", "fusion modules over 4442", false,
                    [](Context& ctx, CheckResult& r) { count_check(ctx, r, "4442", 19); }});
  checks.push_back({"A3", "fusion modules over HI-Z4", true,
                    [](Context& ctx, CheckResult& r) { count_check(ctx, r, "HI-Z4", 12); }});
  checks.push_back({"A4", "fusion modules over 2D2", true,
                    [](Context& ctx, CheckResult& r) { count_check(ctx, r, "2D2", 7); }});
  checks.push_back({"A5.calgs", "algebra tables of the HI-Z2xZ2 modules", false,
                    [](Context& ctx, CheckResult& r) { figure_check(ctx, r, "calgs"); }});
  checks.push_back({"A5.c1algs", "algebra tables of the 4442 modules", false,
                    [](Context& ctx, CheckResult& r) { figure_check(ctx, r, "c1algs"); }});
  checks.push_back({"A5.z4algs", "algebra tables of the HI-Z4 modules", true,
                    [](Context& ctx, CheckResult& r) { figure_check(ctx, r, "z4algs"); }});
  checks.push_back({"A6", "dual of z4algs row 9 has dims 1, 1, d, d, d-1, d+1", true,
                    [](Context& ctx, CheckResult& r) {
                      r.expected = dims_string({1, 1, d() - 1, d(), d(), d() + 1});
                      auto c = ctx.p2();
                      r.actual = c ? dims_string(c->fp.dims) : "no such candidate";
                      r.pass = c.has_value();
                    }});
  checks.push_back({"A7", "no module over that dual has an end of dimension 4+16d", false,
                    [](Context& ctx, CheckResult& r) {
                      const QuadNumber bad = (1 + d()) * (1 + 3 * d());
                      r.expected = "no end of dimension " + bad.to_d_string();
                      auto c = ctx.p2();
                      if (!c) {
                        r.actual = "dual ring missing";
                        return;
                      }
                      auto mods = enumerate_modules(c->ring);
                      FpData fp = fp_dims(*c->ring);
                      std::size_t hits = 0;
                      for (const auto& K : mods)
                        for (const auto& sq : dim_vector(K, &fp).squares) hits += sq == bad;
                      r.actual = std::to_string(mods.size()) + " modules, " + std::to_string(hits) +
                                 " ends of dimension " + bad.to_d_string();
                      r.pass = !mods.empty() && hits == 0;
                    }});
  checks.push_back({"A8", "2D2 dual with dims 1, (d-1)/2 x2, (d+1)/2 x2, d has 3 modules", true,
                    [](Context& ctx, CheckResult& r) {
                      const QuadNumber half(mpq_class(1, 2), 0);
                      const std::vector<QuadNumber> want =
                          Context::sorted({1, (d() - 1) * half, (d() - 1) * half, (d() + 1) * half, (d() + 1) * half, d()});
                      r.expected = dims_string(want) + "; 3 modules; extra one has dims {-1+d, 1+d}";
                      RingPtr R = ctx.ring("2D2");
                      FpData fp = fp_dims(*R);
                      for (const auto& K : ctx.modules("2D2")) {
                        bool has = false;
                        for (const auto& [X, n] : algebra_table(K, &fp)) has |= object_dim(X, &fp) == d() + 1;
                        if (!has) continue;
                        for (const auto& c : dual_search(K).candidates) {
                          if (Context::sorted(c.fp.dims) != want) continue;
                          FusionModule graph(c.ring, K.rank(), c.L);
                          FusionModule regular = regular_module(c.ring);
                          auto mods = enumerate_modules(c.ring);
                          FpData cfp = fp_dims(*c.ring);
                          std::vector<std::string> others;
                          bool extra_ok = false;
                          for (const auto& M : mods) {
                            if (modules_equivalent(M, regular) || modules_equivalent(M, graph)) continue;
                            DimVector dv = dim_vector(M, &cfp);
                            std::vector<QuadNumber> vals;
                            std::string desc = "{";
                            for (int a = 0; a < dv.size(); ++a) {
                              desc += (a ? ", " : "") + dv.describe(a);
                              if (auto v = dv.value(a)) vals.push_back(*v);
                            }
                            others.push_back(desc + "}");
                            extra_ok = M.rank() == 2 && vals.size() == 2 &&
                                       Context::sorted(vals) == Context::sorted({d() - 1, d() + 1});
                          }
                          r.actual = dims_string(c.fp.dims) + "; " + std::to_string(mods.size()) + " modules; extra";
                          for (const auto& o : others) r.actual += " " + o;
                          r.pass = mods.size() == 3 && others.size() == 1 && extra_ok;
                          return;
                        }
                      }
                      r.actual = "no dual candidate with these dims";
                    }});
  checks.push_back({"A9", "dual of c1algs row 17 is isomorphic to 4442", true, [](Context& ctx, CheckResult& r) {
                      r.expected = "a candidate isomorphic to 4442";
                      auto res = dual_search(ctx.figure_module("c1algs", "17"));
                      RingPtr R = ctx.ring("4442");
                      std::size_t iso = 0;
                      for (const auto& c : res.candidates) iso += find_isomorphism(*c.ring, *R).has_value();
                      r.actual = std::to_string(res.candidates.size()) + " candidates, " + std::to_string(iso) +
                                 " isomorphic to 4442" + (res.complete ? "" : " (search incomplete)");
                      r.pass = iso > 0;
                    }});
  checks.push_back({"A10", "dual of c1algs row 19 is the crossed product of HI-Z2xZ2", false,
                    [](Context& ctx, CheckResult& r) {
                      r.expected = "a candidate isomorphic to crossed_product(HI-Z2xZ2, theta, 3)";
                      FusionRing C = crossed_product(*ctx.ring("HI-Z2xZ2"), klein_three_cycle(), 3);
                      auto res = dual_search(ctx.figure_module("c1algs", "19"), kCrossedDualBudget);
                      std::size_t iso = 0;
                      for (const auto& c : res.candidates)
                        iso += c.ring->rank() == C.rank() && find_isomorphism(*c.ring, C).has_value();
                      r.actual = std::to_string(res.candidates.size()) + " candidates, " + std::to_string(iso) +
                                 " isomorphic; search " +
                                 (res.complete ? "complete" : "stopped at " + std::to_string(res.nodes) + " nodes");
                      r.pass = iso > 0;
                    }});
  checks.push_back({"A11", "hom and dimension fixtures", true, [](Context& ctx, CheckResult& r) {
                      RingPtr hi = ctx.ring("HI-Z2xZ2"), c1 = ctx.ring("4442"), c2 = ctx.ring("C2");
                      std::vector<std::string> bad;
                      for (int g = 0; g < 4; ++g)
                        for (int h = 0; h < 4; ++h) {
                          if (g == h) continue;
                          std::string x = "1+a" + std::to_string(g) + "*r", y = "1+a" + std::to_string(h) + "*r";
                          if (hom_dim(parse_object(hi, x), parse_object(hi, y)) != 1) bad.push_back("(" + x + "," + y + ")");
                        }
                      auto hom = [](const RingPtr& R, const char* x, const char* y) {
                        return hom_dim(parse_object(R, x), parse_object(R, y));
                      };
                      if (hom(c1, "Lambda*(1+x)", "1+x") != 2) bad.push_back("(Lambda(1+x),1+x)");
                      if (hom(c1, "Lambda+b*x", "1+x") != 1) bad.push_back("(Lambda+bx,1+x)");
                      if (hom(c2, "Gamma", "Gamma") != 4) bad.push_back("(Gamma,Gamma) in C2");
                      QuadNumber q1 = division_dim(object_dim(parse_object(hi, "Gamma*(1+3*r)")), object_dim(parse_object(hi, "Gamma")));
                      QuadNumber q2 = division_dim(object_dim(parse_object(c1, "Lambda*(1+x)")), object_dim(parse_object(c1, "Lambda")));
                      if (q1 != 1 + 3 * d()) bad.push_back("(4+12d)/4 = " + q1.to_d_string());
                      if (q2 != 1 + d()) bad.push_back("(3+3d)/3 = " + q2.to_d_string());
                      r.expected = "all 17 fixtures hold";
                      r.actual = bad.empty() ? "all 17 fixtures hold" : "failed:";
                      for (const auto& b : bad) r.actual += " " + b;
                      r.pass = bad.empty();
                    }});
  checks.push_back({"A12", "easycomp queries over the 4442 modules", false, [](Context& ctx, CheckResult& r) {
                      const auto& mods = ctx.modules("4442");
                      const FigureFixture& f = figure_fixture("c1algs");
                      long m18 = find_fixture_module(f, "18", mods), m19 = find_fixture_module(f, "19", mods);
                      const QuadNumber s = (1 + d()) * (1 + d());
                      auto pick = [&](const QuadNumber& target) {
                        std::vector<std::size_t> out;
                        for (const auto& m : easycomp_filter(mods, {target, 2})) out.push_back(m.index);
                        return out;
                      };
                      auto a = pick(s), b = pick(3 * s);
                      r.expected = "(1+d)^2 -> " + list_string({static_cast<std::size_t>(m18)}) + ", 3(1+d)^2 -> " +
                                   list_string({static_cast<std::size_t>(m19)});
                      r.actual = "(1+d)^2 -> " + list_string(a) + ", 3(1+d)^2 -> " + list_string(b);
                      r.pass = m18 >= 0 && m19 >= 0 && a == std::vector<std::size_t>{static_cast<std::size_t>(m18)} &&
                               b == std::vector<std::size_t>{static_cast<std::size_t>(m19)};
                    }});

  auto property_rings = [](Context& ctx) {
    std::vector<std::string> names{"HI-Z4", "2D2"};
    if (ctx.options().suite != "quick") names = {"HI-Z2xZ2", "4442", "HI-Z4", "2D2"};
    return names;
  };
  auto catalog_instances = [] {
    std::vector<std::string> names;
    for (auto n : catalog_names()) names.push_back(n == "VecG(Zn)" ? "VecG(Z3)" : n);
    names.push_back("VecG(Z5)");
    return names;
  };
  checks.push_back({"A13.ring-axioms", "catalog rings validate", true, [catalog_instances](Context&, CheckResult& r) {
                      std::string bad;
                      auto names = catalog_instances();
                      for (const auto& n : names)
                        if (Report rep = validate_ring(*catalog_ring(n)); !rep) bad += " " + n + ": " + rep.message;
                      r.expected = std::to_string(names.size()) + " valid";
                      r.actual = bad.empty() ? r.expected : "invalid:" + bad;
                      r.pass = bad.empty();
                    }});
  checks.push_back({"A13.fp-hom", "FP dimensions are a ring homomorphism", true, [catalog_instances](Context&, CheckResult& r) {
                      std::size_t identities = 0;
                      std::string bad;
                      for (const auto& n : catalog_instances()) {
                        RingPtr R = catalog_ring(n);
                        FpData fp = fp_dims(*R);
                        for (int i = 0; i < R->rank(); ++i)
                          for (int j = 0; j < R->rank(); ++j) {
                            QuadNumber s = 0;
                            for (int k = 0; k < R->rank(); ++k) s += R->N(i, j, k) * fp.dims[k];
                            ++identities;
                            if (s != fp.dims[i] * fp.dims[j]) bad += " " + n;
                          }
                      }
                      r.expected = "all identities exact";
                      r.actual = bad.empty() ? std::to_string(identities) + " identities exact" : "failed:" + bad;
                      r.pass = bad.empty();
                    }});
  checks.push_back({"A13.module-axioms", "module axioms, dimensions and ends of every enumerated module", true,
                    [property_rings](Context& ctx, CheckResult& r) {
                      std::size_t count = 0;
                      std::string bad;
                      for (const auto& name : property_rings(ctx)) {
                        FpData fp = fp_dims(*ctx.ring(name));
                        const auto& mods = ctx.modules(name);
                        for (std::size_t t = 0; t < mods.size(); ++t) {
                          const FusionModule& K = mods[t];
                          std::string where = " " + name + "#" + std::to_string(t);
                          ++count;
                          if (Report rep = validate_module(K); !rep) bad += where + " axioms";
                          DimVector dv = dim_vector(K, &fp);
                          QuadNumber total = 0;
                          for (const auto& sq : dv.squares) total += sq;
                          if (total != fp.global) bad += where + " sum d_a^2";
                          for (int a = 0; a < K.rank(); ++a) {
                            ObjectVector E = internal_end(K, a);
                            if (E.coeffs[K.ring()->unit()] != 1 || !E.is_self_dual()) bad += where + " end";
                            if (object_dim(E, &fp) != dv.squares[a]) bad += where + " end dim";
                          }
                        }
                      }
                      r.expected = "every module passes";
                      r.actual = bad.empty() ? std::to_string(count) + " modules pass" : "failed:" + bad;
                      r.pass = bad.empty();
                    }});
  checks.push_back({"A13.workers", "enumeration identical across worker counts", true,
                    [](Context& ctx, CheckResult& r) {
                      std::vector<std::string> names{"HI-Z4", "2D2"};
                      if (ctx.options().suite != "quick") names.push_back("4442");
                      std::string bad;
                      for (const auto& n : names) {
                        EnumerationConfig one, many;
                        one.worker_count = 1;
                        many.worker_count = 3;
                        if (enumerate_modules(ctx.ring(n), one) != enumerate_modules(ctx.ring(n), many)) bad += " " + n;
                      }
                      r.expected = "identical for 1 and 3 workers";
                      r.actual = bad.empty() ? r.expected : "differs:" + bad;
                      r.pass = bad.empty();
                    }});
  checks.push_back({"A13.io", "ring and module files round-trip", true, [property_rings](Context& ctx, CheckResult& r) {
                      std::string bad;
                      for (const auto& name : property_rings(ctx)) {
                        RingPtr R = ctx.ring(name);
                        RingPtr back = load_ring(save_ring(*R));
                        if (!back->same_structure(*R) || back->labels() != R->labels()) bad += " ring " + name;
                        const auto& mods = ctx.modules(name);
                        for (auto fmt : {ModuleFormat::Json, ModuleFormat::Text}) {
                          std::string bytes = save_modules(mods, *R, fmt);
                          if (load_modules(bytes, R, fmt) != mods || save_modules(load_modules(bytes, R), *R, fmt) != bytes)
                            bad += " modules " + name + (fmt == ModuleFormat::Json ? " json" : " text");
                        }
                      }
                      r.expected = "identical after save and load";
                      r.actual = bad.empty() ? r.expected : "differs:" + bad;
                      r.pass = bad.empty();
                    }});
  checks.push_back({"A13.expr", "format_object and parse_object round-trip on random vectors", true,
                    [catalog_instances](Context& ctx, CheckResult& r) {
                      std::size_t trials = 0;
                      std::string bad;
                      std::uniform_int_distribution<int> coef(0, 3), zero(0, 2);
                      for (const auto& n : catalog_instances()) {
                        RingPtr R = catalog_ring(n);
                        for (int s = 0; s < 50; ++s) {
                          ObjectVector X{R, std::vector<int>(R->rank(), 0)};
                          for (auto& c : X.coeffs) c = zero(ctx.rng()) ? 0 : coef(ctx.rng());
                          ++trials;
                          if (parse_object(R, format_object(X)) != X) bad += " " + format_object(X);
                        }
                      }
                      r.expected = "all round-trip";
                      r.actual = bad.empty() ? std::to_string(trials) + " round-trip" : "failed:" + bad;
                      r.pass = bad.empty();
                    }});
  checks.push_back({"A13.crossed-gdim", "crossed product global dimension 12+12d^2", true,
                    [](Context& ctx, CheckResult& r) {
                      QuadNumber base = fp_dims(*ctx.ring("HI-Z2xZ2")).global;
                      QuadNumber g = fp_dims(crossed_product(*ctx.ring("HI-Z2xZ2"), klein_three_cycle(), 3)).global;
                      r.expected = (12 + 12 * d() * d()).to_d_string();
                      r.actual = g.to_d_string() + " (3 x " + base.to_d_string() + ")";
                      r.pass = g == 12 + 12 * d() * d() && g == 3 * base;
                    }});
  checks.push_back({"A13.restrict", "regular C2 module restricted to its trivial component", true,
                    [](Context& ctx, CheckResult& r) {
                      RingPtr C = ctx.ring("C2"), hi = ctx.ring("HI-Z2xZ2");
                      std::vector<int> trivial;
                      for (int i = 0; i < C->rank(); ++i)
                        if (!C->grading() || C->grading()->degree[i] == C->grading()->identity()) trivial.push_back(i);
                      auto parts = restrict_and_decompose(regular_module(C), trivial);
                      FusionModule reg = regular_module(hi);
                      std::size_t regular = 0;
                      for (const auto& P : parts) regular += modules_equivalent(P, reg).has_value();
                      r.expected = "3 components, all the regular HI-Z2xZ2 module";
                      r.actual = std::to_string(parts.size()) + " components, " + std::to_string(regular) + " regular";
                      r.pass = parts.size() == 3 && regular == 3;
                    }});
  return checks;
}

}  // namespace

bool VerificationReport::pass() const { return failed() == 0; }

int VerificationReport::passed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.pass; }));
}

int VerificationReport::failed() const { return static_cast<int>(checks.size()) - passed(); }

std::string VerificationReport::to_json() const {
  json j;
  j["suite"] = suite;
  j["pass"] = pass();
  j["passed"] = passed();
  j["failed"] = failed();
  j["checks"] = json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"id", c.id},
                           {"description", c.description},
                           {"expected", c.expected},
                           {"actual", c.actual},
                           {"pass", c.pass},
                           {"seconds", c.seconds}});
  return j.dump(2) + "\n";
}

std::string VerificationReport::to_table() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(18) << c.id << std::right << std::fixed
       << std::setprecision(2) << std::setw(8) << c.seconds << "s  " << c.description << "\n";
    os << "     expected: " << c.expected << "\n";
    os << "     actual:   " << c.actual << "\n";
  }
  os << suite << ": " << passed() << " passed, " << failed() << " failed\n";
  return os.str();
}

std::vector<std::string> suite_check_ids(const std::string& suite) {
  if (suite != "paper" && suite != "quick") throw Error("unknown suite '" + suite + "' (paper, quick)");
  std::vector<std::string> ids;
  for (const auto& c : all_checks())
    if (suite == "paper" || c.quick) ids.push_back(c.id);
  return ids;
}

VerificationReport run_suite(const SuiteOptions& options) {
  suite_check_ids(options.suite);
  VerificationReport report;
  report.suite = options.suite;
  Context ctx(options);
  for (const auto& c : all_checks()) {
    if (options.suite == "quick" && !c.quick) continue;
    CheckResult r;
    r.id = c.id;
    r.description = c.description;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(ctx, r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.actual = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (options.on_check) options.on_check(r);
    report.checks.push_back(std::move(r));
  }
  return report;
}

}  // namespace fusionmod::cli
