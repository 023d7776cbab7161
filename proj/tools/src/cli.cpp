#include "fusionmod_cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <CLI11.hpp>
#include "json.hpp"

#include "fusionmod/catalog.hpp"
#include "fusionmod/compat.hpp"
#include "fusionmod/dual.hpp"
#include "fusionmod/enumerate.hpp"
#include "fusionmod/error.hpp"
#include "fusionmod/expr.hpp"
#include "fusionmod/io.hpp"
#include "fusionmod/module.hpp"
#include "fusionmod_cli/verify.hpp"

namespace fusionmod::cli {

namespace {

using json = nlohmann::json;

struct UsageError : Error {
  using Error::Error;
};

const char* kWorkersEnv = "FUSIONMOD_WORKERS";

RingPtr resolve_ring(const std::string& spec) {
  if (spec.size() > 5 && spec.ends_with(".json") && std::filesystem::exists(spec)) return load_ring(read_file(spec));
  try {
    return catalog_ring(spec);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

int resolve_workers(const std::optional<int>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError(std::string(kWorkersEnv) + " is not an integer: '" + env + "'");
    }
  }
  return 0;
}

ObjectVector parse_arg(const RingPtr& R, const std::string& src) {
  try {
    return parse_object(R, src);
  } catch (const ParseError& e) {
    throw UsageError("cannot parse '" + src + "': " + e.what());
  }
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// "<index>" into the enumeration, or "<file>[:<index>]"
FusionModule resolve_module(const RingPtr& R, const std::string& spec, int workers) {
  if (all_digits(spec)) {
    EnumerationConfig cfg;
    cfg.worker_count = workers;
    auto mods = enumerate_modules(R, cfg);
    std::size_t t = std::stoul(spec);
    if (t >= mods.size())
      throw UsageError("module index " + spec + " out of range; " + R->name() + " has " + std::to_string(mods.size()) +
                       " modules");
    return mods[t];
  }
  std::string path = spec;
  std::optional<std::size_t> index;
  if (auto colon = spec.rfind(':'); colon != std::string::npos && all_digits(spec.substr(colon + 1))) {
    path = spec.substr(0, colon);
    index = std::stoul(spec.substr(colon + 1));
  }
  if (!std::filesystem::exists(path)) throw UsageError("no such module file '" + path + "'");
  auto mods = load_modules(read_file(path), R);
  if (!index) {
    if (mods.size() != 1) throw UsageError(path + " holds " + std::to_string(mods.size()) + " modules; use FILE:INDEX");
    index = 0;
  }
  if (*index >= mods.size()) throw UsageError("module index out of range in " + path);
  return mods[*index];
}

std::vector<int> parse_subring(const RingPtr& R, const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (all_digits(item)) {
      int i = std::stoi(item);
      if (i >= R->rank()) throw UsageError("subring index " + item + " out of range");
      out.push_back(i);
    } else if (auto l = R->find_label(item)) {
      out.push_back(*l);
    } else {
      throw UsageError("unknown label '" + item + "' in --subring");
    }
  }
  if (out.empty()) throw UsageError("--subring is empty");
  return out;
}

std::string dims_line(const std::vector<QuadNumber>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? " " : "") + dims[i].to_d_string();
  return s;
}

std::string module_dims(const FusionModule& K) {
  DimVector dv = dim_vector(K);
  std::string s;
  for (int a = 0; a < dv.size(); ++a) s += (a ? " " : "") + dv.describe(a);
  return s;
}

std::string algebra_row(const FusionModule& K) {
  std::string s;
  for (const auto& [X, n] : algebra_table(K)) {
    s += " | " + format_object(X);
    if (n > 1) s += " (x" + std::to_string(n) + ")";
  }
  return s;
}

std::vector<std::string> catalog_instances() {
  std::vector<std::string> names;
  for (const auto& n : catalog_names())
    if (n != "VecG(Zn)") names.push_back(n);
  return names;
}

// Catalog rings (or their opposites) isomorphic to R.
std::vector<std::string> identify(const FusionRing& R) {
  std::vector<std::string> out;
  for (const auto& n : catalog_instances()) {
    RingPtr C = catalog_ring(n);
    if (C->rank() != R.rank()) continue;
    if (find_isomorphism(R, *C)) out.push_back(n);
    else if (find_isomorphism(R, opposite_ring(*C))) out.push_back(n + "^op");
  }
  return out;
}

int cmd_ring_list(std::ostream& out) {
  for (const auto& n : catalog_names()) {
    if (n == "VecG(Zn)") {
      out << "VecG(Zn)\tcyclic group rings, e.g. VecG(Z3)\n";
      continue;
    }
    RingPtr R = catalog_ring(n);
    out << n << "\trank " << R->rank() << "\tglobal dim " << fp_dims(*R).global.to_d_string() << "\n";
  }
  return kExitOk;
}

int cmd_ring_show(const std::string& name, bool as_json, std::ostream& out) {
  RingPtr R = resolve_ring(name);
  if (as_json) {
    out << save_ring(*R);
    return kExitOk;
  }
  FpData fp = fp_dims(*R);
  out << "ring " << R->name() << "\nrank " << R->rank() << "\nglobal dim " << fp.global.to_d_string() << "\nhash "
      << ring_hash(*R) << "\n";
  for (int i = 0; i < R->rank(); ++i)
    out << "  " << R->label(i) << "\tdim " << fp.dims[i].to_d_string() << "\tdual " << R->label(R->dual(i)) << "\n";
  for (const auto& [name2, c] : R->shorthands()) out << "shorthand " << name2 << " = " << format_object({R, c}) << "\n";
  for (int i = 0; i < R->rank(); ++i)
    for (int j = 0; j < R->rank(); ++j) {
      std::vector<int> c(R->rank());
      for (int k = 0; k < R->rank(); ++k) c[k] = R->N(i, j, k);
      out << R->label(i) << " * " << R->label(j) << " = " << format_object({R, c}) << "\n";
    }
  return kExitOk;
}

int cmd_ring_check(const std::string& path, std::ostream& out, std::ostream& err) {
  if (!std::filesystem::exists(path)) throw UsageError("no such file '" + path + "'");
  try {
    RingPtr R = load_ring(read_file(path));
    out << "ok " << R->name() << " rank " << R->rank() << " hash " << ring_hash(*R) << "\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "invalid: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

int cmd_enumerate(const std::string& ring, const std::string& out_path, const std::string& format,
                  std::optional<int> max_rank, std::optional<int> workers, std::ostream& out, std::ostream& err) {
  RingPtr R = resolve_ring(ring);
  ModuleFormat fmt;
  try {
    fmt = parse_module_format(format);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  EnumerationConfig cfg;
  cfg.max_rank = max_rank;
  cfg.worker_count = resolve_workers(workers);
  auto mods = enumerate_modules(R, cfg);
  std::string bytes = save_modules(mods, *R, fmt);
  if (out_path.empty()) {
    out << bytes;
  } else {
    write_file(out_path, bytes);
    err << mods.size() << " modules over " << R->name() << " written to " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_algebras(const std::string& ring, const std::string& modules_path, std::optional<int> workers,
                 std::ostream& out) {
  RingPtr R = resolve_ring(ring);
  std::vector<FusionModule> mods;
  if (modules_path.empty()) {
    EnumerationConfig cfg;
    cfg.worker_count = resolve_workers(workers);
    mods = enumerate_modules(R, cfg);
  } else {
    if (!std::filesystem::exists(modules_path)) throw UsageError("no such file '" + modules_path + "'");
    mods = load_modules(read_file(modules_path), R);
  }
  for (std::size_t t = 0; t < mods.size(); ++t) out << t << algebra_row(mods[t]) << "\n";
  return kExitOk;
}

int cmd_dual(const std::string& ring, const std::string& module, std::int64_t budget, bool as_json,
             std::optional<int> workers, std::ostream& out) {
  RingPtr R = resolve_ring(ring);
  FusionModule K = resolve_module(R, module, resolve_workers(workers));
  DualSearchResult res = dual_search(K, budget);
  if (as_json) {
    json j;
    j["module"] = module;
    j["complete"] = res.complete;
    j["nodes"] = res.nodes;
    j["candidates"] = json::array();
    for (const auto& c : res.candidates) {
      json cj;
      cj["ring"] = json::parse(save_ring(*c.ring));
      cj["dims"] = json::array();
      for (const auto& x : c.fp.dims) cj["dims"].push_back(x.to_d_string());
      cj["action"] = c.L;
      cj["isomorphic_to"] = identify(*c.ring);
      j["candidates"].push_back(std::move(cj));
    }
    out << j.dump(1) << "\n";
    return kExitOk;
  }
  out << "module " << module << " over " << R->name() << ", rank " << K.rank() << "\n";
  out << "search " << (res.complete ? "complete" : "stopped at node budget") << ", " << res.nodes << " nodes, "
      << res.candidates.size() << " candidates\n";
  for (std::size_t t = 0; t < res.candidates.size(); ++t) {
    const auto& c = res.candidates[t];
    out << "candidate " << t << ": rank " << c.ring->rank() << ", dims " << dims_line(c.fp.dims) << ", global dim "
        << c.fp.global.to_d_string();
    auto names = identify(*c.ring);
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? ", " : "; isomorphic to ") << names[i];
    out << "\n";
  }
  return kExitOk;
}

int cmd_restrict(const std::string& ring, const std::string& module, const std::string& sub,
                 std::optional<int> workers, std::ostream& out) {
  RingPtr R = resolve_ring(ring);
  std::vector<int> indices = parse_subring(R, sub);
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!is_subring(*R, indices)) throw UsageError("--subring " + sub + " is not a fusion subring of " + R->name());
  FusionModule K = resolve_module(R, module, resolve_workers(workers));
  auto parts = restrict_and_decompose(K, indices);
  out << parts.size() << " components\n";
  for (std::size_t t = 0; t < parts.size(); ++t)
    out << "component " << t << ": rank " << parts[t].rank() << ", dims " << module_dims(parts[t]) << "\n  ends"
        << algebra_row(parts[t]) << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite, bool as_json, const std::string& report_path, std::optional<int> workers,
               std::ostream& out, std::ostream& err) {
  SuiteOptions opt;
  opt.suite = suite;
  try {
    suite_check_ids(suite);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  opt.workers = resolve_workers(workers);
  VerificationReport rep = run_suite(opt);
  if (as_json) {
    out << rep.to_json();
    err << rep.to_table();
  } else {
    out << rep.to_table();
  }
  if (!report_path.empty()) write_file(report_path, rep.to_json());
  return rep.pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fusion rings, fusion modules and dual rings over Q(sqrt5)", "fusionmod"};
  app.require_subcommand(1);

  auto* ring = app.add_subcommand("ring", "Catalog rings and ring files");
  ring->require_subcommand(1);
  ring->add_subcommand("list", "List catalog rings");
  auto* show = ring->add_subcommand("show", "Print a ring");
  std::string ring_name;
  bool show_json = false;
  show->add_option("name", ring_name, "Catalog name or ring JSON file")->required();
  show->add_flag("--json", show_json, "Print the ring JSON");
  auto* check = ring->add_subcommand("check", "Validate a ring JSON file");
  std::string check_path;
  check->add_option("file", check_path)->required();

  std::optional<int> workers;
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", workers, "Worker threads (0 = all cores); default from " + std::string(kWorkersEnv))
        ->check(CLI::NonNegativeNumber);
  };

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate fusion modules");
  std::string enum_ring, enum_out, enum_format = "json";
  std::optional<int> max_rank;
  enumerate->add_option("ring", enum_ring)->required();
  enumerate->add_option("--out", enum_out, "Output file (default stdout)");
  enumerate->add_option("--format", enum_format, "json or text")->check(CLI::IsMember({"json", "text"}));
  enumerate->add_option("--max-rank", max_rank)->check(CLI::PositiveNumber);
  add_workers(enumerate);

  auto* algebras = app.add_subcommand("algebras", "Internal ends of each module");
  std::string alg_ring, alg_modules;
  algebras->add_option("ring", alg_ring)->required();
  algebras->add_option("--modules", alg_modules, "Module file (default: enumerate)");
  add_workers(algebras);

  auto* dual = app.add_subcommand("dual", "Dual ring candidates of a module");
  std::string dual_ring, dual_module;
  std::int64_t budget = kDefaultDualBudget;
  bool dual_json = false;
  dual->add_option("ring", dual_ring)->required();
  dual->add_option("--module", dual_module, "Enumeration index, FILE or FILE:INDEX")->required();
  dual->add_option("--budget", budget, "Search node budget")->check(CLI::PositiveNumber);
  dual->add_flag("--json", dual_json);
  add_workers(dual);

  auto* hom = app.add_subcommand("hom", "Dimension of Hom(X, Y)");
  std::string hom_ring, hom_x, hom_y;
  hom->add_option("ring", hom_ring)->required();
  hom->add_option("X", hom_x)->required();
  hom->add_option("Y", hom_y)->required();

  auto* dim = app.add_subcommand("dim", "Frobenius-Perron dimension of an object");
  std::string dim_ring, dim_x;
  dim->add_option("ring", dim_ring)->required();
  dim->add_option("X", dim_x)->required();

  auto* restrict = app.add_subcommand("restrict", "Restrict a module to a subring");
  std::string res_ring, res_module, res_sub;
  restrict->add_option("ring", res_ring)->required();
  restrict->add_option("--module", res_module, "Enumeration index, FILE or FILE:INDEX")->required();
  restrict->add_option("--subring", res_sub, "Basis indices or labels, comma separated")->required();
  add_workers(restrict);

  auto* verify = app.add_subcommand("verify", "Run the reproduction checks");
  std::string suite = "paper", report_path;
  bool verify_json = false;
  verify->add_option("--suite", suite, "paper or quick");
  verify->add_flag("--json", verify_json, "JSON report on stdout, table on stderr");
  verify->add_option("--report", report_path, "Also write the JSON report to FILE");
  add_workers(verify);

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (ring->parsed()) {
      if (show->parsed()) return cmd_ring_show(ring_name, show_json, out);
      if (check->parsed()) return cmd_ring_check(check_path, out, err);
      return cmd_ring_list(out);
    }
    if (enumerate->parsed()) return cmd_enumerate(enum_ring, enum_out, enum_format, max_rank, workers, out, err);
    if (algebras->parsed()) return cmd_algebras(alg_ring, alg_modules, workers, out);
    if (dual->parsed()) return cmd_dual(dual_ring, dual_module, budget, dual_json, workers, out);
    if (hom->parsed()) {
      RingPtr R = resolve_ring(hom_ring);
      out << hom_dim(parse_arg(R, hom_x), parse_arg(R, hom_y)) << "\n";
      return kExitOk;
    }
    if (dim->parsed()) {
      RingPtr R = resolve_ring(dim_ring);
      out << object_dim(parse_arg(R, dim_x)).to_d_string() << "\n";
      return kExitOk;
    }
    if (restrict->parsed()) return cmd_restrict(res_ring, res_module, res_sub, workers, out);
    if (verify->parsed()) return cmd_verify(suite, verify_json, report_path, workers, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace fusionmod::cli
