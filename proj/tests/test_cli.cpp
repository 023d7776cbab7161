#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "fusionmod/catalog.hpp"
#include "fusionmod/io.hpp"
#include "fusionmod/module.hpp"
#include "fusionmod_cli/cli.hpp"
#include "fusionmod_cli/verify.hpp"
#include "json.hpp"
#include "support.hpp"

using json = nlohmann::json;
namespace cli = fusionmod::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fusionmod");
  std::ostringstream out, err;
  int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("fusionmod_cli_" + std::to_string(testsupport::seed()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("hom and dim") {
  auto h = run({"hom", "HI-Z2xZ2", "1+a1*r", "1+a2*r"});
  CHECK(h.code == cli::kExitOk);
  CHECK(h.out == "1\n");
  auto d = run({"dim", "4442", "Lambda*(1+x)"});
  CHECK(d.code == cli::kExitOk);
  CHECK(contains(d.out, "3+3d"));
  CHECK(run({"hom", "HI-Z4", "1+", "r"}).code == cli::kExitUsage);
  CHECK(run({"dim", "HI-Z4", "q"}).code == cli::kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(run({"ring", "show", "nosuch"}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"ring", "list", "--bogus"}).code == cli::kExitUsage);
  CHECK(run({"enumerate", "HI-Z4", "--format", "xml"}).code == cli::kExitUsage);
  CHECK(run({"dual", "HI-Z4", "--module", "99"}).code == cli::kExitUsage);
  CHECK(run({"verify", "--suite", "nosuch"}).code == cli::kExitUsage);
  CHECK(run({"ring", "check", "/nonexistent/ring.json"}).code == cli::kExitUsage);
  auto help = run({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(contains(help.out + help.err, "enumerate"));
}

TEST_CASE("ring subcommands") {
  auto list = run({"ring", "list"});
  CHECK(list.code == cli::kExitOk);
  for (const auto& n : fusionmod::catalog_names()) CHECK(contains(list.out, n));

  auto show = run({"ring", "show", "HI-Z4", "--json"});
  REQUIRE(show.code == cli::kExitOk);
  auto j = json::parse(show.out);
  CHECK(j["name"] == "HI-Z4");

  auto dir = scratch_dir();
  std::string good = (dir / "ring.json").string();
  fusionmod::write_file(good, show.out);
  CHECK(run({"ring", "check", good}).code == cli::kExitOk);
  j["N"][4][4][4] = 2;
  j.erase("hash");
  std::string bad = (dir / "bad.json").string();
  fusionmod::write_file(bad, j.dump());
  CHECK(run({"ring", "check", bad}).code == cli::kExitCheckFailed);
  std::filesystem::remove_all(dir);
}

TEST_CASE("enumerate, algebras, dual, restrict") {
  auto dir = scratch_dir();
  std::string path = (dir / "hiz4.txt").string();
  auto e = run({"enumerate", "HI-Z4", "--format", "text", "--out", path});
  REQUIRE(e.code == cli::kExitOk);
  auto mods = fusionmod::load_modules(fusionmod::read_file(path), testsupport::ring("HI-Z4"));
  CHECK(mods.size() == 12);

  auto stdout_json = run({"enumerate", "HI-Z4", "--format", "json", "--workers", "2"});
  REQUIRE(stdout_json.code == cli::kExitOk);
  CHECK(json::parse(stdout_json.out)["count"] == 12);
  CHECK(stdout_json.out == run({"enumerate", "HI-Z4", "--format", "json", "--workers", "1"}).out);

  auto capped = run({"enumerate", "HI-Z4", "--format", "json", "--max-rank", "4"});
  CHECK(json::parse(capped.out)["count"] == 7);

  auto alg = run({"algebras", "HI-Z4", "--modules", path});
  CHECK(alg.code == cli::kExitOk);
  CHECK(contains(alg.out, "1 + r (x2)"));

  auto dual = run({"dual", "HI-Z4", "--module", path + ":11", "--json"});
  CHECK(dual.code == cli::kExitOk);
  CHECK(json::parse(dual.out).is_object());

  // C2 is too large to enumerate here, so its regular module goes through a file
  auto C2 = testsupport::ring("C2");
  std::string c2path = (dir / "c2.txt").string();
  fusionmod::write_file(c2path, fusionmod::save_modules({fusionmod::regular_module(C2)}, *C2, fusionmod::ModuleFormat::Text));
  auto res = run({"restrict", "C2", "--module", c2path + ":0", "--subring", "a0,a1,a2,a3,r,a1r,a2r,a3r"});
  CHECK(res.code == cli::kExitOk);
  CHECK(contains(res.out, "3 components"));
  CHECK(run({"restrict", "C2", "--module", c2path + ":0", "--subring", "0,4"}).code == cli::kExitUsage);
  std::filesystem::remove_all(dir);
}

TEST_CASE("worker count from the environment") {
  ::setenv("FUSIONMOD_WORKERS", "many", 1);
  CHECK(run({"enumerate", "2D2", "--format", "json"}).code == cli::kExitUsage);
  CHECK(run({"enumerate", "2D2", "--format", "json", "--workers", "1"}).code == cli::kExitOk);
  ::setenv("FUSIONMOD_WORKERS", "2", 1);
  auto a = run({"enumerate", "2D2", "--format", "json"});
  CHECK(a.code == cli::kExitOk);
  ::unsetenv("FUSIONMOD_WORKERS");
  CHECK(a.out == run({"enumerate", "2D2", "--format", "json"}).out);
}

TEST_CASE("suite ids") {
  auto paper = cli::suite_check_ids("paper");
  auto quick = cli::suite_check_ids("quick");
  CHECK(quick.size() < paper.size());
  for (const auto& id : quick) CHECK(std::find(paper.begin(), paper.end(), id) != paper.end());
  for (const char* id : {"A1", "A2", "A3", "A4", "A6", "A7", "A8", "A9", "A10", "A11", "A12"})
    CHECK(std::find(paper.begin(), paper.end(), id) != paper.end());
  CHECK_THROWS(cli::suite_check_ids("nosuch"));
}

TEST_CASE("quick suite passes and reports JSON") {
  auto v = run({"verify", "--suite", "quick", "--json"});
  CHECK(v.code == cli::kExitOk);
  auto j = json::parse(v.out);
  CHECK(j["suite"] == "quick");
  CHECK(j["pass"] == true);
  CHECK(j["failed"] == 0);
  std::vector<std::string> ids;
  for (const auto& c : j["checks"]) {
    ids.push_back(c["id"]);
    for (const char* key : {"description", "expected", "actual", "pass", "seconds"}) CHECK(c.contains(key));
  }
  CHECK(ids == cli::suite_check_ids("quick"));
  CHECK(contains(v.err, "A3"));
}

TEST_CASE("a damaged 4442 ring fails the ring check first") {
  cli::SuiteOptions opt;
  opt.suite = "quick";
  opt.ring = [](const std::string& name) {
    if (name != "4442") return fusionmod::catalog_ring(name);
    fusionmod::FusionRing r = *fusionmod::catalog_ring(name);
    const std::size_t n = r.rank();
    int x = *r.find_label("x");
    r.mutable_tensor()[(x * n + x) * n + x] = 2;
    return fusionmod::RingPtr(std::make_shared<fusionmod::FusionRing>(r));
  };
  auto report = cli::run_suite(opt);
  CHECK_FALSE(report.pass());
  REQUIRE_FALSE(report.checks.empty());
  auto first_fail = std::find_if(report.checks.begin(), report.checks.end(), [](const auto& c) { return !c.pass; });
  REQUIRE(first_fail != report.checks.end());
  CHECK(first_fail->id == "rings");
  CHECK(contains(first_fail->actual, "4442"));
}
