#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fusionmod/ring.hpp"

namespace fusionmod::cli {

struct CheckResult {
  std::string id;
  std::string description;
  std::string expected;
  std::string actual;
  bool pass = false;
  double seconds = 0;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool pass() const;
  int passed() const;
  int failed() const;
  std::string to_json() const;   // schema: {suite, pass, passed, failed, checks:[{id, description, expected, actual, pass, seconds}]}
  std::string to_table() const;
};

struct SuiteOptions {
  std::string suite = "paper";  // "paper" or "quick"
  int workers = 1;
  std::uint64_t seed = 1;
  // Ring lookup; defaults to the catalog. Lets callers substitute a damaged ring.
  std::function<RingPtr(const std::string&)> ring;
  // Called after each check.
  std::function<void(const CheckResult&)> on_check;
};

// Ids of the checks a suite runs, in order.
std::vector<std::string> suite_check_ids(const std::string& suite);

// Throws Error on an unknown suite name.
VerificationReport run_suite(const SuiteOptions& options);

}  // namespace fusionmod::cli
