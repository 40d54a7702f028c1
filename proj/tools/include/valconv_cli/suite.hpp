#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "valconv/io.hpp"

namespace valconv::cli {

struct SuiteOptions {
  std::uint64_t seed = 1;
  int trials = 20;
  int max_deg = 2;
};

struct PropertyResult {
  std::string name;
  std::string status;  // "pass", "fail" or "skip"
  int trials = 0;
  std::string detail;
  Json counterexample;  // null unless failed
  double seconds = 0;   // wall time, reported only on request
};

struct SuiteReport {
  std::string lie;
  SuiteOptions options;
  std::vector<PropertyResult> properties;  // sorted by name

  int count(const std::string& status) const;
  bool all_pass() const { return count("fail") == 0; }
  Json to_json(bool timing = false) const;
  std::string to_markdown(bool timing = false) const;
};

// Every property check for one Lie algebra; deterministic in (seed, trials, max_deg).
SuiteReport run_suite(const LieAlgebra& lie, const SuiteOptions& options);

// Names of the properties run_suite may report.
std::vector<std::string> suite_property_names();

}  // namespace valconv::cli
