#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nbl/nielsen.hpp"

namespace nbl {

struct VerifyOptions {
  std::vector<std::string> groups;  // empty: the suite's own instances
  std::optional<std::size_t> r;     // largest r to check (suite-specific)
  unsigned threads = 1;
  std::uint64_t seed = 20240607;
  std::size_t samples = 0;          // 0: suite default
  std::chrono::seconds timeout{600};
};

struct SuiteResult {
  std::string suite;
  bool passed = true;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> notes;     // informational lines
  std::vector<std::string> failed;    // first few failure descriptions
  double seconds = 0;

  void expect(bool ok, const std::string& what);
  void note(std::string line) { notes.push_back(std::move(line)); }
};

// braid-relations, orbit-oracle, inner-braids, monoid, twist, clebsch,
// generating-tail, stabilization, hf, lifting, rationality
const std::vector<std::string>& suite_names();

// Runs one suite ("all" is handled by the caller). Throws PreconditionError
// for an unknown name.
SuiteResult run_suite(std::string_view name, const VerifyOptions& options = {});

}  // namespace nbl
