#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "superlap/config.hpp"
#include "superlap/io.hpp"

namespace superlap {

struct SuiteResult {
  std::string name;
  bool passed = false;
  io::Json measured = io::Json::object();
  std::string note;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;

  bool all_passed() const;
  io::Json to_json() const;
};

/// Runs the invariant suites on the operator described by `config`. The
/// result depends only on the config and the seed.
VerifyReport run_verify(const RunConfig& config, std::uint64_t seed);

}  // namespace superlap
