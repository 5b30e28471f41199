#pragma once

#include "catzero/mm_invariants.hpp"
#include "catzero/montecarlo.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace catzero::cli {

/// Exit codes: every check passed / a mathematical check failed / bad usage or input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kToolVersion = "catzero 0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// kExitOk when the bound dominates at every r, else lists the offending r
/// values on `err` and returns kExitCheckFailed.
int report_exit_code(const mc::TailReport& report, std::ostream& err);

/// `start:step:stop` (both ends inclusive, half-step tolerance) or a comma list.
std::vector<double> parse_r_grid(const std::string& spec);

/// CATZERO_SEED when set and numeric, else kDefaultSeed.
std::uint64_t default_seed();

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  std::vector<std::string> failures;  // first few failure descriptions

  void record(bool ok, const std::string& what);
  bool ok() const noexcept { return passed == total; }
};

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t count = 10000;  // random instances for the cat0 and convexity suites
  unsigned workers = 0;
  std::optional<mm::FiniteMMSpace> mm_space;  // extra instance for the invariants suite
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& options);

}  // namespace catzero::cli
