#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace monodromy::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kInvalidInput = 2,  // also budget refusals
  kInvariantViolation = 3,
};

enum class Format { kJson, kTable };

struct RunConfig {
  std::string command;
  std::optional<int> n;
  std::optional<int> k;
  std::optional<int> g;
  std::optional<int> prank;
  std::optional<std::string> mode;
  std::vector<int> q;
  Format format = Format::kJson;
  bool budget_override = false;
  std::optional<std::string> cache;   // after MONODROMY_CACHE is applied
  std::optional<std::string> corpus;
  std::optional<std::string> group;
  std::optional<std::vector<int>> primes;  // --S
  std::optional<std::uint64_t> frobenius_n;  // --n for divisibility
};

int cmd_poly(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_census(const RunConfig& config, std::ostream& out);
int cmd_divisibility(const RunConfig& config, std::ostream& out);

/// Parses `args` (without the program name), dispatches, and maps library
/// exceptions to exit codes. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monodromy::cli
