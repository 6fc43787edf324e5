#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vislab/errors.hpp"

namespace vislab::cli {

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitHypothesis = 3,
  kExitDegenerate = 4,
  kExitBoxTooLarge = 5,
};

enum class OutputFormat { Table, Csv, Json };

struct RunConfig {
  std::string command;  // count, visible, irred, badset, zeros, exp-a, exp-p, sweep, replay
  std::string polynomial;
  std::optional<std::uint32_t> p;
  std::optional<std::int64_t> a;
  std::optional<double> X, Y, T;
  std::vector<double> deltas;
  std::vector<std::uint32_t> primes;  // sweep over level averages
  std::vector<double> T_values;       // sweep over prime averages
  OutputFormat format = OutputFormat::Table;
  std::string out_path;  // empty: stdout
  unsigned workers = 1;
  std::string strategy = "auto";
  std::string from_csv;
};

/// Validated configuration.  Throws UsageError naming the offending flag or value.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes the command; diagnostics go to `err`, results to `out` or the --out file.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with error-to-exit-code mapping.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vislab::cli
