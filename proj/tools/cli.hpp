#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace calcverify::cli {

enum class OutputMode { plain, json };

/// Process exit statuses shared by every subcommand.
enum ExitStatus : int {
  kExitOk = 0,       // success, or the check passed
  kExitFailed = 1,   // check failed, no convergence, numeric breakdown
  kExitUsage = 2,    // bad arguments, parse error, domain error
};

struct CliConfig {
  std::filesystem::path cache_path;  // empty: default_cache_path()
  int n = 20;
  double h = 1e-4;
  double tol_abs = 1e-6;
  double tol_rel = 1e-6;
  OutputMode mode = OutputMode::plain;
};

/// Runs one command line. `args` excludes the program name. Normal output
/// goes to `out`; warnings and plain-mode errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace calcverify::cli
