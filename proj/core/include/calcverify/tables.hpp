#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>

#include "calcverify/errors.hpp"
#include "calcverify/quadrature.hpp"

namespace calcverify {

inline constexpr int kTableFormatVersion = 1;

/// Rules keyed by point count.
using RuleSet = std::map<int, QuadratureRule>;

/// Failure to read or interpret a rule table file.
class TableError : public Error {
 public:
  enum class Kind { missing_file, io, version_mismatch, malformed_line, invariant_violation };

  TableError(Kind kind, const std::string& what, int line = 0, int rule_size = 0)
      : Error(what), kind_(kind), line_(line), rule_size_(rule_size) {}

  Kind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }            // 1-based, 0 if not line-specific
  int rule_size() const noexcept { return rule_size_; }  // n of the offending block, 0 if none

 private:
  Kind kind_;
  int line_;
  int rule_size_;
};

/// Text format, one file per set:
///
///   GAUSSTAB 1
///   N <n>
///   <node> <weight>      (n lines, 17 significant digits, nodes ascending)
///   N <m>
///   ...
void write_tables(std::ostream& out, const RuleSet& rules);

/// Parses the format above and re-validates every rule. `origin` names the
/// source in error messages.
RuleSet read_tables(std::istream& in, const std::string& origin = "<stream>");

/// Writes to a temporary file next to `path` and renames it into place, so
/// readers never observe a partial file. Throws IoError.
void save_tables(const RuleSet& rules, const std::filesystem::path& path);

/// Throws TableError (missing file, version mismatch, malformed line with its
/// number, or a rule that fails the QuadratureRule invariants).
RuleSet load_tables(const std::filesystem::path& path);

/// CALCVERIFY_CACHE if set, else $XDG_CACHE_HOME/calcverify/gauss_rules.txt,
/// else ~/.cache/calcverify/gauss_rules.txt, else a file in the temp dir.
std::filesystem::path default_cache_path();

/// Cache-aside access to Gauss rules stored in one table file.
///
/// A missing rule is built, added to the file and returned. A corrupt file
/// is reported on the diagnostic stream and replaced.
class RuleCache {
 public:
  using Builder = std::function<QuadratureRule(int)>;

  explicit RuleCache(std::filesystem::path path, Builder builder = gauss_rule, std::ostream* diagnostics = nullptr);

  QuadratureRule get_or_build(int n);

  const std::filesystem::path& path() const noexcept { return path_; }
  int builds() const noexcept { return builds_; }

 private:
  std::filesystem::path path_;
  Builder builder_;
  std::ostream* diag_;
  int builds_ = 0;
};

/// One-shot form of RuleCache::get_or_build using gauss_rule.
QuadratureRule get_or_build(const std::filesystem::path& cache_path, int n);

}  // namespace calcverify
