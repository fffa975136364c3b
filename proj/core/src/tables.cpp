#include "calcverify/tables.hpp"

#include <unistd.h>

#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace calcverify {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view token, T& value) {
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && end == token.data() + token.size();
}

// Line reader that skips blank lines and tracks 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, buffer_)) {
      ++line_;
      tokens = split_ws(buffer_);
      if (!tokens.empty()) return true;
    }
    if (in_.bad()) throw TableError(TableError::Kind::io, "read error after line " + std::to_string(line_), line_);
    return false;
  }

  int line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::string buffer_;
  int line_ = 0;
};

}  // namespace

void write_tables(std::ostream& out, const RuleSet& rules) {
  char buf[96];
  out << "GAUSSTAB " << kTableFormatVersion << '\n';
  for (const auto& [n, rule] : rules) {
    out << "N " << n << '\n';
    for (int i = 0; i < rule.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", rule.nodes()[static_cast<std::size_t>(i)],
                    rule.weights()[static_cast<std::size_t>(i)]);
      out << buf;
    }
  }
}

RuleSet read_tables(std::istream& in, const std::string& origin) {
  using Kind = TableError::Kind;
  const auto malformed = [&origin](int line, const std::string& what, int n = 0) {
    return TableError(Kind::malformed_line, origin + ":" + std::to_string(line) + ": " + what, line, n);
  };

  LineReader reader(in);
  std::vector<std::string_view> tok;
  if (!reader.next(tok)) throw malformed(reader.line() + 1, "empty file, expected 'GAUSSTAB 1' header");
  if (tok.size() != 2 || tok[0] != "GAUSSTAB") throw malformed(reader.line(), "expected 'GAUSSTAB <version>' header");
  int version = 0;
  if (!parse_number(tok[1], version)) throw malformed(reader.line(), "format version is not an integer");
  if (version != kTableFormatVersion) {
    throw TableError(Kind::version_mismatch,
                     origin + ": format version " + std::to_string(version) + " is not supported (expected " +
                         std::to_string(kTableFormatVersion) + ")",
                     reader.line());
  }

  RuleSet rules;
  while (reader.next(tok)) {
    int n = 0;
    if (tok.size() != 2 || tok[0] != "N" || !parse_number(tok[1], n)) {
      throw malformed(reader.line(), "expected 'N <count>' block header");
    }
    if (n < 1 || n > 4096) throw malformed(reader.line(), "rule size " + std::to_string(n) + " is out of range", n);
    if (rules.contains(n)) throw malformed(reader.line(), "duplicate block for N " + std::to_string(n), n);

    std::vector<double> nodes, weights;
    nodes.reserve(static_cast<std::size_t>(n));
    weights.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (!reader.next(tok)) {
        throw malformed(reader.line() + 1,
                        "unexpected end of file in block N " + std::to_string(n) + " after " + std::to_string(i) +
                            " of " + std::to_string(n) + " rows",
                        n);
      }
      double node = 0.0, weight = 0.0;
      if (tok.size() != 2 || !parse_number(tok[0], node) || !parse_number(tok[1], weight)) {
        throw malformed(reader.line(), "expected '<node> <weight>' in block N " + std::to_string(n), n);
      }
      nodes.push_back(node);
      weights.push_back(weight);
    }

    if (auto violation = QuadratureRule::find_violation(nodes, weights)) {
      throw TableError(Kind::invariant_violation, origin + ": rule N " + std::to_string(n) + ": " + *violation,
                       reader.line(), n);
    }
    rules.emplace(n, QuadratureRule(std::move(nodes), std::move(weights)));
  }
  return rules;
}

void save_tables(const RuleSet& rules, const fs::path& path) {
  static std::atomic<unsigned> counter{0};
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);

  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(tmp.string(), "cannot open for writing");
    write_tables(out, rules);
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError(tmp.string(), "write failed");
    }
  }

  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError(path.string(), "rename failed: " + ec.message());
  }
}

RuleSet load_tables(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw TableError(TableError::Kind::missing_file, path.string() + ": no such file");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableError(TableError::Kind::io, path.string() + ": cannot open for reading");
  return read_tables(in, path.string());
}

fs::path default_cache_path() {
  if (const char* env = std::getenv("CALCVERIFY_CACHE"); env && *env) return fs::path(env);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return fs::path(xdg) / "calcverify" / "gauss_rules.txt";
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return fs::path(home) / ".cache" / "calcverify" / "gauss_rules.txt";
  }
  std::error_code ec;
  return fs::temp_directory_path(ec) / "calcverify_gauss_rules.txt";
}

RuleCache::RuleCache(fs::path path, Builder builder, std::ostream* diagnostics)
    : path_(std::move(path)), builder_(std::move(builder)), diag_(diagnostics ? diagnostics : &std::cerr) {}

QuadratureRule RuleCache::get_or_build(int n) {
  RuleSet rules;
  std::error_code ec;
  if (fs::exists(path_, ec)) {
    try {
      rules = load_tables(path_);
    } catch (const TableError& e) {
      if (e.kind() == TableError::Kind::io) throw IoError(path_.string(), e.what());
      *diag_ << "warning: discarding corrupt rule cache " << path_.string() << " (" << e.what() << ")\n";
      rules.clear();
    }
  }
  if (const auto it = rules.find(n); it != rules.end()) return it->second;

  QuadratureRule rule = builder_(n);
  ++builds_;
  rules.insert_or_assign(n, rule);
  if (path_.has_parent_path()) {
    fs::create_directories(path_.parent_path(), ec);
    if (ec) throw IoError(path_.parent_path().string(), "cannot create cache directory: " + ec.message());
  }
  save_tables(rules, path_);
  return rule;
}

QuadratureRule get_or_build(const fs::path& cache_path, int n) { return RuleCache(cache_path).get_or_build(n); }

}  // namespace calcverify
