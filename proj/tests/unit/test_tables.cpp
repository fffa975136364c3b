#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "calcverify/tables.hpp"

namespace cv = calcverify;
namespace fs = std::filesystem;

namespace {

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("calcverify_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path file(const std::string& name) const { return dir_ / name; }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

  template <typename F>
  static cv::TableError table_error(F&& f) {
    try {
      f();
    } catch (const cv::TableError& e) {
      return e;
    }
    ADD_FAILURE() << "expected TableError";
    return cv::TableError(cv::TableError::Kind::io, "none");
  }

  fs::path dir_;
};

cv::RuleSet rules_up_to(int n) {
  cv::RuleSet rules;
  for (int k = 1; k <= n; ++k) rules.emplace(k, cv::gauss_rule(k));
  return rules;
}

}  // namespace

using Tables = TempDir;

TEST_F(Tables, OnePointRuleText) {
  const auto path = file("one.txt");
  cv::save_tables({{1, cv::gauss_rule(1)}}, path);
  EXPECT_EQ(slurp(path), "GAUSSTAB 1\nN 1\n0 2\n");
}

TEST_F(Tables, ThreePointWeights) {
  const auto path = file("three.txt");
  cv::save_tables({{3, cv::gauss_rule(3)}}, path);
  const auto back = cv::load_tables(path).at(3);
  EXPECT_NEAR(back.weights()[0], 5.0 / 9.0, 1e-16);
  EXPECT_NEAR(back.weights()[1], 8.0 / 9.0, 1e-16);
  EXPECT_NEAR(back.weights()[2], 5.0 / 9.0, 1e-16);
}

TEST_F(Tables, RoundTripIsBitExact) {
  const auto rules = rules_up_to(cv::kMaxRuleSize);
  const auto path = file("all.txt");
  cv::save_tables(rules, path);
  const auto back = cv::load_tables(path);
  ASSERT_EQ(back.size(), rules.size());
  for (const auto& [n, rule] : rules) {
    const auto& loaded = back.at(n);
    ASSERT_EQ(loaded.size(), n);
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(loaded.nodes()[i], rule.nodes()[i]) << "n=" << n << " i=" << i;
      EXPECT_EQ(loaded.weights()[i], rule.weights()[i]) << "n=" << n << " i=" << i;
    }
  }
  EXPECT_EQ(back, rules);
}

TEST_F(Tables, StreamRoundTrip) {
  std::stringstream ss;
  cv::write_tables(ss, rules_up_to(5));
  EXPECT_EQ(cv::read_tables(ss), rules_up_to(5));
}

TEST_F(Tables, SaveLeavesNoTemporaryFiles) {
  const auto path = file("rules.txt");
  cv::save_tables(rules_up_to(3), path);
  cv::save_tables(rules_up_to(4), path);
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir_)) ++entries;
  EXPECT_EQ(entries, 1);
  EXPECT_EQ(cv::load_tables(path).size(), 4u);
}

TEST_F(Tables, SaveToUnwritablePath) {
  EXPECT_THROW(cv::save_tables(rules_up_to(1), file("missing_dir") / "x.txt"), cv::IoError);
}

TEST_F(Tables, MissingFile) {
  const auto e = table_error([&] { cv::load_tables(file("nope.txt")); });
  EXPECT_EQ(e.kind(), cv::TableError::Kind::missing_file);
}

TEST_F(Tables, VersionMismatch) {
  spit(file("v2.txt"), "GAUSSTAB 2\nN 1\n0 2\n");
  const auto e = table_error([&] { cv::load_tables(file("v2.txt")); });
  EXPECT_EQ(e.kind(), cv::TableError::Kind::version_mismatch);
}

TEST_F(Tables, WeightSumThreeNamesRuleSize) {
  spit(file("bad.txt"), "GAUSSTAB 1\nN 2\n-0.5 1.5\n0.5 1.5\n");
  const auto e = table_error([&] { cv::load_tables(file("bad.txt")); });
  EXPECT_EQ(e.kind(), cv::TableError::Kind::invariant_violation);
  EXPECT_EQ(e.rule_size(), 2);
  EXPECT_NE(std::string(e.what()).find("N 2"), std::string::npos) << e.what();
  EXPECT_NE(std::string(e.what()).find("sum"), std::string::npos) << e.what();
}

TEST_F(Tables, AsymmetricRuleRejected) {
  spit(file("asym.txt"), "GAUSSTAB 1\nN 2\n-0.5 1.25\n0.5 0.75\n");
  const auto e = table_error([&] { cv::load_tables(file("asym.txt")); });
  EXPECT_EQ(e.kind(), cv::TableError::Kind::invariant_violation);
}

TEST_F(Tables, TruncatedFileReportsLine) {
  std::stringstream ss;
  cv::write_tables(ss, rules_up_to(4));
  std::string text = ss.str();
  // Drop the last two rows of the N 4 block (lines 14 and 15 of 15).
  for (int i = 0; i < 2; ++i) text.erase(text.rfind('\n', text.size() - 2) + 1);
  spit(file("cut.txt"), text);
  const auto e = table_error([&] { cv::load_tables(file("cut.txt")); });
  EXPECT_EQ(e.kind(), cv::TableError::Kind::malformed_line);
  EXPECT_EQ(e.line(), 14);
  EXPECT_EQ(e.rule_size(), 4);
  EXPECT_NE(std::string(e.what()).find(":14:"), std::string::npos) << e.what();
}

TEST_F(Tables, MalformedLines) {
  const auto kind_line = [&](const std::string& text) {
    spit(file("m.txt"), text);
    const auto e = table_error([&] { cv::load_tables(file("m.txt")); });
    EXPECT_EQ(e.kind(), cv::TableError::Kind::malformed_line) << text;
    return e.line();
  };
  EXPECT_EQ(kind_line(""), 1);
  EXPECT_EQ(kind_line("HELLO 1\n"), 1);
  EXPECT_EQ(kind_line("GAUSSTAB 1\nM 1\n0 2\n"), 2);
  EXPECT_EQ(kind_line("GAUSSTAB 1\nN 1\n0 two\n"), 3);
  EXPECT_EQ(kind_line("GAUSSTAB 1\nN 1\n0 2 3\n"), 3);
  EXPECT_EQ(kind_line("GAUSSTAB 1\nN 0\n"), 2);
  EXPECT_EQ(kind_line("GAUSSTAB 1\nN 1\n0 2\nN 1\n0 2\n"), 4);
}

TEST_F(Tables, EmptySetAndBlankLines) {
  spit(file("e.txt"), "GAUSSTAB 1\n");
  EXPECT_TRUE(cv::load_tables(file("e.txt")).empty());
  spit(file("b.txt"), "\nGAUSSTAB 1\n\nN 1\n\n0 2\r\n");
  EXPECT_EQ(cv::load_tables(file("b.txt")).at(1), cv::gauss_rule(1));
}

TEST_F(Tables, CacheColdWarmCorrupt) {
  const auto path = file("cache") / "rules.txt";
  int builds = 0;
  const auto counting = [&builds](int n) {
    ++builds;
    return cv::gauss_rule(n);
  };
  std::stringstream diag;

  cv::RuleCache cold(path, counting, &diag);
  EXPECT_EQ(cold.get_or_build(3), cv::gauss_rule(3));
  EXPECT_EQ(cold.builds(), 1);
  EXPECT_TRUE(fs::exists(path));

  cv::RuleCache warm(path, counting, &diag);
  EXPECT_EQ(warm.get_or_build(3), cv::gauss_rule(3));
  EXPECT_EQ(warm.builds(), 0);
  EXPECT_EQ(builds, 1);
  EXPECT_TRUE(diag.str().empty());

  // Adding a second size keeps the first.
  EXPECT_EQ(warm.get_or_build(5), cv::gauss_rule(5));
  EXPECT_EQ(cv::load_tables(path).size(), 2u);

  spit(path, "GAUSSTAB 1\nN 2\ngarbage\n");
  cv::RuleCache corrupt(path, counting, &diag);
  EXPECT_EQ(corrupt.get_or_build(2), cv::gauss_rule(2));
  EXPECT_EQ(corrupt.builds(), 1);
  EXPECT_NE(diag.str().find("warning"), std::string::npos);
  const auto rebuilt = cv::load_tables(path);
  ASSERT_EQ(rebuilt.size(), 1u);
  EXPECT_EQ(rebuilt.at(2), cv::gauss_rule(2));
}

TEST_F(Tables, CacheIdempotence) {
  const auto path = file("idem.txt");
  cv::RuleCache cache(path);
  for (int n : {1, 7, 64}) {
    const auto first = cache.get_or_build(n);
    const auto second = cache.get_or_build(n);
    EXPECT_EQ(first, second);
  }
  EXPECT_EQ(cache.builds(), 3);
  EXPECT_EQ(cv::get_or_build(path, 7), cv::gauss_rule(7));
  EXPECT_THROW(cache.get_or_build(65), cv::CapabilityError);
}

TEST_F(Tables, DefaultCachePathHonoursEnvironment) {
  const auto save = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    return v ? std::optional<std::string>(v) : std::nullopt;
  };
  const auto restore = [](const char* name, const std::optional<std::string>& v) {
    if (v) ::setenv(name, v->c_str(), 1);
    else ::unsetenv(name);
  };
  const auto saved_cache = save("CALCVERIFY_CACHE");
  const auto saved_xdg = save("XDG_CACHE_HOME");
  ::setenv("CALCVERIFY_CACHE", file("env.txt").c_str(), 1);
  EXPECT_EQ(cv::default_cache_path(), file("env.txt"));
  ::unsetenv("CALCVERIFY_CACHE");
  ::setenv("XDG_CACHE_HOME", dir_.c_str(), 1);
  EXPECT_EQ(cv::default_cache_path(), dir_ / "calcverify" / "gauss_rules.txt");
  restore("CALCVERIFY_CACHE", saved_cache);
  restore("XDG_CACHE_HOME", saved_xdg);
}
