#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "jacsyz/cli.hpp"

using namespace jacsyz;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "jacsyz");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return corpus::fixture(name); }

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
  ~ScopedEnv() { ::unsetenv(name_); }

 private:
  const char* name_;
};

}  // namespace

TEST(Cli, HilbertSeries) {
  const auto r = run({"hilbert", fx("cayley_standard.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1 4 6 4 4 4 4 4 4\n");
  EXPECT_EQ(run({"hilbert", fx("fermat_surface.txt"), "--max-degree", "5"}).out, "1 4 6 4 1 0\n");
}

TEST(Cli, LocalNumbers) {
  const auto r = run({"local", fx("quintic_nonwh.txt"), "--point", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "mu=11 tau=10 WH=no\n");
  EXPECT_EQ(run({"local", fx("cayley_standard.txt"), "--point", "2"}).out, "mu=1 tau=1 WH=yes\n");
  EXPECT_EQ(run({"local", fx("cayley_standard.txt"), "--point", "5"}).code, 1);
}

TEST(Cli, SyzygyListing) {
  const auto r = run({"syzygies", fx("cayley_standard.txt"), "--degree", "2"});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "dim AR(f)_2 = 9");
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    EXPECT_EQ(line.front(), '(');
    EXPECT_EQ(line.back(), ')');
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3);
  }
  EXPECT_EQ(count, 9);
}

TEST(Cli, SplitWithTransversalChart) {
  const auto r = run({"split", fx("cayley_transversal.txt"), "--degree", "2", "--chart", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ar=9 kr=6 er=3 kernel=6 kernel_matches_kr=yes"), std::string::npos);
}

TEST(Cli, SplitRejectsNonTransversalChart) {
  const auto r = run({"split", fx("cayley_standard.txt"), "--degree", "2", "--chart", "0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("transversality check failed for chart x_0"), std::string::npos);
  EXPECT_NE(r.err.find("find_transversal_coordinates"), std::string::npos);
}

TEST(Cli, SplitFallsBackToNewCoordinates) {
  const auto r = run({"split", fx("cayley_standard.txt"), "--degree", "2", "--seed", "9"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("coordinates changed"), std::string::npos);
  EXPECT_NE(r.out.find("ar=9 kr=6 er=3 kernel=6"), std::string::npos);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({"analyze", fx("not_homogeneous.txt")}).code, 1);
  EXPECT_EQ(run({"analyze", fx("not_singular.txt")}).code, 1);
  EXPECT_EQ(run({"analyze", fx("does_not_exist.txt")}).code, 1);
  EXPECT_EQ(run({"analyze", fx("cayley_transversal.txt"), "--m-range", "3..1"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  const auto incomplete = run({"analyze", fx("incomplete_points.txt")});
  EXPECT_EQ(incomplete.code, 1);
  EXPECT_NE(incomplete.err.find("incomplete singular locus"), std::string::npos);
  EXPECT_EQ(run({"analyze", fx("cayley_standard.txt"), "--chart", "1"}).code, 1);
}

TEST(Cli, AuditLineArrangement) {
  const auto r = run({"audit", fx("line_arrangement.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("mu(V)=19"), std::string::npos);
  EXPECT_NE(r.out.find("m=3 (1) 4+"), std::string::npos);
  EXPECT_NE(r.out.find(", 4 <= 9"), std::string::npos);
  const auto q = run({"audit", fx("quintic_nonwh.txt")});
  EXPECT_EQ(q.code, 0);
  EXPECT_NE(q.out.find("not applicable"), std::string::npos);
}

TEST(Cli, AnalyzeJsonShapeAndDeterminism) {
  const std::vector<std::string> args{"analyze", fx("cayley_standard.txt"), "--seed", "17",
                                      "--json", "-"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = Json::parse(a.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"input", "hilbert", "points", "degrees", "split",
                                            "audit", "certificates"}));
  EXPECT_EQ(j["split"]["coordinates"], "transformed");
  EXPECT_EQ(j["input"]["points"][0][0], "1/1");
  EXPECT_TRUE(j["certificates"]["complete"].get<bool>());
  for (const auto& row : j["degrees"]) {
    if (row["m"] == 2) {
      EXPECT_EQ(row["ar"], 9);
      EXPECT_EQ(row["kr"], 6);
      EXPECT_EQ(row["er"], 3);
    }
  }

  std::ifstream schema_file(JACSYZ_SCHEMA_PATH);
  ASSERT_TRUE(schema_file.good());
  const auto schema = Json::parse(schema_file);
  EXPECT_EQ(schema["required"].get<std::vector<std::string>>(), keys);
}

TEST(Cli, QuinticReportsStrictInclusion) {
  const auto r = run({"analyze", fx("quintic_nonwh.txt"), "--json", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_FALSE(j["points"][0]["weighted_homogeneous"].get<bool>());
  EXPECT_EQ(j["split"]["chart"], 2);
  EXPECT_FALSE(j["split"]["strict_inclusion_degrees"].empty());
  EXPECT_FALSE(j["audit"]["applicable"].get<bool>());
}

TEST(Cli, ScanCapFromEnvironment) {
  {
    ScopedEnv env("SYZYGY_MAX_DEGREE", "3");
    const auto j = Json::parse(run({"analyze", fx("line_arrangement.txt"), "--json", "-"}).out);
    ASSERT_EQ(j["degrees"].size(), 4u);
    EXPECT_EQ(j["degrees"][3]["ar"], 4);
    EXPECT_EQ(j["degrees"][3]["er"], 4);
  }
  {
    ScopedEnv env("SYZYGY_MAX_DEGREE", "banana");
    EXPECT_EQ(run({"analyze", fx("line_arrangement.txt")}).code, 1);
  }
}
