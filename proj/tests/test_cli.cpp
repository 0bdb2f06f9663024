#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = hyperlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(HYPERLAB_SOURCE_DIR) + "/samples/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hyperlab_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST(Cli, DiffOfSquareIsExact) {
  Outcome r = cli({"diff", "--expr", "x^2", "--at", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "6\n");
  EXPECT_EQ(r.err, "");
}

TEST(Cli, OmegaPlusOne) {
  Outcome r = cli({"ultra", "compare", "--seq-a", "n+1", "--seq-b", "n"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Greater\n");
}

TEST(Cli, UsageErrorsExitTwo) {
  Outcome r = cli({"saw", "--teeth", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--teeth"), std::string::npos);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"diff", "--at", "1"}).code, 2);
  Outcome unknown = cli({"diff", "--expr", "x", "--at", "1", "--bogus"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("--bogus"), std::string::npos);
  EXPECT_EQ(cli({"--series-window", "3", "diff", "--expr", "x", "--at", "1"}).code, 2);
  EXPECT_EQ(cli({"--approx-digits", "10", "diff", "--expr", "x", "--at", "1"}).code, 2);
  EXPECT_EQ(cli({"limit", "--expr", "x", "--at", "0", "--side", "left"}).code, 2);
}

TEST(Cli, DomainErrorsExitThreeWithName) {
  Outcome pole = cli({"diff", "--expr", "1/x", "--at", "0"});
  EXPECT_EQ(pole.code, 3);
  EXPECT_EQ(pole.err.rfind("error: NotDifferentiableHere", 0), 0u);
  Outcome syntax = cli({"diff", "--expr", "x +", "--at", "0"});
  EXPECT_EQ(syntax.code, 3);
  EXPECT_NE(syntax.err.find("SyntaxError"), std::string::npos);
  EXPECT_NE(syntax.err.find("offset 3"), std::string::npos);
  Outcome rf = cli({"eval", "--expr", "sin(x)", "--backend", "ratfunc"});
  EXPECT_EQ(rf.code, 3);
  EXPECT_NE(rf.err.find("NotAvailable"), std::string::npos);
  Outcome mode = cli({"--mode", "exact", "diff", "--expr", "sin(x)", "--at", "1"});
  EXPECT_EQ(mode.code, 3);
  EXPECT_NE(mode.err.find("ModeError"), std::string::npos);
  Outcome undefined = cli({"ultra", "classify", "--seq", "1/(n-4)"});
  EXPECT_EQ(undefined.code, 3);
  EXPECT_NE(undefined.err.find("UndefinedTerm"), std::string::npos);
}

TEST(Cli, ApproxOutputCarriesPrecisionTag) {
  Outcome r = cli({"diff", "--expr", "sin(x)", "--at", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0.54030230586813971740093660744297660373231042061792 [approx 50 digits]\n");
  Outcome t = cli({"taylor", "--expr", "exp(x)", "--at", "1/2", "--order", "2"});
  std::istringstream lines(t.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    EXPECT_NE(line.find("[approx 50 digits]"), std::string::npos) << line;
    ++n;
  }
  EXPECT_EQ(n, 3);
}

TEST(Cli, ExactOutputs) {
  EXPECT_EQ(cli({"diff", "--expr", "x^3", "--at", "2", "--order", "2"}).out, "12\n");
  EXPECT_EQ(cli({"taylor", "--expr", "exp(x)", "--at", "0", "--order", "4"}).out, "0: 1\n1: 1\n2: 1/2\n3: 1/6\n4: 1/24\n");
  EXPECT_EQ(cli({"limit", "--expr", "sin(x)/x", "--at", "0", "--side", "above"}).out, "1\n");
  EXPECT_EQ(cli({"limit", "--expr", "1/x", "--at", "0", "--side", "below"}).out, "-infinity\n");
  EXPECT_EQ(cli({"limit", "--expr", "(x^2-9)/(x-3)", "--at", "3", "--side", "above"}).out, "6\n");
  EXPECT_EQ(cli({"compare", "--lhs", "x^2", "--rhs", "x", "--backend", "ratfunc"}).out, "Less\n");
  EXPECT_EQ(cli({"eval", "--expr", "x^2", "--backend", "series", "--at", "x=3"}).out, "9\n");
  EXPECT_EQ(cli({"ultra", "extend", "--expr", "x^2", "--seq", "n"}).out, "ω^2\n");
  EXPECT_EQ(cli({"ultra", "member", "--interval", "(0, 1)", "--seq", "1/n"}).out, "In\n");
  EXPECT_EQ(cli({"saw", "--teeth", "4"}).out, "vertices: 9\nsup_deviation: 1/4\narc_length: 2\n");
  EXPECT_EQ(cli({"blancmange", "--terms", "10", "--at", "1/4", "--probe", "0,5"}).out,
            "terms: 10\nvalue: 1/2\ntail_bound: 0\nquotient: 5\n");
}

TEST(Cli, Classification) {
  Outcome r = cli({"ultra", "classify", "--seq", "1 mod 3: -n | 2 mod 3: n | 0 mod 3: 1/n", "--horizon", "100"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("case (i): decision set {1, 4, 7, ...}, value -ω"), std::string::npos);
  EXPECT_NE(r.out.find("case (ii): decision set {2, 5, 8, ...}, value ω"), std::string::npos);
  EXPECT_NE(r.out.find("case (iii): decision set {3, 6, 9, ...}, value 1/ω"), std::string::npos);
  EXPECT_NE(r.out.find("different choices are possible"), std::string::npos);
  Outcome json = cli({"--format", "json", "ultra", "classify", "--seq", "n^2"});
  auto doc = nlohmann::json::parse(json.out);
  EXPECT_EQ(doc["findings"][0]["case"], "(ii)");
}

TEST(Cli, FamilyFiles) {
  Outcome evens = cli({"ultra", "check-filter", "--family", sample("evens_filter.json")});
  EXPECT_EQ(evens.code, 0);
  EXPECT_NE(evens.out.find("filter: yes"), std::string::npos) << evens.out;
  Outcome seven = cli({"--format", "json", "ultra", "check-ultrafilter", "--family", sample("principal_7.json")});
  auto doc = nlohmann::json::parse(seven.out);
  EXPECT_EQ(doc["is_ultrafilter"], true);
  EXPECT_EQ(doc["generator"], 7);
  auto even = nlohmann::json::parse(
      cli({"--format", "json", "ultra", "check-ultrafilter", "--family", sample("even_cardinality.json")}).out);
  EXPECT_EQ(even["is_ultrafilter"], false);
  auto empty = nlohmann::json::parse(cli({"--format", "json", "ultra", "check-filter", "--family", sample("empty_set.json")}).out);
  EXPECT_EQ(empty["axioms"][0]["verdict"], "fail");
  auto gap = nlohmann::json::parse(
      cli({"--format", "json", "ultra", "check-filter", "--family", sample("missing_superset.json")}).out);
  EXPECT_EQ(gap["axioms"][2]["verdict"], "fail");
  EXPECT_EQ(cli({"ultra", "check-filter", "--family", sample("nope.json")}).code, 2);
}

TEST(Cli, ConfigFileAndOverrides) {
  Outcome r = cli({"--config", sample("hyperlab.conf"), "diff", "--expr", "sin(x)", "--at", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[approx 60 digits]"), std::string::npos);
  Outcome flag = cli({"--config", sample("hyperlab.conf"), "--approx-digits", "30", "diff", "--expr", "sin(x)", "--at", "1"});
  EXPECT_EQ(flag.out, "0.540302305868139717400936607443 [approx 30 digits]\n");
}

TEST_F(CliFiles, FiguresAreDeterministic) {
  fs::path a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(cli({"figures", "--out-dir", a.string()}).code, 0);
  ASSERT_EQ(cli({"figures", "--out-dir", b.string()}).code, 0);
  for (const char* name : {"finite_saw.svg", "magnified_tooth.svg", "triangle_waves.svg", "blancmange.svg"}) {
    ASSERT_TRUE(fs::exists(a / name)) << name;
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
}

TEST_F(CliFiles, SceneOutputs) {
  fs::path svg = dir_ / "saw.svg", csv = dir_ / "tooth.csv", mic = dir_ / "m.svg";
  EXPECT_EQ(cli({"saw", "--teeth", "8", "--out", svg.string()}).code, 0);
  std::string text = slurp(svg);
  EXPECT_EQ(text.rfind("<?xml", 0), 0u);
  EXPECT_EQ(cli({"saw", "--hyper", "--tooth", "0,0", "--magnify", "--out", csv.string()}).code, 0);
  std::string rows = slurp(csv);
  EXPECT_NE(rows.find("tooth 0,0,0\ntooth 0,0,1\ntooth 0,1,1\n"), std::string::npos) << rows;
  EXPECT_EQ(cli({"microscope", "--expr", "x^2", "--center", "1", "--out", mic.string()}).code, 0);
  EXPECT_TRUE(fs::exists(mic));
  Outcome rel = cli({"--output-dir", dir_.string(), "blancmange", "--terms", "4", "--out", "b.csv"});
  EXPECT_EQ(rel.code, 0);
  EXPECT_EQ(slurp(dir_ / "b.csv").rfind("label,x,y\n", 0), 0u);
}

TEST(Cli, DeterministicStdout) {
  std::vector<std::string> args{"ultra", "classify", "--seq", "[1, -2, 3, -4, 5, -6, 7]", "--horizon", "100"};
  EXPECT_EQ(cli(args).out, cli(args).out);
  EXPECT_EQ(cli({"ultra", "search", "--universe", "4"}).out, cli({"ultra", "search", "--universe", "4"}).out);
}
