#include "asz/cli.hpp"
#include "asz/csv.hpp"
#include "asz/errors.hpp"
#include "asz/manifest.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace asz;

namespace {

fs::path fresh_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("asz_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int run(std::vector<std::string> args, const fs::path& out) {
  args.push_back("--out");
  args.push_back(out.string());
  return cli::dispatch(args);
}

}  // namespace

TEST(Csv, QuotingAndRoundTrip) {
  EXPECT_EQ(csv::quote("plain"), "plain");
  EXPECT_EQ(csv::quote("a,b"), "\"a,b\"");
  EXPECT_EQ(csv::quote("say \"hi\""), "\"say \"\"hi\"\"\"");
  csv::Table t({"name", "value", "note"});
  t.add_row(std::string("x,y"), 0.1, std::string("line\nbreak"));
  t.add_row(std::string("plain"), std::int64_t{-3}, std::string("\"q\""));
  auto rows = csv::parse(t.str());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], t.header());
  EXPECT_EQ(rows[1], t.rows()[0]);
  EXPECT_EQ(rows[2], t.rows()[1]);
  EXPECT_EQ(std::stod(rows[1][1]), 0.1);
}

TEST(Csv, EmptyTableIsHeaderOnly) {
  csv::Table t({"a", "b"});
  EXPECT_EQ(t.str(), "a,b\r\n");
}

TEST(Csv, ExactFieldRoundTrip) {
  ExactScaled e{CycloElem(3, {Rational(-1, 2), Rational(3, 4)}), -3};
  EXPECT_EQ(e.field(), "num=[-2,3];den=4;qpow=-3");
  EXPECT_EQ(csv::parse_exact(e.field(), 3), e);
  ExactScaled m{CycloElem::integer(3, -1), -1};
  EXPECT_EQ(m.field(), "num=[-1,0];den=1;qpow=-1");
}

TEST(Cli, IntList) {
  EXPECT_EQ(cli::parse_int_list("3"), std::vector<int>{3});
  EXPECT_EQ(cli::parse_int_list("1-4"), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(cli::parse_int_list("1,2,5-6"), (std::vector<int>{1, 2, 5, 6}));
  EXPECT_THROW(cli::parse_int_list("4-1"), InvalidParameter);
}

TEST(Cli, AvgTraceExample) {
  auto dir = fresh_dir("avg");
  EXPECT_EQ(run({"avg-trace", "--p", "3", "--n", "1", "--d", "4", "--r", "1", "--psi", "1", "--check"}, dir), cli::kOk);
  auto rows = csv::parse(slurp(dir / "avg-trace.csv"));
  ASSERT_EQ(rows.size(), 2u);
  auto col = [&](const std::string& name) {
    auto it = std::find(rows[0].begin(), rows[0].end(), name);
    return static_cast<std::size_t>(it - rows[0].begin());
  };
  EXPECT_EQ(rows[1][col("avg_exact")], "num=[-1,0];den=1;qpow=-1");
  EXPECT_EQ(rows[1][col("exact_match")], "true");
  EXPECT_NEAR(std::stod(rows[1][col("avg_value")]), -1 / std::sqrt(3.0), 1e-15);
}

TEST(Cli, ExitCodes) {
  auto dir = fresh_dir("codes");
  EXPECT_EQ(run({"avg-trace", "--p", "4", "--d", "3"}, dir), cli::kInvalid);
  EXPECT_EQ(run({"avg-trace", "--p", "3", "--d", "3", "--bogus"}, dir), cli::kInvalid);
  EXPECT_EQ(run({"avg-trace", "--p", "3", "--d", "6"}, dir), cli::kInvalid);
  EXPECT_EQ(run({"no-such-command"}, dir), cli::kInvalid);
  EXPECT_EQ(run({"avg-trace", "--p", "3", "--d", "4", "--r", "1-7", "--check"}, dir), cli::kOk);
}

TEST(Cli, DecomposeExample) {
  auto dir = fresh_dir("dec");
  EXPECT_EQ(run({"decompose", "--p", "3", "--h", "1,0,1", "--D", "10"}, dir), cli::kOk);
  auto rows = csv::parse(slurp(dir / "decompose.csv"));
  ASSERT_EQ(rows.size(), 2u);
  auto g2 = std::find(rows[0].begin(), rows[0].end(), "g2") - rows[0].begin();
  EXPECT_EQ(rows[1][static_cast<std::size_t>(g2)], "1,1");
}

TEST(Cli, EmptyReportIsHeaderOnly) {
  auto dir = fresh_dir("empty");
  // no r + s < d when d = 2
  EXPECT_EQ(run({"pair-trace", "--p", "3", "--d", "2"}, dir), cli::kOk);
  auto text = slurp(dir / "pair-trace.csv");
  EXPECT_EQ(csv::parse(text).size(), 1u);
}

TEST(Cli, JobsDoNotChangeBytes) {
  auto d1 = fresh_dir("j1"), d8 = fresh_dir("j8");
  const std::vector<std::vector<std::string>> runs{
      {"avg-trace", "--p", "3", "--d", "5"},
      {"pair-trace", "--p", "2", "--d", "5"},
      {"zeros", "--p", "3", "--d", "4"},
      {"dirichlet-verify", "--p", "3", "--d", "2"},
      {"odd-family", "--p", "3", "--d", "7"},
      {"rmt-baseline", "--ensemble", "usp", "--N", "4", "--samples", "200", "--r", "1-3"},
      {"point-dist", "--p", "3", "--d", "9", "--samples", "300"},
  };
  for (auto args : runs) {
    auto a = args, b = args;
    a.insert(a.end(), {"--jobs", "1"});
    b.insert(b.end(), {"--jobs", "8"});
    ASSERT_EQ(run(a, d1), cli::kOk) << args[0];
    ASSERT_EQ(run(b, d8), cli::kOk) << args[0];
    EXPECT_EQ(slurp(d1 / (args[0] + ".csv")), slurp(d8 / (args[0] + ".csv"))) << args[0];
  }
}

TEST(Cli, ConfigPrecedence) {
  auto dir = fresh_dir("cfg");
  auto cfg = dir / "run.cfg";
  {
    std::ofstream os(cfg);
    os << "# comment\np=5\nd=3\nr=1\n";
  }
  ASSERT_EQ(run({"avg-trace", "--config", cfg.string()}, dir), cli::kOk);
  auto rows = csv::parse(slurp(dir / "avg-trace.csv"));
  EXPECT_EQ(rows[1][1], "5");
  ASSERT_EQ(run({"avg-trace", "--config", cfg.string(), "--p", "2"}, dir), cli::kOk);
  rows = csv::parse(slurp(dir / "avg-trace.csv"));
  EXPECT_EQ(rows[1][1], "2");
  auto man = nlohmann::ordered_json::parse(slurp(dir / "avg-trace.manifest.json"));
  EXPECT_EQ(man["params"]["p"], "2");
  EXPECT_EQ(man["params"]["d"], "3");
}

TEST(Cli, EnvCapIsDefaultOnly) {
  auto dir = fresh_dir("cap");
  ::setenv("ASZ_CAP", "10", 1);
  EXPECT_EQ(run({"avg-trace", "--p", "3", "--d", "4"}, dir), cli::kInvalid);
  EXPECT_EQ(run({"avg-trace", "--p", "3", "--d", "4", "--cap", "100000"}, dir), cli::kOk);
  ::setenv("ASZ_CAP", "zero", 1);
  EXPECT_EQ(run({"avg-trace", "--p", "3", "--d", "4"}, dir), cli::kInvalid);
  ::unsetenv("ASZ_CAP");
}

TEST(Manifest, DigestTracksCsv) {
  auto dir = fresh_dir("man");
  ASSERT_EQ(run({"avg-trace", "--p", "3", "--d", "4", "--r", "1"}, dir), cli::kOk);
  auto man = manifest_from_json(nlohmann::ordered_json::parse(slurp(dir / "avg-trace.manifest.json")));
  ASSERT_EQ(man.outputs.size(), 1u);
  EXPECT_EQ(man.outputs[0].file, "avg-trace.csv");
  const auto first = man.outputs[0].sha256;
  EXPECT_EQ(first, sha256_file(dir / "avg-trace.csv"));
  EXPECT_EQ(man.command, "avg-trace");
  ASSERT_EQ(run({"avg-trace", "--p", "3", "--d", "4", "--r", "1", "--jobs", "3"}, dir), cli::kOk);
  auto again = manifest_from_json(nlohmann::ordered_json::parse(slurp(dir / "avg-trace.manifest.json")));
  EXPECT_EQ(again.outputs[0].sha256, first);
  ASSERT_EQ(run({"avg-trace", "--p", "3", "--d", "4", "--r", "2"}, dir), cli::kOk);
  auto changed = manifest_from_json(nlohmann::ordered_json::parse(slurp(dir / "avg-trace.manifest.json")));
  EXPECT_NE(changed.outputs[0].sha256, first);
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cli, PointDistSummary) {
  auto dir = fresh_dir("pd");
  ASSERT_EQ(run({"point-dist", "--p", "2", "--d", "4", "--r", "2", "--check"}, dir), cli::kOk);
  auto js = nlohmann::json::parse(slurp(dir / "point-dist.summary.json"));
  EXPECT_TRUE(js.contains("p_value"));
  auto rows = csv::parse(slurp(dir / "point-dist.csv"));
  EXPECT_EQ(rows[0], (std::vector<std::string>{"value", "frequency", "model_probability"}));
}
