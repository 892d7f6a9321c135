#include "entroloss/report.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using entroloss::Json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into the captured output.
CliResult cli(const std::string& args) {
  const std::string cmd = std::string(ENTROLOSS_CLI_PATH) + " " + args + " 2>&1";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), static_cast<int>(buf.size()), p)) r.out += buf.data();
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string config(const std::string& name) { return std::string(ENTROLOSS_SOURCE_DIR) + "/configs/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("entroloss_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json read_json(const fs::path& p) { return Json::parse(slurp(p)); }

}  // namespace

TEST(Quantity, EntropyOfMaximallyMixedQubit) {
  const fs::path d = scratch("entropy");
  const CliResult r = cli("quantity --config " + config("entropy_maximally_mixed.json") + " --out " + d.string());
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = read_json(d / "quantity.json");
  EXPECT_NEAR(j.at("value").get<double>(), 0.693147, 5e-7);
  EXPECT_EQ(j.at("provenance"), "EXACT");
}

TEST(Quantity, BellMutualInformation) {
  const fs::path d = scratch("mi");
  const CliResult r = cli("quantity --config " + config("bell_mutual_information.json") + " --out " + d.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(read_json(d / "quantity.json").at("value").get<double>(), 1.386294, 5e-7);
}

TEST(Quantity, BellEntanglementOfFormationIsUpperBound) {
  const fs::path d = scratch("ef");
  const CliResult r = cli("quantity --config " + config("bell_entanglement_of_formation.json") + " --out " + d.string());
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = read_json(d / "quantity.json");
  EXPECT_NEAR(j.at("value").get<double>(), std::log(2.0), 1e-6);
  EXPECT_EQ(j.at("provenance"), "UPPER_BOUND");
  EXPECT_NE(r.out.find("UPPER_BOUND"), std::string::npos);
}

TEST(Quantity, ComplexMatrixEntries) {
  const fs::path d = scratch("complex");
  const fs::path c = write_config(d, R"({"quantity": "entropy",
    "state": {"matrix": [["0.5", [0, "0.5"]], [[0, "-0.5"], "0.5"]]}})");
  const CliResult r = cli("quantity --config " + c.string() + " --out " + d.string() + " --format csv");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(d / "quantity.csv"));
  EXPECT_FALSE(fs::exists(d / "quantity.json"));
  EXPECT_NEAR(std::stod(r.out.substr(r.out.find('=') + 1)), 0.0, 1e-12);
}

TEST(ExitCodes, ConfigErrors) {
  const fs::path d = scratch("errors");
  const fs::path bad = write_config(d, R"({"quantity": "entropy", "state": {"diagonal": [1]}, "extra": 1})");
  CliResult r = cli("quantity --config " + bad.string() + " --out " + d.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("unknown key 'extra'"), std::string::npos) << r.out;

  r = cli("quantity --config " + (d / "missing.json").string());
  EXPECT_EQ(r.code, 2);

  std::ofstream(d / "broken.json") << "{\n  \"quantity\": \"entropy\",\n  oops\n}\n";
  r = cli("quantity --config " + (d / "broken.json").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find(":3:"), std::string::npos) << r.out;

  const fs::path unknown = write_config(d, R"({"suites": ["P1", "Z9"]})");
  r = cli("suite --config " + unknown.string() + " --out " + d.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("UnknownSuite"), std::string::npos);

  r = cli("suite --format xml");
  EXPECT_EQ(r.code, 2);
}

TEST(ExitCodes, FailedChecksExitOne) {
  const fs::path d = scratch("failing");
  const fs::path c = write_config(d, R"({"suites": ["C1"], "params": {"tol_exact": "-1"}})");
  const CliResult r = cli("suite --config " + c.string() + " --out " + d.string());
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_TRUE(fs::exists(d / "suite_C1.json"));
  EXPECT_FALSE(read_json(d / "suite_C1.json").at("passed").get<bool>());
}

TEST(Report, EmptyDirectoryIsMissingArtifacts) {
  const fs::path d = scratch("empty");
  const CliResult r = cli("report --out " + d.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("MissingArtifacts"), std::string::npos) << r.out;
}

TEST(Report, SingleSuiteGivesOneRow) {
  const fs::path d = scratch("single");
  const fs::path c = write_config(d, R"({"suites": ["C1"]})");
  ASSERT_EQ(cli("suite --config " + c.string() + " --out " + d.string()).code, 0);
  ASSERT_EQ(cli("report --out " + d.string()).code, 0);
  const Json s = read_json(d / "summary.json");
  ASSERT_EQ(s.at("suites").size(), 1u);
  EXPECT_EQ(s.at("suites")[0].at("id"), "C1");
  const Json c1 = read_json(d / "suite_C1.json");
  bool eq_row = false;
  for (const auto& ch : c1.at("checks"))
    if (ch.at("relation") == "==" && ch.at("family") == "sharp") eq_row = ch.at("passed").get<bool>();
  EXPECT_TRUE(eq_row);
}

TEST(Suite, EnergySuiteHasRatioColumn) {
  const fs::path d = scratch("p4");
  const CliResult r = cli("suite --config " + config("energy_suite.json") + " --out " + d.string());
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = read_json(d / "suite_P4.json");
  bool ratio = false;
  for (const auto& t : j.at("tables")) ratio = ratio || t.at("series").contains("ratio_to_bound");
  EXPECT_TRUE(ratio);
  const std::string plot = slurp(d / "plot_P4_sharp_log_1.csv");
  EXPECT_EQ(plot.rfind("n,H,E,E_down,gibbs_bound,ratio_to_bound\n", 0), 0u) << plot.substr(0, 80);
}

TEST(Suite, LiftedEqualityRow) {
  const fs::path d = scratch("t1");
  const fs::path c = write_config(d, R"({"suites": ["T1"]})");
  ASSERT_EQ(cli("suite --config " + c.string() + " --out " + d.string()).code, 0);
  const Json t1 = read_json(d / "suite_T1.json");
  bool found = false;
  for (const auto& ch : t1.at("checks"))
    if (ch.at("family") == "lifted_sharp" && ch.at("relation") == "==") {
      found = true;
      EXPECT_TRUE(ch.at("passed").get<bool>());
    }
  EXPECT_TRUE(found);
}

TEST(Suite, CsvUsesSeventeenDigits) {
  const fs::path d = scratch("csv");
  const fs::path c = write_config(d, R"({"suites": ["C1"]})");
  ASSERT_EQ(cli("suite --config " + c.string() + " --out " + d.string() + " --format csv").code, 0);
  EXPECT_FALSE(fs::exists(d / "suite_C1.json"));
  std::istringstream csv(slurp(d / "suite_C1.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "suite,family,n,series,value");
  std::getline(csv, line);
  const std::string value = line.substr(line.rfind(',') + 1);
  const double parsed = std::stod(value);
  EXPECT_EQ(entroloss::report::number(parsed), value);
  EXPECT_LE(value.size(), 24u);
}

TEST(Sequence, SharpFamilyRun) {
  const fs::path d = scratch("sequence");
  const CliResult r = cli("sequence --config " + config("sharp_sequence.json") + " --out " + d.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("closed form dj_H = 1"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(d / "suite_sequence_sharp.json"));
}

TEST(Determinism, RepeatedRunsAreByteIdentical) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const std::string cfg = config("channel_suites.json");
  ASSERT_EQ(cli("suite --config " + cfg + " --seed 11 --out " + a.string()).code, 0);
  ASSERT_EQ(cli("suite --config " + cfg + " --seed 11 --out " + b.string()).code, 0);
  int files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path().filename();
  }
  EXPECT_GT(files, 4);
}

TEST(Report, AllSuitesSummary) {
  const fs::path d = scratch("all");
  const CliResult r = cli("suite --config " + config("all_suites.json") + " --out " + d.string());
  ASSERT_EQ(r.code, 0) << r.out;
  ASSERT_EQ(cli("report --out " + d.string()).code, 0);
  const Json s = read_json(d / "summary.json");
  EXPECT_GE(s.at("suites").size(), 14u);
  EXPECT_TRUE(s.at("all_passed").get<bool>());
  std::istringstream csv(slurp(d / "summary.csv"));
  std::string line;
  int rows = -1;
  while (std::getline(csv, line)) ++rows;
  EXPECT_GE(rows, 14);
}
