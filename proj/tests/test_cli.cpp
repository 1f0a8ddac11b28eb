#include "lagtori_cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace cli = lagtori::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

double value_after(const std::string& text, const std::string& key) {
  const auto pos = text.find(key);
  if (pos == std::string::npos) return NAN;
  return std::stod(text.substr(pos + key.size()));
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("lagtori_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST(Cli, HomogeneousCliffordRatioIsOne) {
  const auto r = run({"energy", "--family", "homogeneous", "--r", "0.577350", "0.577350", "0.577350"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(value_after(r.out, "ratio = "), 1.0, 1e-6);
}

TEST(Cli, MironovEnergyAboveClifford) {
  const auto r =
      run({"energy", "--family", "mironov", "--alpha", "2", "1", "-1", "--a1", "1.8", "--a2", "1.2", "--branch", "minus"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_GT(value_after(r.out, "ratio = "), 1.0);
}

TEST(Cli, AlphaNormalizationReported) {
  const auto r = run({"energy", "--alpha", "-1", "-2", "1", "--a1", "1.8", "--a2", "1.2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("normalized to (2,1,-1)"), std::string::npos);
}

TEST(Cli, TwelveSignificantDigits) {
  const auto r = run({"energy", "--family", "clifford"});
  EXPECT_NE(r.out.find("E = 7.59762501035\n"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"energy", "--alpha", "2", "1", "-1", "--a1", "1.8"}).code, 64);
  EXPECT_EQ(run({"energy", "--bogus"}).code, 64);
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto inf = run({"energy", "--alpha", "2", "1", "-1", "--a1", "2.5", "--a2", "1.2"});
  EXPECT_EQ(inf.code, 2);
  EXPECT_NE(inf.err.find("a1 <= -alpha1*alpha3"), std::string::npos) << inf.err;
  EXPECT_EQ(run({"energy", "--alpha", "1", "2", "3", "--a1", "1", "--a2", "0.5"}).code, 2);
}

TEST(Cli, FeasibilityReport) {
  const auto ok = run({"feasibility", "--alpha", "2", "1", "-1", "--a1", "1.8", "--a2", "1.2"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("feasible: yes"), std::string::npos);
  EXPECT_NE(ok.out.find("c2 (minus)"), std::string::npos);
  const auto bad = run({"feasibility", "--alpha", "2", "1", "-1", "--a1", "1.8", "--a2", "0.5"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("a2 >= -alpha2*alpha3"), std::string::npos) << bad.out;
}

TEST(Cli, ScanRowsAndSummary) {
  const auto r = run({"scan", "--alpha", "2", "1", "-1", "--grid", "6", "--branch", "both"});
  EXPECT_EQ(r.code, 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, cli::kScanCsvHeader);
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    const double ratio = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_GT(ratio, 1.0) << line;
  }
  EXPECT_EQ(rows, 2 * 15);
  EXPECT_NE(r.err.find("min ratio"), std::string::npos);
  EXPECT_EQ(run({"scan", "--alpha", "2", "1", "-1", "--grid", "6", "--branch", "both"}).out, r.out);
}

TEST(Cli, ScanEmptyFeasibleSetWarns) {
  const auto r = run({"scan", "--alpha", "1", "1", "-1", "--grid", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, std::string(cli::kScanCsvHeader) + "\n");
  EXPECT_NE(r.err.find("warning: empty feasible set"), std::string::npos);
  EXPECT_EQ(run({"scan", "--alpha", "1", "1"}).code, 64);
}

TEST(Cli, ScanJson) {
  const auto r = run({"scan", "--alpha", "3", "2", "-1", "--grid", "3", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 6U);
  EXPECT_GT(j["min_ratio"].get<double>(), 1.0);
}

TEST(Cli, ConfigFileAndFlagsWin) {
  const auto dir = temp_dir("config");
  const auto cfg = dir / "run.json";
  std::ofstream(cfg) << R"({"alpha": [2, 1, -1], "a1": 1.8, "a2": 1.2, "branch": "plus"})";
  const auto a = run({"energy", "--config", cfg.string()});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("branch = plus"), std::string::npos);
  const auto b = run({"energy", "--config", cfg.string(), "--branch", "minus"});
  EXPECT_NE(b.out.find("branch = minus"), std::string::npos);
  EXPECT_EQ(run({"energy", "--config", (dir / "missing.json").string()}).code, 64);
}

TEST(Cli, VerifyWritesCertificates) {
  const auto dir = temp_dir("verify");
  const auto r = run({"verify", "--output-dir", dir.string(), "--seed", "7", "--samples", "20"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("seed: 7"), std::string::npos);
  const auto j = nlohmann::json::parse(std::ifstream(dir / "B2.json"));
  EXPECT_EQ(j["status"], "Proved");
  EXPECT_EQ(j["main"]["epsilon"].get<double>(), 1e-4);
  EXPECT_EQ(j["main"]["depth_limit"].get<int>(), 40);
  const auto c = lagtori::certificate_from_json(j["main"]);
  EXPECT_TRUE(lagtori::replay(c, lagtori::b2_enclosure));
}

TEST(Cli, VerifyFailedAndInconclusive) {
  const auto f = run({"verify", "--target", "B1", "--threshold", "1.2", "--no-write"});
  EXPECT_EQ(f.code, 1);
  EXPECT_NE(f.out.find("witness"), std::string::npos);
  const auto i = run({"verify", "--target", "B2", "--max-depth", "6", "--no-write"});
  EXPECT_EQ(i.code, 3) << i.out;
}

TEST(Cli, Periodicity) {
  const auto r = run({"periodicity", "--alpha", "2", "1", "-1", "--a1", "1.8", "--a2", "1.2", "--max-den", "50"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["status"] == "periodic" || j["status"] == "not periodic");
  EXPECT_EQ(run({"periodicity", "--alpha", "3", "1", "-1", "--a1", "2", "--a2", "1.5"}).code, 2);
}

TEST(Cli, ExportRows) {
  const auto r = run({"export", "--alpha", "2", "1", "-1", "--a1", "1.8", "--a2", "1.2", "--grid", "64", "64"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4097);
  const auto dir = temp_dir("export");
  const auto h = run({"export", "--family", "homogeneous", "--r", "1", "1", "1", "--grid", "4", "4", "--csv",
                      (dir / "h.csv").string(), "--obj", (dir / "h.obj").string()});
  EXPECT_EQ(h.code, 0);
  std::ifstream csv(dir / "h.csv");
  EXPECT_EQ(lagtori::read_samples_csv(csv).size(), 16U);
}

TEST(Cli, Mnk) {
  const auto t = run({"mnk", "--m", "2", "--n", "2", "--k", "-2"});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.out.substr(0, 6), "torus\n");
  EXPECT_NE(t.out.find("orientation convention"), std::string::npos);
  EXPECT_EQ(run({"mnk", "--m", "1", "--n", "1", "--k", "-1"}).out.substr(0, 12), "Klein bottle");
  EXPECT_EQ(run({"mnk", "--m", "1", "--n", "2", "--k", "-1"}).code, 2);
  EXPECT_EQ(run({"energy", "--family", "mnk"}).out.find("see mnk_family topology predicate only") != std::string::npos,
            true);
}
