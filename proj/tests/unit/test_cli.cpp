#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("rhop_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(const std::string& args, const std::string& env = "") {
    const fs::path out = dir_ / "stdout", err = dir_ / "stderr";
    const std::string cmd = "cd '" + dir_.string() + "' && env -u RHOP_PRECISION " + env + " '" RHOP_EXE "' " + args +
                            " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }
  fs::path file(const std::string& name) const { return dir_ / name; }
  void write(const std::string& name, const std::string& text) { std::ofstream(file(name)) << text; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, OpucWritesAlphaZeroRow) {
  const Outcome r = run("opuc --weight onepluscos --n 8 --out alpha.csv");
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(file("alpha.csv"));
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "n,re,im,rho,kappa");
  EXPECT_NEAR(std::stod(row.substr(2)), 0.5, 1e-12);
  EXPECT_NE(r.out.find("opuc:"), std::string::npos);
  EXPECT_EQ(r.out.find('\n'), r.out.size() - 1);  // one summary line
}

TEST_F(Cli, TodaTwoByTwo) {
  const Outcome r = run("toda --size 2 --t 1.0");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["a_0"].get<double>(), 0.964028, 1e-6);
  EXPECT_NEAR(j["offdiag"][0].get<double>(), 1.0 / std::cosh(2.0), 1e-9);
}

TEST_F(Cli, SzegoReport) {
  const Outcome r = run("szego --s 1 --n 30");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["prediction"].get<double>(), 0.25);
  EXPECT_LT(j["abs_err"].get<double>(), 1e-4);
  EXPECT_TRUE(j.contains("measured"));
}

TEST_F(Cli, OutputIsDeterministic) {
  const Outcome a = run("oprl --weight quartic:g=1,d=0 --n 10");
  const Outcome b = run("oprl --weight quartic:g=1,d=0 --n 10");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, ConfigErrorsExitTwo) {
  Outcome r = run("moments --weight nonsense");
  EXPECT_EQ(r.code, 2);
  const json e = json::parse(r.err);
  EXPECT_EQ(e["code"], "config_error");
  EXPECT_TRUE(e.contains("module"));
  EXPECT_TRUE(e.contains("message"));

  EXPECT_EQ(run("opuc --bogus-flag 1").code, 2);
  EXPECT_EQ(run("opuc --weight gauss").code, 2);
  EXPECT_EQ(run("opuc --precision quad").code, 2);
  EXPECT_EQ(run("hankel --format csv").code, 2);

  write("bad.json", R"({"weight": "gauss", "colour": "red"})");
  r = run("oprl --config bad.json");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("colour"), std::string::npos);

  write("other.json", R"({"command": "opuc"})");
  EXPECT_EQ(run("oprl --config other.json").code, 2);
  EXPECT_EQ(run("oprl --config missing.json").code, 2);
}

TEST_F(Cli, NumericalErrorsExitThree) {
  const Outcome r = run("oprl --weight quartic:g=1,d=0 --n 300");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(json::parse(r.err)["code"], "insufficient_decay");
}

TEST_F(Cli, PrecisionPrecedence) {
  auto used = [](const Outcome& r) { return json::parse(r.out)["precision_used"].get<std::string>(); };
  write("exact.json", R"({"precision": "exact", "n": 3})");
  EXPECT_EQ(used(run("hankel")), "double");
  EXPECT_EQ(used(run("hankel", "RHOP_PRECISION=extended")), "extended");
  EXPECT_EQ(used(run("hankel --config exact.json", "RHOP_PRECISION=extended")), "exact");
  EXPECT_EQ(used(run("hankel --config exact.json --precision double", "RHOP_PRECISION=extended")), "double");
  EXPECT_EQ(json::parse(run("hankel --config exact.json").out)["n"], 3);
  EXPECT_EQ(run("hankel", "RHOP_PRECISION=bogus").code, 2);
}

TEST_F(Cli, CsvTablesConvertToJson) {
  const Outcome r = run("oprl --n 3 --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["columns"], json({"n", "a", "b", "k"}));
  EXPECT_EQ(j["rows"].size(), 3u);
}

TEST_F(Cli, VerifyAllFastWritesReport) {
  const Outcome r = run("verify-all fast --out report.json");
  EXPECT_EQ(r.code, 0) << r.err;
  const json j = json::parse(slurp(file("report.json")));
  EXPECT_EQ(j["checks"].size(), 11u);
  EXPECT_LT(j["seconds"].get<double>(), 30.0);
}
