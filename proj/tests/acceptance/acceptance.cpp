// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "verify.hpp"

namespace {

void print(int id, bool pass, const std::string& name, const std::string& detail) {
  std::printf("criterion %2d: %s  %s  %s\n", id, pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// verify-all full through the command-line tool, under the 10 minute budget.
bool criterion_12() {
  namespace fs = std::filesystem;
  const fs::path report = fs::temp_directory_path() / ("rhop_acceptance_" + std::to_string(::getpid()) + ".json");
  const std::string cmd = "'" RHOP_EXE "' verify-all full --out '" + report.string() + "' >/dev/null 2>&1";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  std::ifstream in(report);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  fs::remove(report);
  int found = 0;
  for (int id = 1; id <= 11; ++id) {
    if (text.find("\"id\": " + std::to_string(id) + ",") != std::string::npos) ++found;
  }
  const bool pass = code == 0 && secs <= 600.0 && found == 11;
  print(12, pass, "verify-all full",
        "exit " + std::to_string(code) + ", " + fmt(secs) + " s (limit 600), " + std::to_string(found) + "/11 checks reported");
  return pass;
}

}  // namespace

int main() {
  using namespace rhop::verify;
  bool all = true;
  for (int id = 1; id <= 11; ++id) {
    const Check c = run_criterion(id, Suite::full, 1);
    std::string detail = "residual " + fmt(c.residual) + " (tol " + fmt(c.tolerance) + "), " + fmt(c.seconds) + " s";
    if (c.time_limit > 0) detail += " (limit " + fmt(c.time_limit) + ")";
    if (!c.pass) detail += ": " + c.detail;
    print(id, c.pass, c.name, detail);
    all = all && c.pass;
  }
  all = criterion_12() && all;
  std::printf("%s\n", all ? "all criteria pass" : "some criteria FAIL");
  return all ? 0 : 1;
}
