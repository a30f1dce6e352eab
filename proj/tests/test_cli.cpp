/* Copyright 2026 The Spincount Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// End-to-end tests that drive the installed binary the way a user would:
// every case spawns a fresh process and inspects exit code, stdout, stderr
// and any files written into a scratch directory.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  if (const char* env = std::getenv("SPINCOUNT_CLI_PATH")) return env;
  return SPINCOUNT_CLI_PATH;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CliResult {
  int status = -1;
  std::string out;
  std::string err;
};

// Scratch directory shared by one test case; recreated empty on entry.
fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "spincount_cli_scratch";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "__stdout.txt";
  const fs::path err = dir / "__stderr.txt";
  const std::string cmd = "cd '" + dir.string() + "' && '" + cli_path() +
                          "' " + args + " > '" + out.string() + "' 2> '" +
                          err.string() + "'";
  const int rc = std::system(cmd.c_str());
  CliResult res;
  res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  res.out = slurp(out);
  res.err = slurp(err);
  return res;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

// Parse "key=value" tokens from a fit summary line.
double fit_field(const std::string& line, const std::string& key) {
  const std::string needle = key + "=";
  const size_t pos = line.find(needle);
  REQUIRE(pos != std::string::npos);
  return std::stod(line.substr(pos + needle.size()));
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream is(line);
  std::string f;
  while (std::getline(is, f, ',')) fields.push_back(f);
  return fields;
}

}  // namespace

TEST_CASE("run emits a normalized series and a fit summary", "[cli]") {
  const fs::path dir = scratch_dir();
  const CliResult res = run_cli("run --oracle f01 --rmax 4", dir);
  REQUIRE(res.status == 0);

  const auto lines = lines_of(res.out);
  REQUIRE(lines.size() == 7);  // header + 5 rows + fit line
  REQUIRE(lines[0] == "oracle,r,raw,normalized");
  // The exact gate-level values at even r are +/-1 and render as integers.
  REQUIRE(lines[1] == "f01,0,1,1");
  REQUIRE(lines[3] == "f01,2,-1,-1");
  REQUIRE(lines[5] == "f01,4,1,1");
  // Odd r sits at the zero crossings up to rounding noise.
  for (size_t i : {2u, 6u - 2u}) {
    const auto f = csv_fields(lines[i]);
    REQUIRE(f.size() == 4);
    REQUIRE(f[0] == "f01");
    REQUIRE(std::abs(std::stod(f[2])) < 1e-14);
    REQUIRE(std::abs(std::stod(f[3])) < 1e-14);
  }

  const std::string& fit = lines.back();
  REQUIRE(fit.rfind("fit oracle=f01 ", 0) == 0);
  REQUIRE(fit_field(fit, "phi_hat") == Catch::Approx(M_PI / 2.0).margin(1e-9));
  REQUIRE(fit_field(fit, "k_rounded") == 1.0);
  REQUIRE(fit_field(fit, "residual_rms") < 1e-12);
}

TEST_CASE("run writes the series to a file when asked", "[cli]") {
  const fs::path dir = scratch_dir();
  const CliResult res = run_cli("run --oracle f10 --rmax 3 --out series.csv",
                                dir);
  REQUIRE(res.status == 0);

  const auto console = lines_of(res.out);
  REQUIRE(console.size() == 1);  // only the fit line on stdout
  REQUIRE(console[0].rfind("fit oracle=f10 ", 0) == 0);

  const auto file = lines_of(slurp(dir / "series.csv"));
  REQUIRE(file.size() == 5);
  REQUIRE(file[0] == "oracle,r,raw,normalized");
  REQUIRE(csv_fields(file[1])[0] == "f10");
}

TEST_CASE("custom truth tables with the ideal backend", "[cli]") {
  const fs::path dir = scratch_dir();
  const CliResult res = run_cli("run --oracle 0110 --rmax 8", dir);
  REQUIRE(res.status == 0);
  const auto lines = lines_of(res.out);
  REQUIRE(csv_fields(lines[1])[0] == "0110");
  const std::string& fit = lines.back();
  REQUIRE(fit_field(fit, "k_rounded") == 2.0);  // two matches on two bits
}

TEST_CASE("simulated acquisitions are reproducible", "[cli]") {
  const fs::path dir = scratch_dir();
  const std::string cmd = "run --backend nmr --oracle f01 --rmax 5";
  const CliResult a = run_cli(cmd, dir);
  const CliResult b = run_cli(cmd, dir);
  REQUIRE(a.status == 0);
  REQUIRE(a.out == b.out);  // byte-identical, ensemble RNG included

  // The fit still lands on the right count through the simulated noise.
  REQUIRE(fit_field(lines_of(a.out).back(), "k_rounded") == 1.0);
}

TEST_CASE("compile prints the timing header and the program", "[cli]") {
  const fs::path dir = scratch_dir();
  const CliResult res = run_cli("compile --oracle f01 --r 1", dir);
  REQUIRE(res.status == 0);
  REQUIRE(res.out ==
          "# counting_f01_r1\n"
          "# delta 0.0173214285714 eps270 0.00214285714286 eps45 "
          "0.000357142857143\n"
          "PULSE 90deg 90deg\n"
          "DELAY 0.0173214285714\n"
          "PULSE 180deg 0deg\n"
          "DELAY 0.0367857142857\n"
          "PULSE 180deg 0deg\n"
          "DELAY 0.0173214285714\n"
          "PULSE 45deg 270deg\n"
          "PULSE 90deg 0deg\n"
          "DELAY 0.000357142857143\n"
          "PULSE 90deg 180deg\n"
          "DELAY 0.0173214285714\n"
          "PULSE 180deg 0deg\n"
          "DELAY 0.0367857142857\n"
          "PULSE 180deg 0deg\n"
          "DELAY 0.0173214285714\n"
          "PULSE 45deg 90deg\n"
          "PULSE 90deg 180deg\n"
          "DELAY 0.000357142857143\n"
          "PULSE 90deg 0deg\n"
          "PULSE 90deg 270deg\n");

  const CliResult trivial = run_cli("compile --oracle f11 --r 0", dir);
  REQUIRE(trivial.status == 0);
  const auto lines = lines_of(trivial.out);
  REQUIRE(lines[0] == "# counting_f11_r0");
  REQUIRE(lines.size() == 4);  // two comment lines, the 90y / 90-y pair
  REQUIRE(lines[2] == "PULSE 90deg 90deg");
  REQUIRE(lines[3] == "PULSE 90deg 270deg");
}

TEST_CASE("verify reports every internal cross-check", "[cli]") {
  const fs::path dir = scratch_dir();
  const CliResult res = run_cli("verify", dir);
  REQUIRE(res.status == 0);
  const auto lines = lines_of(res.out);
  REQUIRE(lines.size() == 9);
  for (const auto& line : lines) {
    REQUIRE(line.rfind("[PASS] ", 0) == 0);
  }
  REQUIRE(res.out.find("pipeline-signal-equivalence") != std::string::npos);
  REQUIRE(res.out.find("counting-sequence-propagator") != std::string::npos);
}

TEST_CASE("config files set defaults, flags override them", "[cli]") {
  const fs::path dir = scratch_dir();
  {
    std::ofstream cfg(dir / "exp.ini");
    cfg << "oracle=f10\nrmax=6\n";
  }
  const CliResult from_cfg = run_cli("run --config exp.ini", dir);
  REQUIRE(from_cfg.status == 0);
  const auto lines = lines_of(from_cfg.out);
  REQUIRE(lines.size() == 9);  // header + r=0..6 + fit
  REQUIRE(csv_fields(lines[1])[0] == "f10");

  const CliResult overridden = run_cli("run --config exp.ini --oracle f11",
                                       dir);
  REQUIRE(overridden.status == 0);
  REQUIRE(csv_fields(lines_of(overridden.out)[1])[0] == "f11");
}

TEST_CASE("figure writes one series file per named oracle", "[cli]") {
  const fs::path dir = scratch_dir();
  const CliResult res =
      run_cli("figure --rmax 4 --samples 2 --out fig_", dir);
  REQUIRE(res.status == 0);

  const auto fits = lines_of(res.out);
  REQUIRE(fits.size() == 4);
  const char* order[] = {"f00", "f01", "f10", "f11"};
  for (int i = 0; i < 4; ++i) {
    REQUIRE(fits[i].rfind(std::string("fit oracle=") + order[i], 0) == 0);
    const auto file = lines_of(slurp(dir / ("fig_" + std::string(order[i]) +
                                            ".csv")));
    REQUIRE(file.size() == 6);  // header + r=0..4
    REQUIRE(file[0] == "oracle,r,raw,normalized");
    REQUIRE(csv_fields(file[1])[0] == order[i]);
  }
}

TEST_CASE("relaxation-free runs accept an infinite T2", "[cli]") {
  const fs::path dir = scratch_dir();
  const CliResult res =
      run_cli("run --backend nmr --t2 inf --samples 2 --rmax 3", dir);
  REQUIRE(res.status == 0);
  REQUIRE(fit_field(lines_of(res.out).back(), "k_rounded") == 1.0);
}

TEST_CASE("usage errors exit with status 2", "[cli]") {
  const fs::path dir = scratch_dir();
  REQUIRE(run_cli("", dir).status == 2);             // subcommand required
  REQUIRE(run_cli("run --no-such-flag", dir).status == 2);
  REQUIRE(run_cli("run --backend warp", dir).status == 2);
  REQUIRE(run_cli("run --rmax 0", dir).status == 2);
  REQUIRE(run_cli("run --oracle f7", dir).status == 2);
  REQUIRE(run_cli("compile --oracle 0110 --r 1", dir).status == 2);

  const CliResult custom_nmr = run_cli("run --backend nmr --oracle 0110", dir);
  REQUIRE(custom_nmr.status == 2);
  REQUIRE(custom_nmr.err.find("custom truth tables") != std::string::npos);

  const CliResult help = run_cli("--help", dir);
  REQUIRE(help.status == 0);
  REQUIRE(help.out.find("run") != std::string::npos);
  REQUIRE(help.out.find("compile") != std::string::npos);
}

TEST_CASE("infeasible pulse timing exits with status 3", "[cli]") {
  const fs::path dir = scratch_dir();
  const CliResult res = run_cli("run --backend nmr --j-hz 400", dir);
  REQUIRE(res.status == 3);
  REQUIRE(res.err.find("solve_timing") != std::string::npos);
  // The weak-coupling advisory precedes the failure on stderr.
  REQUIRE(res.err.find("warning:") != std::string::npos);
}
