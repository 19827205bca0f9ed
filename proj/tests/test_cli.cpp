// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using std::string;

namespace {

struct RunResult {
  int exit_code = -1;
  string out;
};

// Captures stdout; set merge_stderr for tests that inspect error messages.
RunResult run(const string &args, const string &env = "", bool merge_stderr = false) {
  const string cmd = env + " " + WISHART_SUM_CLI_PATH + " " + args +
                     (merge_stderr ? " 2>&1" : " 2>/dev/null");
  RunResult r;
  FILE *p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p))
    r.out += buf.data();
  const int status = pclose(p);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

string write_file(const string &name, const string &content) {
  const string path = string("/tmp/wishart_cli_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}

const char *kSisoJson = R"({"m": 1, "terms": [{"p": 1, "a_linear": 1.0}]})";

string case2_json() {
  string s = R"({"sigma2": 1.0, "branches": [)";
  const char *gains[] = {"28.3", "17.7", "26.5", "27.3", "29.3",
                         "21.5", "19.5", "27.9", "9.3", "24.3"};
  for (int i = 0; i < 10; ++i)
    s += string(i ? "," : "") + R"({"tx": 8, "rx": 8, "gain_db": )" + gains[i] + "}";
  return s + "]}";
}

} // namespace

TEST_CASE("help exits cleanly") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("density --help").exit_code == 0);
}

TEST_CASE("bad invocations exit 2") {
  CHECK(run("").exit_code == 2);                    // subcommand required
  CHECK(run("density").exit_code == 2);             // --config required
  CHECK(run("capacity --config /nonexistent.json").exit_code == 2);
  const string bad = write_file("bad.json", "{nope");
  CHECK(run("capacity --config " + bad).exit_code == 2);
  const string ambiguous = write_file("ambiguous.json", R"({"m": 1})");
  CHECK(run("capacity --config " + ambiguous).exit_code == 2);
}

TEST_CASE("density emits a parseable csv that matches the exponential") {
  const string cfg = write_file("siso.json", kSisoJson);
  auto r = run("density --config " + cfg + " --points 20");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  string header;
  std::getline(is, header);
  CHECK(header == "lambda,pdf_exact");
  int rows = 0;
  double lam, pdf;
  char comma;
  while (is >> lam >> comma >> pdf) {
    CHECK(pdf == doctest::Approx(std::exp(-lam)).epsilon(1e-9));
    ++rows;
  }
  CHECK(rows == 20);

  auto again = run("density --config " + cfg + " --points 20");
  CHECK(again.out == r.out); // byte-identical rerun
}

TEST_CASE("capacity prints the scalar closed form") {
  const string cfg = write_file("siso.json", kSisoJson);
  auto r = run("capacity --config " + cfg + " --method both");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("capacity_bits=0.8603473823") != string::npos); // det route
  CHECK(r.out.find("method=determinant:") != string::npos);
  CHECK(r.out.find("method=quadrature:") != string::npos);
}

TEST_CASE("relay subcommand reproduces the published bound") {
  const string cfg = write_file("relay.json", R"({
    "first_hop": {"sigma2": 1.0, "branches": [{"tx": 2, "rx": 2, "gain_db": 9.7},
                                               {"tx": 2, "rx": 2, "gain_db": 17.6}]},
    "second_hop": {"sigma2": 1.0, "branches": [{"tx": 2, "rx": 2, "gain_db": 17.6},
                                                {"tx": 2, "rx": 2, "gain_db": 16.7}]}})");
  auto r = run("relay --config " + cfg);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("relay_bits=10.9483635748") != string::npos);
}

TEST_CASE("approx reports the matched surrogate") {
  const string cfg = write_file("two.json",
                                R"({"m": 2, "terms": [{"p": 2, "a_db": 9.7},
                                                       {"p": 2, "a_db": 17.6}]})");
  auto r = run("approx --config " + cfg);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("matched_dof=3") != string::npos);
  CHECK(r.out.find("rel_error=") != string::npos);
}

TEST_CASE("precision control: flag beats environment, exit 3 on exhaustion") {
  const string cfg = write_file("case2.json", case2_json());
  auto hard = run("capacity --config " + cfg + " --precision standard", "", true);
  CHECK(hard.exit_code == 3);
  CHECK(hard.out.find("numerical error") != string::npos);
  CHECK(hard.out.find("extended") != string::npos); // tells the user the way out

  auto env_standard = run("capacity --config " + cfg, "WISHART_SUM_PRECISION=standard");
  CHECK(env_standard.exit_code == 3);

#ifdef WISHART_SUM_HAVE_MPFR
  auto flag_wins =
      run("capacity --config " + cfg + " --precision extended", "WISHART_SUM_PRECISION=standard");
  CHECK(flag_wins.exit_code == 0);
  CHECK(flag_wins.out.find("capacity_bits=93.86") != string::npos);
#endif

  auto bad_mode = run("capacity --config " + cfg + " --precision sloppy");
  CHECK(bad_mode.exit_code == 2);
}

TEST_CASE("monte carlo subcommand is deterministic") {
  const string cfg = write_file("mc.json",
                                R"({"m": 2, "terms": [{"p": 2, "a_linear": 3.0},
                                                       {"p": 2, "a_linear": 1.0}]})");
  auto a = run("mc --config " + cfg + " --realizations 1500 --seed 5");
  auto b = run("mc --config " + cfg + " --realizations 1500 --seed 5");
  auto c = run("mc --config " + cfg + " --realizations 1500 --seed 6");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(a.out.find("capacity_mc=") != string::npos);
}

TEST_CASE("sweeps write their csv files") {
  auto r = run("sweep-error --points 3 --hi-db 6 --out /tmp/wishart_cli_sweep.csv");
  REQUIRE(r.exit_code == 0);
  std::ifstream f("/tmp/wishart_cli_sweep.csv");
  string header;
  std::getline(f, header);
  CHECK(header == "ratio_db,exact_bits,approx_bits,rel_error");
  int rows = 0;
  for (string line; std::getline(f, line);)
    if (!line.empty())
      ++rows;
  CHECK(rows == 3);
}
