#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "logcoef/bounds.hpp"
#include "logcoef/cli.hpp"
#include "logcoef/report.hpp"

using namespace logcoef;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "logcoef");
  std::ostringstream out, err;
  const int code = cli::main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary; returns (exit status, stdout).
std::pair<int, std::string> run_binary(const std::string& args) {
  const std::string cmd = std::string(LOGCOEF_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

double cell(const CsvTable& t, std::size_t row, const std::string& col) {
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    if (t.header[c] == col) return std::strtod(t.rows.at(row).at(c).c_str(), nullptr);
  }
  FAIL("no column " << col);
  return 0.0;
}

}  // namespace

TEST_CASE("gamma for f4(1/2)") {
  const Outcome o = run_cli({"gamma", "--function", "f4", "--lambda", "0.5", "--format", "json"});
  REQUIRE(o.code == cli::kExitOk);
  const json j = json::parse(o.out);
  CHECK(j["gamma1"][0].get<double>() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(j["gamma2"][0].get<double>()) < 1e-15);
  CHECK(j["delta"].get<double>() == doctest::Approx(-0.5).epsilon(1e-15));

  const Outcome text = run_cli({"gamma", "--function", "f4", "--lambda", "0.5"});
  CHECK(text.code == 0);
  CHECK(text.out.find("delta  = -0.5") != std::string::npos);
}

TEST_CASE("gamma accepts options before or after the subcommand") {
  const Outcome a = run_cli({"--function", "koebe", "--theta", "1", "gamma", "--format", "json"});
  const Outcome b = run_cli({"gamma", "--format", "json", "--function", "koebe", "--theta", "1"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("bounds for M(1)") {
  const Outcome o = run_cli({"bounds", "--class", "M", "--alpha", "1", "--format", "json"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j["lower"].get<double>() == doctest::Approx(-0.316228).epsilon(1e-6));
  CHECK(j["upper"].get<double>() == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(j["upper_sharp"].get<bool>());
  CHECK_FALSE(j["lower_sharp"].get<bool>());
}

TEST_CASE("JSON output round-trips exactly") {
  for (const auto& [letter, p, spec] : std::vector<std::tuple<std::string, std::string, ClassSpec>>{
           {"M", "0.7", ClassSpec::M(0.7)}, {"U", "0.3", ClassSpec::U(0.3)}, {"G", "0.9", ClassSpec::G(0.9)}}) {
    const std::string flag = letter == "U" ? "--lambda" : "--alpha";
    const Outcome o = run_cli({"bounds", "--class", letter, flag, p, "--format", "json"});
    REQUIRE(o.code == 0);
    const json j = json::parse(o.out);
    const BoundPair b = bound_delta(spec);
    CHECK(j["lower"].get<double>() == b.lower);
    CHECK(j["upper"].get<double>() == b.upper);
  }
}

TEST_CASE("CSV output round-trips exactly") {
  const Outcome o = run_cli({"bounds", "--class", "M", "--alpha", "2.3", "--format", "csv"});
  REQUIRE(o.code == 0);
  const CsvTable t = CsvTable::parse(o.out);
  REQUIRE(t.rows.size() == 1);
  const BoundPair b = bound_delta(ClassSpec::M(2.3));
  CHECK(cell(t, 0, "lower") == b.lower);
  CHECK(cell(t, 0, "upper") == b.upper);
  CHECK(o.out.find('\r') == std::string::npos);

  // write -> parse -> write is the identity
  std::ostringstream again;
  t.write(again);
  CHECK(again.str() == o.out);

  for (double x : {0.1, 1.0 / 3, -4.0 / 21, 1e-300, 6.02214076e23, std::sqrt(2.0)}) {
    CHECK(std::strtod(format_real(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("sweep tables") {
  const Outcome u = run_cli({"sweep", "--class", "U", "--step", "0.05", "--resolution", "32", "--format", "csv"});
  REQUIRE(u.code == 0);
  const CsvTable tu = CsvTable::parse(u.out);
  CHECK(tu.header == std::vector<std::string>{"param", "bound_lower", "bound_upper", "search_min", "search_max"});
  REQUIRE(tu.rows.size() == 20);
  CHECK(cell(tu, 9, "param") == 0.5);
  CHECK(cell(tu, 9, "bound_lower") == doctest::Approx(-0.5).epsilon(1e-15));

  const Outcome g = run_cli({"sweep", "--class", "G", "--step", "0.1", "--resolution", "32", "--format", "csv"});
  REQUIRE(g.code == 0);
  const CsvTable tg = CsvTable::parse(g.out);
  REQUIRE(tg.rows.size() == 10);
  CHECK(cell(tg, 9, "param") == 1.0);
  CHECK(cell(tg, 9, "bound_lower") == doctest::Approx(-0.190476).epsilon(1e-6));
  CHECK(cell(tg, 9, "bound_upper") == doctest::Approx(0.083333).epsilon(1e-6));

  const Outcome m = run_cli({"sweep", "--class", "M", "--step", "0.1", "--alpha-max", "2", "--resolution", "24",
                             "--format", "csv"});
  REQUIRE(m.code == 0);
  const CsvTable tm = CsvTable::parse(m.out);
  bool has_breakpoint = false;
  for (std::size_t r = 1; r + 1 < tm.rows.size(); ++r) {
    if (cell(tm, r, "param") != kMBreakpoint) continue;
    has_breakpoint = true;
    CHECK(std::abs(cell(tm, r, "bound_lower") - (std::sqrt(3.0) - 2)) < 1e-12);
    // no jump across the branch change: neighbours sit on either side, close by
    CHECK(cell(tm, r - 1, "param") == doctest::Approx(1.3));
    CHECK(cell(tm, r + 1, "param") == doctest::Approx(1.4));
    CHECK(std::abs(cell(tm, r, "bound_lower") - cell(tm, r - 1, "bound_lower")) < 0.01);
    CHECK(std::abs(cell(tm, r + 1, "bound_lower") - cell(tm, r, "bound_lower")) < 0.01);
  }
  CHECK(has_breakpoint);
}

TEST_CASE("verify --all passes and is byte-for-byte deterministic") {
  const Outcome a = run_cli({"verify", "--all"});
  const Outcome b = run_cli({"verify", "--all"});
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("all checks passed") != std::string::npos);

  const Outcome j1 = run_cli({"verify", "--all", "--format", "json"});
  const Outcome j2 = run_cli({"verify", "--all", "--format", "json", "--parallel"});
  CHECK(j1.code == 0);
  CHECK(j1.out == j2.out);
  CHECK(json::parse(j1.out)["pass"].get<bool>());
}

TEST_CASE("verify of a single pair") {
  CHECK(run_cli({"verify", "--function", "f5", "--lambda", "0.3", "--class", "U"}).code == 0);
  CHECK(run_cli({"verify", "--function", "koebe", "--class", "G", "--alpha", "1"}).code == cli::kExitCheckFailed);
  CHECK(run_cli({"verify"}).code == cli::kExitUsage);
}

TEST_CASE("membership exit codes") {
  CHECK(run_cli({"membership", "--function", "f2", "--class", "U", "--lambda", "1"}).code == 0);
  const Outcome bad = run_cli({"membership", "--function", "koebe", "--class", "G", "--alpha", "1", "--format", "json"});
  CHECK(bad.code == cli::kExitCheckFailed);
  CHECK(json::parse(bad.out)["worst_margin"].get<double>() < 0.0);
  CHECK(run_cli({"membership", "--function", "koebe", "--class", "S"}).code == cli::kExitUsage);
}

TEST_CASE("search and scan") {
  const Outcome s = run_cli({"search", "--class", "U", "--lambda", "0.25", "--resolution", "64", "--format", "json"});
  REQUIRE(s.code == 0);
  const json j = json::parse(s.out);
  CHECK(j["search"]["body"] == "proof relaxation");
  CHECK(std::abs(j["search"]["max_delta"].get<double>() - 0.125) < 2e-3);

  const Outcome v = run_cli({"search", "--class", "G", "--alpha", "0.3", "--samples", "2000", "--seed", "5",
                             "--resolution", "32", "--format", "json"});
  CHECK(v.code == 0);
  CHECK(v.out == run_cli({"search", "--class", "G", "--alpha", "0.3", "--samples", "2000", "--seed", "5",
                          "--resolution", "32", "--format", "json"}).out);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run_cli({"gamma", "--function", "f9"}).code == cli::kExitUsage);
  CHECK(run_cli({"gamma", "--function", "f4", "--lambda", "0.2"}).code == cli::kExitUsage);
  CHECK(run_cli({"bounds", "--class", "U", "--lambda", "2"}).code == cli::kExitUsage);
  CHECK(run_cli({"bounds", "--class", "X"}).code == cli::kExitUsage);
  CHECK(run_cli({"search", "--class", "M", "--alpha", "1", "--resolution", "8"}).code == cli::kExitUsage);
  CHECK(run_cli({"membership", "--function", "koebe", "--class", "M", "--alpha", "0", "--radii", "0.5,1.2"}).code ==
        cli::kExitUsage);
  const Outcome o = run_cli({"gamma", "--bogus"});
  CHECK(o.code == cli::kExitUsage);
  CHECK(o.err.find("Usage") != std::string::npos);
}

TEST_CASE("--out writes the report to a file") {
  const auto path = std::filesystem::temp_directory_path() / "logcoef_cli_out_test.csv";
  std::filesystem::remove(path);
  const Outcome o = run_cli({"bounds", "--class", "G", "--alpha", "1", "--format", "csv", "--out", path.string()});
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const CsvTable t = CsvTable::parse(ss.str());
  REQUIRE(t.rows.size() == 1);
  CHECK(cell(t, 0, "lower") == bound_delta(ClassSpec::G(1.0)).lower);
  std::filesystem::remove(path);
}

TEST_CASE("the binary honours the exit-status contract") {
  const auto [ok, out] = run_binary("gamma --function f4 --lambda 0.5");
  CHECK(ok == 0);
  CHECK(out.find("-0.5") != std::string::npos);
  CHECK(run_binary("membership --function koebe --class G --alpha 1").first == 1);
  CHECK(run_binary("nonsense").first == 2);
  CHECK(run_binary("--help").first == 0);
}
