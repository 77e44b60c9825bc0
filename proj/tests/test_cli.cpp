#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "superosc/cli/run.hpp"
#include "superosc/io/points_parser.hpp"
#include "superosc/io/signal_dump.hpp"

using namespace superosc;
namespace fs = std::filesystem;

namespace {

const Precision kP(256);

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / ("superosc_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CliResult {
  int status;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "superosc");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream err;
  int status = cli::main_entry(static_cast<int>(argv.size()), argv.data(), err);
  return {status, err.str()};
}

io::SignalDump run_to_dump(std::vector<std::string> args, const std::string& name) {
  fs::path out = scratch_dir() / name;
  args.push_back("--out");
  args.push_back(out.string());
  auto r = run_cli(args);
  REQUIRE_MESSAGE(r.status == 0, r.err);
  return io::parse_csv(slurp(out));
}

std::string meta(const io::SignalDump& dump, const std::string& key) {
  for (const auto& [k, v] : dump.meta)
    if (k == key) return v;
  return {};
}

}  // namespace

TEST_CASE("design-real single point gives sinc samples") {
  auto dump = run_to_dump({"--command", "design-real", "--points", "0:1", "--mu", "1", "--sample", "-5:5:11"},
                          "single.csv");
  CHECK(dump.columns == std::vector<std::string>{"t", "value"});
  REQUIRE(dump.rows.size() == 11);
  const Precision p(std::stol(meta(dump, "precision_bits")));
  BigReal tol = ldexp(BigReal(1, p), -static_cast<long>(p.bits() / 2));
  CHECK(abs(BigReal::parse(dump.rows[5][1], p) - 1) < tol);
  for (std::size_t i = 0; i < 11; ++i) {
    BigReal t = BigReal::parse(dump.rows[i][0], p);
    CHECK(abs(t - (static_cast<long>(i) - 5)) < tol);
    if (i == 5) continue;
    CHECK(abs(BigReal::parse(dump.rows[i][1], p) - sin(t) / t) < tol);
  }
  CHECK(meta(dump, "command") == "design-real");
  CHECK(meta(dump, "version") == std::string(io::kArtifactVersion));
}

TEST_CASE("design-periodic with too many points reports the bound") {
  auto r = run_cli({"--command", "design-periodic", "--big-m", "1", "--points", "0:1, 1/10:1, 1/5:1, 3/10:1"});
  CHECK(r.status == exit_code(ErrorKind::TooManyPoints));
  auto doc = nlohmann::json::parse(r.err);
  CHECK(doc["error"] == "TooManyPoints");
  CHECK(doc["exit_code"] == r.status);
  CHECK(doc["message"].get<std::string>().find("2M+1") != std::string::npos);
}

TEST_CASE("design-periodic reproduces figure 3 amplitudes") {
  auto dump = run_to_dump({"--command", "design-periodic", "--big-m", "3", "--points",
                           "-3/10:1, -1/5:-1, -1/10:1, 0:-1, 1/10:1, 1/5:-1, 3/10:1", "--sample", "-3/10:3/10:7"},
                          "fig3_points.csv");
  REQUIRE(dump.rows.size() == 7);
  const Precision p(std::stol(meta(dump, "precision_bits")));
  for (std::size_t i = 0; i < 7; ++i) {
    long expected = i % 2 == 0 ? 1 : -1;
    CHECK(abs(BigReal::parse(dump.rows[i][1], p) - expected) < BigReal::parse("1e-20", p));
  }
  CHECK(BigReal::parse(meta(dump, "max_abs_imag"), p) < BigReal::parse("1e-20", p));
}

TEST_CASE("point parsing") {
  auto single = io::parse_points("0:1", kP);
  REQUIRE(single.size() == 1);
  CHECK(single.times()[0].is_zero());
  CHECK(single.amplitudes()[0] == BigReal(1, kP));

  fs::path file = scratch_dir() / "fig2.txt";
  std::ofstream(file) << "# figure 2\n1/10:-1, 1/5:1\n3/10:-1 2/5:1\n1/2:-1\n";
  auto five = io::parse_points(file.string(), kP);
  REQUIRE(five.size() == 5);
  CHECK(five.times()[0] == BigReal::rational(1, 10, kP));
  CHECK(five.times()[4] == BigReal::rational(1, 2, kP));
  CHECK(five.amplitudes()[3] == BigReal(1, kP));

  fs::path dup = scratch_dir() / "dup.txt";
  std::ofstream(dup) << "0:1\n1/3:2\n1/3:5\n";
  try {
    io::parse_points(dup.string(), kP);
    FAIL("expected DuplicateTimes");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateTimes);
  }

  try {
    io::parse_point_text("0:1\n1/3:x2\n", kP);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
  try {
    io::parse_point_text("0:1, 2", kP);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 6);
  }

  auto r = run_cli({"--command", "design-real", "--points", "0:1, 1:?"});
  CHECK(r.status == exit_code(ErrorKind::ParseError));
  auto doc = nlohmann::json::parse(r.err);
  CHECK(doc["line"] == 1);
  CHECK(doc["column"] == 8);
}

TEST_CASE("CSV round trip keeps every serialized digit") {
  const Precision p(200);
  io::SignalDump dump;
  dump.add_meta("command", "test");
  dump.add_meta("note", "a: b");
  dump.columns = {"t", "value"};
  RealVector values{BigReal::rational(1, 3, p), -pi(p), BigReal::parse("1e-30", p), BigReal(p)};
  for (std::size_t i = 0; i < values.size(); ++i) {
    dump.add_row({std::to_string(i), io::format_value(values[i], p)});
  }
  auto back = io::parse_csv(io::render(dump, io::Format::Csv));
  CHECK(back.meta == dump.meta);
  CHECK(back.columns == dump.columns);
  CHECK(back.rows == dump.rows);
  const long digits = static_cast<long>(std::ceil(0.3 * static_cast<double>(p.bits())));
  for (std::size_t i = 0; i < values.size(); ++i) {
    BigReal parsed = BigReal::parse(back.rows[i][1], p);
    BigReal bound = abs(values[i]) * pow(BigReal(10, p), -(digits - 1));
    CHECK(abs(parsed - values[i]) <= bound);
  }
  std::string third = io::format_value(BigReal::rational(1, 3, p), p);
  CHECK(std::count(third.begin(), third.end(), '3') == digits);

  auto json = nlohmann::json::parse(io::render(dump, io::Format::Json));
  CHECK(json["columns"][1] == "value");
  CHECK(json["rows"][0][1] == dump.rows[0][1]);
  CHECK(json["meta"]["note"] == "a: b");
}

TEST_CASE("identical configurations produce identical bytes") {
  const std::vector<std::vector<std::string>> configs{
      {"--command", "design-real", "--points", "1/10:-1, 1/5:1, 3/10:-1, 2/5:1, 1/2:-1", "--mu", "1"},
      {"--command", "eigen", "--n", "5", "--delta", "1/10"},
      {"--command", "stretch", "--points", "0:1, 1/10:-1, 1/5:1"},
      {"--command", "ft", "--n", "3", "--delta", "1/2", "--sample", "1/10:10:20"},
      {"--command", "sensitivity", "--points", "0:1, 1/10:-1, 1/5:1, 3/10:-1, 2/5:1"},
      {"--command", "sweep", "--big-m", "5", "--format", "json"},
  };
  int idx = 0;
  for (auto args : configs) {
    CAPTURE(args[1]);
    fs::path a = scratch_dir() / ("det_a_" + std::to_string(idx));
    fs::path b = scratch_dir() / ("det_b_" + std::to_string(idx++));
    auto first = args, second = args;
    first.insert(first.end(), {"--out", a.string()});
    second.insert(second.end(), {"--out", b.string()});
    REQUIRE(run_cli(first).status == 0);
    REQUIRE(run_cli(second).status == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
  }
}

TEST_CASE("precision resolution order") {
  const std::vector<std::string> base{"--command", "design-real", "--points", "0:1", "--sample", "-1:1:3"};
  auto automatic = run_to_dump(base, "prec_auto.csv");
  CHECK(meta(automatic, "precision_bits") == "128");

  ::setenv("SUPEROSC_PRECISION_BITS", "300", 1);
  auto from_env = run_to_dump(base, "prec_env.csv");
  CHECK(meta(from_env, "precision_bits") == "300");

  auto explicit_flag = base;
  explicit_flag.insert(explicit_flag.end(), {"--precision-bits", "400"});
  auto from_flag = run_to_dump(explicit_flag, "prec_flag.csv");
  CHECK(meta(from_flag, "precision_bits") == "400");

  ::setenv("SUPEROSC_PRECISION_BITS", "many", 1);
  CHECK(run_cli(base).status == exit_code(ErrorKind::InvalidArgument));
  ::unsetenv("SUPEROSC_PRECISION_BITS");
}

TEST_CASE("eigen table carries the asymptotic column") {
  auto dump = run_to_dump({"--command", "eigen", "--n", "5", "--delta", "1/100"}, "eigen.csv");
  CHECK(dump.columns == std::vector<std::string>{"k", "lambda", "lambda_asymptotic"});
  REQUIRE(dump.rows.size() == 5);
  const Precision p(std::stol(meta(dump, "precision_bits")));
  BigReal ratio = BigReal::parse(dump.rows[4][1], p) / BigReal::parse(dump.rows[4][2], p);
  CHECK(abs(ratio - 1) < BigReal::parse("0.1", p));
}

TEST_CASE("command and sampling validation") {
  CHECK(cli::parse_command("reproduce-figure") == cli::Command::ReproduceFigure);
  CHECK(cli::command_name(cli::Command::Ft) == "ft");
  CHECK_THROWS_AS(cli::parse_command("plot"), Error);
  auto s = cli::Sampling::parse("-1/2:3:17");
  CHECK(s.t_min == "-1/2");
  CHECK(s.t_max == "3");
  CHECK(s.count == 17);
  CHECK_THROWS_AS(cli::Sampling::parse("0:1"), ParseError);
  CHECK_THROWS_AS(cli::Sampling::parse("0:1:x"), ParseError);
  CHECK(run_cli({"--command", "design-real", "--points", "0:1", "--sample", "1:0:5"}).status ==
        exit_code(ErrorKind::InvalidArgument));
  CHECK(run_cli({"--command", "nope"}).status == exit_code(ErrorKind::InvalidArgument));
}

TEST_CASE("reproduce-figure 1 to 3 through the installed binary") {
  const char* binary = std::getenv("SUPEROSC_CLI");
  if (binary == nullptr) {
    MESSAGE("SUPEROSC_CLI not set; skipping binary run");
    return;
  }
  fs::path dir = scratch_dir() / "figures";
  for (int figure = 1; figure <= 3; ++figure) {
    std::string cmd = std::string(binary) + " --command reproduce-figure --figure " + std::to_string(figure) +
                      " --out " + dir.string();
    int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
  }
  auto fig2 = io::parse_csv(slurp(dir / "fig2.csv"));
  const Precision p(std::stol(meta(fig2, "precision_bits")));
  CHECK(BigReal::parse(meta(fig2, "sup_error_interpolant"), p) < BigReal::parse(meta(fig2, "sup_error_taylor"), p));
  auto fig3 = io::parse_csv(slurp(dir / "fig3.csv"));
  CHECK(fig3.columns == std::vector<std::string>{"t", "periodic", "real"});
  CHECK(io::parse_csv(slurp(dir / "fig1.csv")).rows.size() == 801);

  std::string bad = std::string(binary) + " --command design-periodic --big-m 1 --points '0:1,1:1,2:1,3:1'" +
                    " 2>/dev/null";
  int status = std::system(bad.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == exit_code(ErrorKind::TooManyPoints));
}
