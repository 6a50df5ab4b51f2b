#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "support/json_schema.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  std::string output;
  int exit_code = -1;
};

/// Runs the gpword binary with the given argument string through the shell.
RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string command = std::string(GPWORD_CLI_PATH) + " " + args +
                              (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

json load_schema(const std::string& name) {
  std::ifstream in(std::string(GPWORD_SCHEMA_DIR) + "/" + name + ".json");
  REQUIRE(in.good());
  json schema;
  in >> schema;
  return schema;
}

/// Parses stdout as JSON and validates it against the subcommand's schema.
json checked_json(const std::string& subcommand, const std::string& args) {
  const RunResult result = run_cli("--format json " + args);
  CAPTURE(args);
  REQUIRE(result.exit_code == 0);
  const json payload = json::parse(result.output);
  CHECK(gpword::testing::schema_violations(payload, load_schema(subcommand)) == "");
  return payload;
}

const char* kPaperPhase = "'alpha=sqrt(2); arc=(-1/4,1/4)'";

std::filesystem::path write_parity_automaton() {
  const auto path = std::filesystem::temp_directory_path() / "gpword_parity.json";
  std::ofstream out(path);
  out << R"({"k": 2, "states": ["even", "odd"], "initial": "even",
             "transitions": {"even": ["even", "odd"], "odd": ["even", "odd"]},
             "outputs": {"even": 0, "odd": 1}})";
  return path;
}

}  // namespace

TEST_CASE("eval-gp text and json") {
  const RunResult text = run_cli("eval-gp 'floor(sqrt(2)*n^2)' 0 2 10");
  CHECK(text.exit_code == 0);
  CHECK(text.output == "f(0) = 0\nf(2) = 5\nf(10) = 141\n");

  const json payload = checked_json("eval-gp", "eval-gp 'frac(sqrt(2)*n^2)' 2");
  CHECK(payload["expression"] == "frac(sqrt(2)*n^2)");
  REQUIRE(payload["values"].size() == 1);
  CHECK(payload["values"][0]["n"] == "2");
  CHECK(payload["values"][0]["value"] == "-5 + 4*sqrt(2)");
  CHECK(payload["values"][0]["approx"].get<double>() == doctest::Approx(0.656854));

  // Values beyond double range appear as exact strings with a null approx.
  const json huge =
      checked_json("eval-gp", "eval-gp 'n^2' 99999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999999");
  CHECK(huge["values"][0]["approx"].is_null());
}

TEST_CASE("eval-automatic accepts builtin and file automata") {
  const RunResult text = run_cli("eval-automatic thue-morse 0 1 2 3");
  CHECK(text.exit_code == 0);
  CHECK(text.output == "x(0) = 0\nx(1) = 1\nx(2) = 1\nx(3) = 0\n");

  const json payload = checked_json("eval-automatic", "eval-automatic thue-morse 1024 1023");
  CHECK(payload["base"] == 2);
  CHECK(payload["values"][0]["symbol"] == 1);
  CHECK(payload["values"][1]["symbol"] == 0);

  const auto parity = write_parity_automaton();
  const RunResult file_run = run_cli("eval-automatic " + parity.string() + " 0 1 2 3 4 5");
  CHECK(file_run.exit_code == 0);
  CHECK(file_run.output ==
        "x(0) = 0\nx(1) = 1\nx(2) = 0\nx(3) = 1\nx(4) = 0\nx(5) = 1\n");
}

TEST_CASE("eval-phase matches the frozen prefix") {
  const RunResult text = run_cli(std::string("eval-phase ") + kPaperPhase + " 0 1 2 3 4 5 6 7");
  CHECK(text.exit_code == 0);
  CHECK(text.output == "a(0) = 1\na(1) = 0\na(2) = 0\na(3) = 0\na(4) = 0\na(5) = 0\n"
                       "a(6) = 1\na(7) = 0\n");

  const json payload =
      checked_json("eval-phase", std::string("eval-phase ") + kPaperPhase + " 6");
  CHECK(payload["phase"] == "alpha=sqrt(2); arc=(-1/4,1/4)");
  CHECK(payload["values"][0]["symbol"] == 1);
}

TEST_CASE("factors modes: certified, explicit prefix, doubling") {
  const json certified = checked_json("factors", "factors thue-morse --len 3 --certified");
  CHECK(certified["mode"] == "certified");
  CHECK(certified["certified"] == true);
  CHECK(certified["prefix_used"] == 12);
  CHECK(certified["count"] == 6);
  CHECK(certified["factors"] ==
        json::array({"001", "010", "011", "100", "101", "110"}));

  // A 4-symbol prefix of Thue-Morse (0110) sees only three of the four words.
  const json prefix = checked_json("factors", "factors thue-morse --len 2 --prefix 4");
  CHECK(prefix["mode"] == "prefix");
  CHECK(prefix["certified"] == false);
  CHECK(prefix["count"] == 3);

  const json doubling = checked_json("factors", "factors thue-morse --len 4");
  CHECK(doubling["mode"] == "doubling");
  CHECK(doubling["certified"] == false);
  CHECK(doubling["stable"] == true);
  CHECK(doubling["count"] == 10);

  // --certified is only valid for the Thue-Morse sequence.
  const auto parity = write_parity_automaton();
  const RunResult refused =
      run_cli("factors " + parity.string() + " --len 3 --certified", /*merge_stderr=*/true);
  CHECK(refused.exit_code == 2);
  CHECK(refused.output.find("error:") != std::string::npos);
}

TEST_CASE("decide-factor reports assignments and witnesses") {
  const json accepted = checked_json(
      "decide-factor", std::string("decide-factor ") + kPaperPhase + " 110100101 --witness");
  CHECK(accepted["accepted"] == true);
  CHECK(accepted["word"] == "110100101");
  REQUIRE(accepted.contains("floor_assignment"));
  CHECK(accepted["floor_assignment"].size() == 9);
  REQUIRE(accepted.contains("witness"));
  const double beta = accepted["witness"]["beta"]["approx"].get<double>();
  const double gamma = accepted["witness"]["gamma"]["approx"].get<double>();
  CHECK(beta > 0.0);
  CHECK(beta < 1.0);
  CHECK(gamma > 0.0);
  CHECK(gamma < 1.0);

  const json rejected =
      checked_json("decide-factor", std::string("decide-factor ") + kPaperPhase + " 0000000");
  CHECK(rejected["accepted"] == false);
  CHECK_FALSE(rejected.contains("floor_assignment"));
  CHECK_FALSE(rejected.contains("witness"));

  const RunResult bad_word =
      run_cli(std::string("decide-factor ") + kPaperPhase + " 01x", /*merge_stderr=*/true);
  CHECK(bad_word.exit_code == 2);
}

TEST_CASE("common-factors small run with deterministic output") {
  const std::string args =
      std::string("common-factors thue-morse ") + kPaperPhase + " --max-len 4";
  const json payload = checked_json("common-factors", args);
  CHECK(payload["counts_by_length"] == json::array({2, 4, 6, 10}));
  CHECK(payload["longest"] == 4);
  CHECK(payload["complete"] == false);
  CHECK(payload["maximal"].size() == 10);

  // Byte-identical repeats, independent of the worker count.
  const RunResult once = run_cli("--format json " + args);
  const RunResult again = run_cli("--format json " + args);
  const RunResult parallel = run_cli("--format json " + args + " --jobs 2");
  CHECK(once.exit_code == 0);
  CHECK(once.output == again.output);
  CHECK(once.output == parallel.output);

  const RunResult text_once = run_cli(args);
  const RunResult text_again = run_cli(args + " --jobs 3");
  CHECK(text_once.output == text_again.output);
}

TEST_CASE("kernel-collision pins the Thue-Morse coincidence") {
  const json payload = checked_json("kernel-collision", "kernel-collision thue-morse");
  CHECK(payload["kernel_size"] == 2);
  CHECK(payload["r"] == 2);
  CHECK(payload["s"] == 1);
  CHECK(payload["t"] == 2);
  CHECK(payload["modulus"] == 4);

  const RunResult text = run_cli("kernel-collision thue-morse");
  CHECK(text.output.find("r = 2, s = 1, t = 2") != std::string::npos);
}

TEST_CASE("sturmian emits the golden-ratio word") {
  const json payload =
      checked_json("sturmian", "sturmian '(sqrt(5)-1)/2' 0 --count 16");
  CHECK(payload["alpha"] == "-1/2 + 1/2*sqrt(5)");
  CHECK(payload["word"] == "0101101011011010");
  CHECK(payload["count"] == 16);
}

TEST_CASE("invalid inputs exit with status 2") {
  CHECK(run_cli("eval-gp 'sqrt(4)' 1").exit_code == 2);
  CHECK(run_cli("eval-automatic /nonexistent/automaton.json 3").exit_code == 2);
  CHECK(run_cli("eval-phase 'alpha=1/2; arc=(0,1/2)' 0").exit_code == 2);
  CHECK(run_cli("unknown-subcommand").exit_code == 2);
  CHECK(run_cli("factors thue-morse --len 3 --certified --prefix 9").exit_code == 2);
  CHECK(run_cli("sturmian 1/2 0 --count 4").exit_code == 2);
  CHECK(run_cli(std::string("common-factors thue-morse ") + kPaperPhase).exit_code == 2);

  // Diagnostics go to stderr, not stdout.
  const RunResult quiet = run_cli("eval-gp 'sqrt(4)' 1");
  CHECK(quiet.output.empty());
  const RunResult loud = run_cli("eval-gp 'sqrt(4)' 1", /*merge_stderr=*/true);
  CHECK(loud.output.find("error:") != std::string::npos);

  CHECK(run_cli("--help").exit_code == 0);
}
