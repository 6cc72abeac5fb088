#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(KNOTDANCE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp(const std::string& name, const std::string& contents) {
  const std::string path = std::string("/tmp/knotdance_cli_") + name;
  std::ofstream out(path);
  out << contents;
  return path;
}

}  // namespace

TEST_CASE("compute reports the trefoil numbers") {
  const std::string path = write_temp("trefoil.txt", "# trefoil\n1+ 2- 3+ 1- 2+ 3-\n");
  const RunResult r = run_cli("compute " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("bridges: 3") != std::string::npos);
  CHECK(r.output.find("over-first: 2") != std::string::npos);
  CHECK(r.output.find("smoothing: 2") != std::string::npos);
}

TEST_CASE("compute json-lines is machine readable and deterministic") {
  const std::string path = write_temp("two.txt", "1+ 2- 3+ 1- 2+ 3-\nv1 v1\n");
  const RunResult a = run_cli("--format json-lines compute " + path + " --trace");
  CHECK(a.exit_code == 0);
  const RunResult b = run_cli("--format json-lines compute " + path + " --trace");
  CHECK(a.output == b.output);

  std::istringstream lines(a.output);
  std::string line;
  int records = 0;
  while (std::getline(lines, line)) {
    const auto record = nlohmann::json::parse(line);
    CHECK(record.contains("code"));
    CHECK(record.contains("bridges"));
    ++records;
  }
  CHECK(records == 2);
  const auto first = nlohmann::json::parse(a.output.substr(0, a.output.find('\n')));
  CHECK(first["dance"]["overFirst"] == 2);
  CHECK(first["bounds"]["br"] == 3);
  CHECK(first["bounds"]["da"] == 2);
}

TEST_CASE("compute flags parse errors with line numbers and exit 2") {
  const std::string path = write_temp("bad.txt", "1a+ 2-\n1+ 1-\n");
  const RunResult r = run_cli("compute " + path);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("line 1") != std::string::npos);
  CHECK(r.output.find("1a+") != std::string::npos);
  // The valid line is still processed.
  CHECK(r.output.find("line 2") != std::string::npos);
}

TEST_CASE("compute on an empty file succeeds with no records") {
  const std::string path = write_temp("empty.txt", "");
  const RunResult r = run_cli("compute " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.empty());
}

TEST_CASE("single-rule compute honours --rule and --restrict-starts") {
  const std::string path = write_temp("rule.txt", "1+ 2- 2+ 1-\n");
  const RunResult r = run_cli("compute " + path + " --rule under");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("under-first/unrestricted: 1") != std::string::npos);
  const RunResult restricted = run_cli("compute " + path + " --rule over --restrict-starts");
  CHECK(restricted.output.find("over-first/unrestricted: 2") != std::string::npos);
  // The flag has no bridge-start reading under the under-first rule.
  const RunResult under = run_cli("compute " + path + " --rule under --restrict-starts");
  CHECK(under.exit_code == 0);
  CHECK(under.output.find("under-first/unrestricted: 1") != std::string::npos);
}

TEST_CASE("reduce pipeline output") {
  const std::string path = write_temp("reduce.txt", "1+ 2- 3+ 1- 2+ 3-\nv1 v1\n1+ 1-\n");
  const RunResult r = run_cli("reduce " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("reduced: 4+ 1+ 2- 4- 3+ 2+ 1- 3-") != std::string::npos);
  CHECK(r.output.find("bridges: 3 -> 2") != std::string::npos);
  CHECK(r.output.find("no-classical-crossings") != std::string::npos);
  CHECK(r.output.find("already-minimal") != std::string::npos);
}

TEST_CASE("closure command") {
  CHECK(run_cli("closure \"n=2 s1 s1 s1\"").output == "1+ 2- 3+ 1- 2+ 3-\n");
  const RunResult bad = run_cli("closure \"n=2 s1 s1\"");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("2 components") != std::string::npos);
  const RunResult schedule = run_cli("closure \"n=2 s1 s1 v1\" --schedule");
  CHECK(schedule.exit_code == 0);
  CHECK(schedule.output.find("1+ 2- v3 1- 2+ v3") != std::string::npos);
  CHECK(schedule.output.find("t |") != std::string::npos);
}

TEST_CASE("a blank line is the crossingless diagram") {
  const std::string path = write_temp("blank.txt", "\n1+ 1-\n");
  const RunResult r = run_cli("compute " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("bridges: 0") != std::string::npos);
  CHECK(r.output.find("over-first: 1") != std::string::npos);
  CHECK(r.output.find("line 2: 1+ 1-") != std::string::npos);
}

TEST_CASE("trace command renders a table") {
  const RunResult r = run_cli("trace --code \"1+ 1-\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("C1") != std::string::npos);
  const RunResult fixed = run_cli("trace --code \"1+ 2- 3+ 1- 2+ 3-\" --starts 0,2");
  CHECK(fixed.exit_code == 0);
  const RunResult infeasible = run_cli("trace --code \"1+ 2- 3+ 1- 2+ 3-\" --starts 0");
  CHECK(infeasible.exit_code == 2);

  const std::string path = write_temp("trace.txt", "1+ 1-\n1+ 2- 2+ 1-\n");
  const RunResult file = run_cli("trace " + path + " --rule under");
  CHECK(file.exit_code == 0);
  CHECK(file.output.find("line 1") != std::string::npos);
  CHECK(file.output.find("line 2") != std::string::npos);
}

TEST_CASE("enumerate command") {
  const RunResult r = run_cli("enumerate --classical 1 --virtual 0");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "1+ 1-\n");
  const RunResult capped = run_cli("enumerate --classical 6 --virtual 0");
  CHECK(capped.exit_code == 3);
}

TEST_CASE("check command passes at desk scale and caps the budget") {
  const RunResult r = run_cli("check --max-classical 2 --max-virtual 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PASS retrograde-duality") != std::string::npos);
  CHECK(r.output.find("FAIL") == std::string::npos);
  const RunResult capped = run_cli("check --max-classical 6 --max-virtual 0");
  CHECK(capped.exit_code == 3);
}
