#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "vasskit/json_io.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs a shell pipeline in which the token CLI stands for the tool.
Result sh(std::string command) {
  const std::string cli = VASSKIT_CLI;
  for (std::size_t at = command.find("CLI"); at != std::string::npos; at = command.find("CLI", at + cli.size())) {
    command.replace(at, 3, cli);
  }
  Result r;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("gen, compile and solve compose through pipes") {
  auto r = sh("CLI gen weak --b 3 | CLI solve - --format json");
  REQUIRE(r.code == 0);
  auto j = vasskit::Json::parse(r.out);
  CHECK(j["verdict"] == "found");
  CHECK(j["length"] == "10");

  auto c = sh("CLI gen exp --n 1 | CLI compile - --format json | CLI solve - --format json");
  REQUIRE(c.code == 0);
  CHECK(vasskit::Json::parse(c.out)["length"] == "16");
}

TEST_CASE("exit codes") {
  CHECK(sh("CLI gen exp --n 2 --x0 3 | CLI solve - --bound 20").code == 1);
  CHECK(sh("CLI gen exp --n 3 | CLI solve - --max-configs 10").code == 3);
  CHECK(sh("CLI gen hp --c 3 --d 2 | CLI flat -").code == 1);
  CHECK(sh("CLI gen exp --n 2 | CLI flat -").code == 0);
  CHECK(sh("CLI verify arith").code == 0);
  CHECK(sh("CLI fractions --k 3").code == 0);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(sh("CLI").code == 2);
  CHECK(sh("CLI bogus").code == 2);
  CHECK(sh("printf 'counters x\\nfoo\\n' | CLI compile -").code == 2);
  CHECK(sh("CLI gen hp --c 4 --d 2").code == 2);
  CHECK(sh("CLI verify nope").code == 2);
  CHECK(sh("CLI solve /nonexistent/file.cp").code == 2);
  CHECK(sh("CLI gen exp --n 2 --format yaml").code == 2);
}

TEST_CASE("output is deterministic") {
  auto a = sh("CLI measure exp --from 1 --to 2 --no-timing --format json");
  auto b = sh("CLI measure exp --from 1 --to 2 --no-timing --format json");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto rows = vasskit::Json::parse(a.out);
  CHECK(rows.size() == 2);
  CHECK(sh("CLI gen np --s0 3 --set 1,2 | CLI compile - --format json").out ==
        sh("CLI gen np --s0 3 --set 1,2 | CLI compile - --format json").out);
}

TEST_CASE("fractions text output") {
  auto r = sh("CLI fractions --k 2");
  CHECK(r.out.find("23409/16384") != std::string::npos);
}

TEST_CASE("--out writes to a file") {
  auto path = std::filesystem::temp_directory_path() / "vasskit_cli_out.cp";
  std::filesystem::remove(path);
  REQUIRE(sh("CLI gen weak --b 5 --out " + path.string()).code == 0);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first == "counters x y");
  std::filesystem::remove(path);
}

TEST_CASE("expand prints numbered lines that parse back") {
  auto r = sh("CLI gen weak --b 2 | CLI expand - | CLI expand -");
  REQUIRE(r.code == 0);
  CHECK(r.out == sh("CLI gen weak --b 2 | CLI expand -").out);
}
