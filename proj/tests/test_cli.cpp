#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef SHUFFLE_CLI_PATH
#error "SHUFFLE_CLI_PATH must point at the built binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string output;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path capture =
      fs::temp_directory_path() /
      ("shuffle-cli-" + std::to_string(::getpid()) + "-" +
       std::to_string(counter++) + ".out");
  std::string cmd = std::string(SHUFFLE_CLI_PATH) + " " + args + " > " +
                    capture.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(capture);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  std::error_code ec;
  fs::remove(capture, ec);
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("shuffle-cli-dir-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("help and argument parsing exit codes") {
  ::unsetenv("SHUFFLE_CACHE_DIR");
  REQUIRE(run_cli("--help").code == 0);
  REQUIRE(run_cli("classify --help").code == 0);
  REQUIRE(run_cli("").code == 2);               // a subcommand is required
  REQUIRE(run_cli("no-such-command").code == 2);
  REQUIRE(run_cli("classify 3").code == 2);     // missing n
}

TEST_CASE("classify output") {
  auto r = run_cli("classify 3 4");
  REQUIRE(r.code == 0);
  REQUIRE(r.output.find("ALTERNATING") != std::string::npos);
  REQUIRE(r.output.find("239500800") != std::string::npos);

  auto j = run_cli("classify 3 4 --format json");
  REQUIRE(j.code == 0);
  auto parsed = nlohmann::json::parse(j.output);
  REQUIRE(parsed["schema"] == 1);
  REQUIRE(parsed["case"] == "ALTERNATING");
  REQUIRE(parsed["order"] == "239500800");
  REQUIRE(parsed["two_transitive"] == true);
  REQUIRE(parsed["in_alternating"] == true);

  REQUIRE(run_cli("classify 1 5").code == 2);
  REQUIRE(run_cli("classify 3 0").code == 2);
}

TEST_CASE("compute runs the engine and reports agreement") {
  ::unsetenv("SHUFFLE_CACHE_DIR");
  auto r = run_cli("compute 3 2");
  REQUIRE(r.code == 0);
  REQUIRE(r.output.find("720") != std::string::npos);
  REQUIRE(r.output.find("[agrees]") != std::string::npos);

  auto full = run_cli("compute 2 6 --gens full");
  REQUIRE(full.code == 0);
  REQUIRE(full.output.find("7680") != std::string::npos);

  auto refused = run_cli("compute 3 200");
  REQUIRE(refused.code == 2);
  REQUIRE(refused.output.find("exceeds") != std::string::npos);
  REQUIRE(run_cli("compute 3 200 --max-degree 600").code == 0);
}

TEST_CASE("grid verification over a rectangle") {
  ::unsetenv("SHUFFLE_CACHE_DIR");
  auto r = run_cli("verify-grid --k 3 --n 1:4 --format csv");
  REQUIRE(r.code == 0);
  REQUIRE(r.output.rfind("k,n,", 0) == 0);
  // Header plus one line per deck.
  REQUIRE(std::count(r.output.begin(), r.output.end(), '\n') == 5);

  REQUIRE(run_cli("verify-grid --k 3 --n 200:300").code == 2);  // empty grid
  REQUIRE(run_cli("verify-grid --k 1:2 --n 2").code == 2);
  REQUIRE(run_cli("verify-grid --n 2").code == 2);  // --k is required
}

TEST_CASE("solve prints a checked descent") {
  auto r = run_cli("solve 3 6 4");
  REQUIRE(r.code == 0);
  REQUIRE(r.output.find("reached 0") != std::string::npos);

  REQUIRE(run_cli("solve 3 6 17").code == 2);  // the fixed bottom card
  REQUIRE(run_cli("solve 3 6 99").code == 2);
  REQUIRE(run_cli("solve 3 9 1").code == 2);   // deck without digit room
}

TEST_CASE("certificates round trip through files") {
  TempDir dir;
  fs::path cert = dir.path / "cert.json";
  auto made = run_cli("certify 3 6 --out " + cert.string());
  REQUIRE(made.code == 0);
  REQUIRE(fs::exists(cert));

  auto ok = run_cli("verify-certificate " + cert.string());
  REQUIRE(ok.code == 0);
  REQUIRE(ok.output.rfind("OK:", 0) == 0);

  // Semantic tampering: the replay fails with exit code 1.
  nlohmann::json j;
  {
    std::ifstream in(cert);
    j = nlohmann::json::parse(in);
  }
  j["traces"][5]["start"] = 4;
  fs::path bad = dir.path / "tampered.json";
  {
    std::ofstream os(bad);
    os << j.dump();
  }
  auto fail = run_cli("verify-certificate " + bad.string());
  REQUIRE(fail.code == 1);
  REQUIRE(fail.output.find("FAIL") != std::string::npos);

  // Unreadable input is a usage error, not a verification verdict.
  fs::path garbage = dir.path / "garbage.json";
  {
    std::ofstream os(garbage);
    os << "{ not json";
  }
  REQUIRE(run_cli("verify-certificate " + garbage.string()).code == 2);
  REQUIRE(run_cli("verify-certificate " +
                  (dir.path / "missing.json").string()).code == 2);

  // Decks without digit room cannot be certified.
  REQUIRE(run_cli("certify 3 9").code == 2);
  REQUIRE(run_cli("certify 2 12").code == 2);
}

TEST_CASE("fixed-point ratios from the command line") {
  auto r = run_cli("fpr 5 7 --tau \"(0 1)\"");
  REQUIRE(r.code == 0);
  REQUIRE(r.output.find("3/5") != std::string::npos);

  auto sampled = run_cli("fpr 6 7");
  REQUIRE(sampled.code == 0);
  REQUIRE(sampled.output.find("50 random pile permutations") !=
          std::string::npos);
  REQUIRE(sampled.output.find("50 matched, 0 mismatched") != std::string::npos);

  REQUIRE(run_cli("fpr 5 7 --tau \"(0 9)\"").code == 2);
}

TEST_CASE("projective ratio check from the command line") {
  auto r = run_cli("pgl-check 2");
  REQUIRE(r.code == 0);
  REQUIRE(r.output.find("24 distinct actions") != std::string::npos);
  REQUIRE(r.output.find("PASS") != std::string::npos);

  auto refused = run_cli("pgl-check 9");
  REQUIRE(refused.code == 2);
  REQUIRE(refused.output.find("refused") != std::string::npos);
  REQUIRE(run_cli("pgl-check 1").code == 2);
}
