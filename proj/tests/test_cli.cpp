#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <fstream>
#include <sstream>

#include "mc/io.hpp"
#include "mc/kripke.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run(const std::string& args) {
  fs::path out = fs::temp_directory_path() / "mcheck_cli_test.out";
  std::string command = std::string(MCHECK_BIN) + " " + args + " > " +
                        out.string() + " 2>/dev/null";
  int status = std::system(command.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, mc::read_text_file(out.string())};
}

std::string corpus(const std::string& name) {
  return std::string(CORPUS_DIR) + "/" + name;
}

fs::path temp_file(const std::string& name, const std::string& content) {
  fs::path path = fs::temp_directory_path() / name;
  mc::write_text_file(path.string(), content);
  return path;
}

}  // namespace

TEST_CASE("check: verdicts map to exit codes") {
  RunResult holds = run("check " + corpus("figure5.kripke") + " " + corpus("figure5.ctl"));
  CHECK(holds.exit_code == 0);
  CHECK(holds.output.find("verdict=TRUE") != std::string::npos);
  CHECK(holds.output.find("state=GS") != std::string::npos);

  RunResult fails = run("check " + corpus("figure6.kripke") + " " + corpus("figure6.ctl"));
  CHECK(fails.exit_code == 1);
  CHECK(fails.output.find("verdict=FALSE") != std::string::npos);
}

TEST_CASE("check: parse errors exit 2 with a line number") {
  fs::path bad = temp_file("bad.kripke", "state s0\nwrongdirective s0\ninit s0\n");
  RunResult r = run("check " + bad.string() + " " + corpus("figure5.ctl"));
  CHECK(r.exit_code == 2);
}

TEST_CASE("check: --strict-total refuses models with sinks") {
  RunResult r = run("check --strict-total " + corpus("figure5.kripke") + " " +
                    corpus("figure5.ctl"));
  CHECK(r.exit_code == 2);
}

TEST_CASE("check: --labels prints sat-sets") {
  fs::path model = temp_file("tiny.kripke",
                             "state s0 p\ntrans s0 s0\ninit s0\n");
  fs::path prop = temp_file("tiny.ctl", "AG p\n");
  RunResult r = run("check --labels " + model.string() + " " + prop.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("label ") != std::string::npos);
}

TEST_CASE("expand: reports interleavings and matches shipped corpus") {
  fs::path out = fs::temp_directory_path() / "expanded.kripke";
  RunResult r = run("expand " + corpus("genome.workflow") + " --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("interleavings=24") != std::string::npos);
  CHECK(r.output.find("states=102") != std::string::npos);

  // Pipeline consistency: expanding the workflow reproduces the shipped file.
  mc::KripkeStructure expanded = mc::parse_kripke(mc::read_text_file(out.string()));
  mc::KripkeStructure shipped =
      mc::parse_kripke(mc::read_text_file(corpus("figure5.kripke")));
  CHECK(expanded == shipped);
}

TEST_CASE("expand: three-step block reports 6 interleavings") {
  RunResult r = run("expand " + corpus("figure6.workflow"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("interleavings=6") != std::string::npos);
}

TEST_CASE("expand: guard refusal and --force") {
  std::string text = "node X\nblock B a b c d e f g h i\nedge X B\nedge B X\ninit X\n";
  fs::path wf = temp_file("big.workflow", text);
  CHECK(run("expand " + wf.string()).exit_code == 2);
  fs::path out = fs::temp_directory_path() / "big.kripke";
  CHECK(run("expand --force " + wf.string() + " --out " + out.string()).exit_code == 0);
}

TEST_CASE("validate: exit codes and messages") {
  RunResult ok = run("validate " + corpus("figure5.kripke"));
  CHECK(ok.exit_code == 0);  // sinks are warnings, not errors
  CHECK(ok.output.find("no successor") != std::string::npos);

  fs::path good = temp_file("total.kripke", "state s0\ntrans s0 s0\ninit s0\n");
  RunResult clean = run("validate " + good.string());
  CHECK(clean.exit_code == 0);
  CHECK(clean.output.find("no issues") != std::string::npos);

  fs::path bad = temp_file("undeclared.kripke", "state s0\ntrans s0 s9\ninit s0\n");
  CHECK(run("validate " + bad.string()).exit_code == 2);
}

TEST_CASE("info prints size metrics") {
  RunResult r = run("info " + corpus("figure5.kripke"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("states=102") != std::string::npos);
  CHECK(r.output.find("transitions=172") != std::string::npos);
  CHECK(r.output.find("size=274") != std::string::npos);
}

TEST_CASE("bench structure: 5-row CSV with expected verdict column") {
  RunResult r = run("bench structure --manifest " + corpus("manifest.json") +
                    " --trials 1");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::vector<std::string> verdicts;
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line))
    verdicts.push_back(line.substr(line.rfind(',') + 1));
  CHECK(verdicts == std::vector<std::string>{"TRUE", "TRUE", "FALSE", "TRUE", "FALSE"});
}

TEST_CASE("bench formula: row per size") {
  RunResult r = run("bench formula " + corpus("figure5.kripke") +
                    " --sizes 1,5 --trials 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("k=1,1,") != std::string::npos);
  CHECK(r.output.find("k=5,5,") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("check only_one_arg").exit_code == 2);
  CHECK(run("nosuchcommand").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}
