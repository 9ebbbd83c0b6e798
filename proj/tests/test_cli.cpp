// SPDX-License-Identifier: MIT
// End-to-end tests of the ci command-line tool (spawned as a subprocess).

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "cistruct/io.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cistruct;
using namespace testutil;

TEST_SUITE_BEGIN("cli");

namespace {

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

const std::string& scratch_dir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/ci_cli_test_XXXXXX";
    char* d = mkdtemp(tmpl);
    REQUIRE(d != nullptr);
    return std::string(d);
  }();
  return dir;
}

std::string write_file(const char* name, const std::string& content) {
  std::string path = scratch_dir() + "/" + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  REQUIRE(out.good());
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& input = "") {
  const std::string in = write_file("stdin.txt", input);
  const std::string out = scratch_dir() + "/stdout.txt";
  const std::string err = scratch_dir() + "/stderr.txt";
  std::string cmd = std::string(CISTRUCT_CLI_PATH) + " " + args + " < " + in +
                    " > " + out + " 2> " + err;
  int raw = std::system(cmd.c_str());
  RunResult r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

const char* kGlue = "ground: a b c d\na b | c\nb d | c\na d | b c\n";
const char* kWalkthrough =
    "ground: a b c d\n"
    "a b | c\na b | d\na b | c d\na c | b\na d | b\n"
    "b c | a\nb d | a\nc d |\nc d | a\nc d | b\n";

}  // namespace

TEST_CASE("version prints a dotted version string") {
  RunResult r = run_cli("version");
  CHECK(r.status == 0);
  CHECK(r.out.find('.') != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("closure filters stdin to stdout") {
  RunResult r = run_cli("closure", kGlue);
  CHECK(r.status == 0);
  CHECK(stmt_texts(parse_model(r.out)) ==
        texts({"a b | c", "a b | c d", "a d | c", "a d | b c", "b d | c",
               "b d | a c"}));

  // --out writes a file and leaves stdout empty.
  std::string path = scratch_dir() + "/closure.txt";
  RunResult r2 = run_cli("closure --out " + path, kGlue);
  CHECK(r2.status == 0);
  CHECK(r2.out.empty());
  CHECK(slurp(path) == r.out);
}

TEST_CASE("member answers yes or no without failing") {
  RunResult closed = run_cli("closure", kGlue);
  RunResult yes = run_cli("member", closed.out);
  CHECK(yes.status == 0);
  CHECK(yes.out == "yes\n");
  RunResult no = run_cli("member", kGlue);
  CHECK(no.status == 0);
  CHECK(no.out == "no\n");
  // Self-adhesivity check reports the first violating overlap set.
  RunResult sa = run_cli("member --selfadhesive", kWalkthrough);
  CHECK(sa.status == 0);
  CHECK(sa.out == "no\ta b\n");
}

TEST_CASE("implication validation signals failures through the exit code") {
  RunResult bad = run_cli("implication",
                          "ground: a b c d\n"
                          "a b | c => a b | c\n"
                          "a b | => a c |\n");
  CHECK(bad.status == 1);
  CHECK(bad.out ==
        "valid\ta b | c => a b | c\n"
        "invalid\ta b | => a c |\n");
  RunResult good = run_cli("implication",
                           "ground: a b c d\n"
                           "a b | c ; a d | b c => a d | c ; a b | c d\n");
  CHECK(good.status == 0);
  CHECK(good.out.rfind("valid\t", 0) == 0);
}

TEST_CASE("sa-closure glues at a chosen overlap set") {
  RunResult r = run_cli("sa-closure --at 'b d'", kWalkthrough);
  CHECK(r.status == 0);
  CHECK(stmt_texts(parse_model(r.out)).count("b c |") == 1);
  RunResult fix = run_cli("sa-closure --at 'c d'", kWalkthrough);
  CHECK(fix.status == 0);
  CHECK(stmt_texts(parse_model(fix.out)) == stmt_texts(parse_model(kWalkthrough)));
}

TEST_CASE("axioms prints DIMACS with a statement map") {
  RunResult r = run_cli("axioms --frame semigraphoid --n 3");
  CHECK(r.status == 0);
  CHECK(r.out.find("p cnf 6 12") != std::string::npos);
  CHECK(r.out.find("c var 1 = ") != std::string::npos);
  RunResult r4 = run_cli("axioms");
  CHECK(r4.status == 0);
  CHECK(r4.out.find("p cnf 24 96") != std::string::npos);
}

TEST_CASE("catalogue summarizes and lists the three-variable family") {
  RunResult r = run_cli("catalogue --n 3 --name semgr3");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "family,models,types,irreducibles,irreducible_types,coatoms,"
        "coatom_types\n"
        "semgr3,22,10,5,3,5,3\n");

  RunResult rows = run_cli("catalogue --n 3 --what models --types");
  CHECK(rows.status == 0);
  std::istringstream lines(rows.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 1 + 10);  // ground header plus one row per orbit

  RunResult bogus = run_cli("catalogue --n 3 --what everything");
  CHECK(bogus.status == 2);
  CHECK(bogus.err.find("unknown listing") != std::string::npos);
}

TEST_CASE("basis ends with the perfection marker") {
  RunResult r = run_cli("basis --n 3");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("ground: a b c\n", 0) == 0);
  std::string tail = "# perfect: yes\n";
  REQUIRE(r.out.size() >= tail.size());
  CHECK(r.out.substr(r.out.size() - tail.size()) == tail);
}

TEST_CASE("stateless subcommands transform models") {
  RunResult d = run_cli("dual",
                        "ground: a b c d\na b | c d\na b | d\na b | c\nc d |\n");
  CHECK(d.status == 0);
  CHECK(stmt_texts(parse_model(d.out)) ==
        texts({"a b |", "a b | c", "a b | d", "c d | a b"}));

  RunResult closed = run_cli("closure", kGlue);
  RunResult m = run_cli("marginal --labels 'a b c'", closed.out);
  CHECK(m.status == 0);
  CHECK(stmt_texts(parse_model(m.out)) == texts({"a b | c"}));

  std::string a = write_file("left.txt", "ground: a b c d\na b |\nc d |\n");
  std::string b = write_file("right.txt", "ground: c d e\nc d |\nc d | e\n");
  RunResult glue = run_cli("adhesion --a " + a + " --b " + b);
  CHECK(glue.status == 0);
  CHECK(stmt_texts(parse_model(glue.out)).size() == 7);

  RunResult graph = run_cli("graph --ground 'a b c' --edges 'a,b a,c'");
  CHECK(graph.status == 0);
  CHECK(stmt_texts(parse_model(graph.out)) == texts({"b c | a"}));
}

TEST_CASE("screening the bundled sample produces the CSV report") {
  std::string rays = std::string(CISTRUCT_TEST_DATA_DIR) + "/rays_sample.txt";
  RunResult r = run_cli("screen --in " + rays);
  CHECK(r.status == 0);
  CHECK(r.out.rfind("id,orbit_size,verdict,witness_L,millis\n", 0) == 0);
  CHECK(r.out.find("\nr0,1,yes,,") != std::string::npos);
  CHECK(r.out.find("\nr1,") != std::string::npos);
  CHECK(r.out.find("\nr2,") != std::string::npos);
  CHECK(r.out.find(",no,") != std::string::npos);
}

TEST_CASE("failures use distinct exit codes and an error prefix") {
  RunResult parse = run_cli("closure", "not a model\n");
  CHECK(parse.status == 2);
  CHECK(parse.err.rfind("ci: ", 0) == 0);

  RunResult frame = run_cli("member --frame hypergraphoid", "ground: a b\n");
  CHECK(frame.status == 2);
  CHECK(frame.err.rfind("ci: ", 0) == 0);

  // Three copies of a four-variable ground set exceed the size cap.
  RunResult cap = run_cli("kfold --k 3", "ground: a b c d\n");
  CHECK(cap.status == 4);
  CHECK(cap.err.rfind("ci: ", 0) == 0);

  RunResult backend =
      run_cli("closure --solver-exe /nonexistent/sat-solver", kGlue);
  CHECK(backend.status == 3);
  CHECK(backend.err.rfind("ci: ", 0) == 0);

  RunResult missing = run_cli("closure --in /nonexistent/model.txt");
  CHECK(missing.status == 2);
  CHECK(missing.err.rfind("ci: ", 0) == 0);
}

TEST_SUITE_END();
