#include "doctest.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "marq/multilinear.hpp"
#include "support.hpp"

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the built binary, capturing stdout (stderr goes to /dev/null).
CliResult run_cli(const std::string& args) {
  std::string command = std::string(MARQ_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer{};
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.out.append(buffer.data(), got);
  int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string example3() { return support::data_path("example3.circ"); }

}  // namespace

TEST_CASE("mar and hmar command examples") {
  auto mar = run_cli("mar " + example3() + " --evidence \"0**\"");
  CHECK(mar.code == 0);
  CHECK(mar.out == "1/4\n");

  auto hmar = run_cli("hmar " + example3() + " --evidence \"0**\" -k 1");
  CHECK(hmar.code == 0);
  CHECK(hmar.out == "4/25\n");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("mar " + example3() + " --evidence \"01\"").code == 2);
  CHECK(run_cli("mar " + example3()).code == 2);          // missing --evidence
  CHECK(run_cli("nonsense-command").code == 2);
  CHECK(run_cli("hmar " + example3() + " --evidence \"0**\" -k 9").code == 2);
}

TEST_CASE("domain errors exit with 1") {
  CHECK(run_cli("mar /nonexistent.circ --evidence \"0**\"").code == 1);
}

TEST_CASE("identical inputs produce byte-identical output") {
  std::string args = "profile " + example3() + " --evidence \"0**\"";
  auto first = run_cli(args);
  auto second = run_cli(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.find("k=1: 4/25") != std::string::npos);
}

TEST_CASE("porcelain and decimal rendering") {
  auto porcelain = run_cli("--porcelain mar " + example3() + " --evidence \"0**\"");
  CHECK(porcelain.out == "value: 1/4\n");
  auto decimal = run_cli("--decimal mar " + example3() + " --evidence \"0**\"");
  CHECK(decimal.out == "0.25\n");
}

TEST_CASE("ve echoes the weight vector") {
  auto ve = run_cli("ve " + example3() + " --evidence \"***\" --weights \"1:0,1:1,1:1\"");
  CHECK(ve.code == 0);
  CHECK(ve.out == "weights: 1:0,1:1,1:1\n3/4\n");
}

TEST_CASE("nnf inputs are imported transparently") {
  auto r = run_cli("mar " + support::data_path("nnf/xor2.nnf") + " --evidence \"**\"");
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
}

TEST_CASE("validate and expand on the bundled example") {
  auto validate = run_cli("validate " + example3());
  CHECK(validate.code == 0);
  CHECK(validate.out.find("FAIL") == std::string::npos);

  auto expand = run_cli("expand " + example3());
  CHECK(expand.code == 0);
  CHECK(expand.out.find("x0*x1*x2: -7/50") != std::string::npos);
}

TEST_CASE("reduce prints the evidence string and target weight") {
  auto r = run_cli("reduce " + support::data_path("pin_x1.xorcsp") + " -k 1");
  CHECK(r.code == 0);
  CHECK(r.out == "evidence: *****0*******1****\nweight: 9\n");
}

TEST_CASE("count-affine") {
  auto r = run_cli("count-affine " + support::data_path("pin_x1.xorcsp"));
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");

  auto h = run_cli("count-affine " + support::data_path("pin_x1.xorcsp") + " --histogram");
  CHECK(h.code == 0);
  CHECK(h.out == "k=0: 0\nk=1: 1\nk=2: 1\n");
}

TEST_CASE("network transform prints a parseable circuit") {
  auto r = run_cli("network " + example3());
  CHECK(r.code == 0);
  auto parsed = marq::parse_circuit(r.out);
  CHECK(parsed.circuit.n_vars == 6);

  auto at = run_cli("network " + example3() + " --at \"0,2,2\" --bar \"1,1,1\"");
  CHECK(at.code == 0);
  CHECK(at.out == "53/100\n");
}

TEST_CASE("analysis subcommands") {
  auto degree = run_cli("degree " + example3());
  CHECK(degree.code == 0);
  CHECK(degree.out.find("6") != std::string::npos);

  auto porcelain = run_cli("--porcelain degree " + example3());
  CHECK(porcelain.out.find("output_total_degree: 6") != std::string::npos);

  auto check = run_cli("check-ml " + example3());
  CHECK(check.code == 0);
  CHECK(check.out == "syntactic: multilinear\nsemantic: multilinear\n");

  auto randomized = run_cli("check-ml " + example3() + " --mode randomized");
  CHECK(randomized.code == 0);
  CHECK(randomized.out.find("probably multilinear") != std::string::npos);
}

TEST_CASE("eval subcommand routes") {
  auto direct = run_cli("eval " + example3() + " --point \"1/2,1/2,1/2\"");
  CHECK(direct.out == "1/8\n");
  auto reduced = run_cli("eval " + example3() + " --point \"1/2,1/2,1/2\" --integer-route --trace");
  CHECK(reduced.code == 0);
  CHECK(reduced.out.find("1/8") == 0);
  CHECK(reduced.out.find("samples: 7") != std::string::npos);  // degree bound 6
}

TEST_CASE("interpolate-table recovers the coefficients") {
  auto table = marq::table_from_circuit(support::load_example3());
  std::string path = "/tmp/marq_cli_table.txt";
  {
    std::ofstream out(path);
    out << marq::serialize_table(table);
  }
  auto r = run_cli("interpolate-table " + path);
  CHECK(r.code == 0);
  CHECK(r.out.find("x0*x1*x2: -7/50") != std::string::npos);
  auto net = run_cli("interpolate-table " + path + " --network");
  CHECK(net.code == 0);
  CHECK(net.out.find("xb0*xb1*xb2: 1/20") != std::string::npos);
}

TEST_CASE("faff subcommand") {
  auto r = run_cli("faff -n 2 --evidence \"******************\"");
  CHECK(r.code == 0);
  CHECK(r.out == "4\n");
  CHECK(run_cli("faff -n 2 --evidence \"***\"").code == 2);
}

TEST_CASE("trust bypasses certification") {
  // x0*x0 is not multilinear: refused normally, runs under --trust
  std::string path = "/tmp/marq_cli_square.circ";
  {
    std::ofstream out(path);
    out << "circuit 1\nnode 0 var 0\nnode 1 prod 0 0\noutput 1\n";
  }
  CHECK(run_cli("mar " + path + " --evidence \"*\"").code == 1);
  auto trusted = run_cli("--trust mar " + path + " --evidence \"*\"");
  CHECK(trusted.code == 0);
}

TEST_CASE("oracle battery passes") {
  auto r = run_cli("oracle --trials 3 --seed 7");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS marginals-vs-brute-force") != std::string::npos);

  auto nnf = run_cli("oracle " + support::data_path("nnf/parity8.nnf"));
  CHECK(nnf.code == 0);
  CHECK(nnf.out.find("PASS model-count-vs-enumeration") != std::string::npos);
}
