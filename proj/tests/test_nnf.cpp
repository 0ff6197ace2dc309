#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "marq/analysis.hpp"
#include "marq/eval.hpp"
#include "marq/multilinear.hpp"
#include "marq/nnf.hpp"
#include "marq/query.hpp"
#include "support.hpp"

using namespace marq;

TEST_CASE("single literal imports to the identity") {
  auto nnf = parse_nnf_text("nnf 1 0 1\nL 1\n");
  auto c = circuit_from_nnf(nnf);
  CHECK(c.n_vars == 1);
  std::vector<Rational> one{Rational(1)}, zero{Rational(0)};
  CHECK(eval_direct(c, one) == Rational(1));
  CHECK(eval_direct(c, zero) == Rational(0));
}

TEST_CASE("negative literal becomes 1 - x") {
  auto c = circuit_from_nnf(parse_nnf_text("nnf 1 0 1\nL -1\n"));
  std::vector<Rational> one{Rational(1)}, zero{Rational(0)};
  CHECK(eval_direct(c, one) == Rational(0));
  CHECK(eval_direct(c, zero) == Rational(1));
}

TEST_CASE("xor of two variables has model count 2") {
  auto nnf = parse_nnf_text(support::read_file(support::data_path("nnf/xor2.nnf")));
  auto c = circuit_from_nnf(nnf);
  auto cert = certify(c);
  CHECK(cert.kind == Certificate::Kind::syntactic);
  CHECK(mar(c, cert, EvidenceString::all_stars(2)) == Rational(2));
  CHECK(nnf_model_count_enum(nnf) == 2);
}

TEST_CASE("sentinels") {
  auto t = circuit_from_nnf(parse_nnf_text("nnf 1 0 3\nA 0\n"));
  auto f = circuit_from_nnf(parse_nnf_text("nnf 1 0 3\nO 0 0\n"));
  auto tc = certify(t);
  auto fc = certify(f);
  CHECK(mar(t, tc, EvidenceString::all_stars(3)) == Rational(8));
  CHECK(mar(f, fc, EvidenceString::all_stars(3)) == Rational(0));
}

TEST_CASE("non-decomposable AND gates are rejected by id") {
  // A 2 over two literals of the same variable
  CHECK_THROWS_WITH_AS(circuit_from_nnf(parse_nnf_text("nnf 3 2 1\nL 1\nL 1\nA 2 0 1\n")),
                       doctest::Contains("2"), Error);
}

TEST_CASE("malformed NNF files") {
  CHECK_THROWS_AS(parse_nnf_text("xnf 1 0 1\nL 1\n"), ParseError);
  CHECK_THROWS_AS(parse_nnf_text("nnf 2 0 1\nL 1\n"), ParseError);          // missing node
  CHECK_THROWS_AS(parse_nnf_text("nnf 1 0 1\nL 2\n"), ParseError);          // literal range
  CHECK_THROWS_AS(parse_nnf_text("nnf 2 1 1\nA 1 1\nL 1\n"), ParseError);   // forward child
  CHECK_THROWS_AS(parse_nnf_text("nnf 1 0\nL 1\n"), ParseError);            // short header
}

TEST_CASE("bundled d-DNNF suite: counts and syntactic multilinearity") {
  std::istringstream manifest(support::read_file(support::data_path("nnf/manifest.txt")));
  std::string line;
  std::size_t n_files = 0;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string name;
    std::uint32_t n = 0;
    std::uint64_t expected = 0;
    REQUIRE(static_cast<bool>(row >> name >> n >> expected));
    CAPTURE(name);
    ++n_files;

    auto nnf = parse_nnf_text(support::read_file(support::data_path("nnf/" + name + ".nnf")));
    CHECK(nnf.n_vars == n);
    CHECK(nnf_model_count_enum(nnf) == expected);

    auto c = circuit_from_nnf(nnf);
    CHECK(check_syntactic_multilinearity(c).multilinear);
    auto cert = certify(c);
    CHECK(mar(c, cert, EvidenceString::all_stars(n)) == Rational(BigInt(expected)));
  }
  CHECK(n_files >= 20);
}

TEST_CASE("imported circuits compute the indicator at boolean points") {
  for (const auto& name : {"implchain4", "rand4", "exactly1of4"}) {
    auto nnf = parse_nnf_text(support::read_file(support::data_path(std::string("nnf/") + name + ".nnf")));
    auto c = circuit_from_nnf(nnf);
    auto cert = certify(c);
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << nnf.n_vars); ++x) {
      std::vector<Rational> point(nnf.n_vars);
      for (std::uint32_t i = 0; i < nnf.n_vars; ++i) point[i] = Rational((x >> i) & 1);
      CHECK(vmar(c, cert, point) == Rational(nnf_eval(nnf, x) ? 1 : 0));
    }
  }
}

TEST_CASE("imported circuits round-trip through the network transform") {
  std::mt19937_64 rng(1212);
  for (const auto& name : {"xor2", "or3", "atleast2of4"}) {
    auto nnf = parse_nnf_text(support::read_file(support::data_path(std::string("nnf/") + name + ".nnf")));
    auto c = circuit_from_nnf(nnf);
    auto nc = network_circuit(c);
    for (int trial = 0; trial < 10; ++trial) {
      auto x = support::rnd_point(rng, c.n_vars);
      std::vector<Rational> both = x;
      for (const auto& xi : x) both.push_back(Rational(1) - xi);
      CHECK(eval_direct(nc, both) == eval_direct(c, x));
    }
  }
}

TEST_CASE("enumeration capacity guard") {
  NnfFile nnf;
  nnf.n_vars = 30;
  nnf.nodes.push_back({NnfFile::NnfNode::Kind::literal, 1, {}});
  nnf.root = 0;
  CHECK_THROWS_AS(nnf_model_count_enum(nnf), CapacityError);
}
