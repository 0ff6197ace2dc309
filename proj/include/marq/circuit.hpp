#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "marq/rational.hpp"

namespace marq {

enum class NodeKind : std::uint8_t { var, constant, sum, prod };

struct SumEdge {
  Rational weight;
  std::uint32_t child = 0;
};

// One node of the circuit DAG. Which payload is meaningful depends on
// kind; ids are implicit (a node's id is its index in Circuit::nodes).
struct Node {
  NodeKind kind = NodeKind::constant;
  std::uint32_t var = 0;           // kind == var
  Rational value;                  // kind == constant
  std::vector<SumEdge> sum;        // kind == sum
  std::vector<std::uint32_t> prod; // kind == prod

  static Node make_var(std::uint32_t i);
  static Node make_const(Rational c);
  static Node make_sum(std::vector<SumEdge> edges);
  static Node make_prod(std::vector<std::uint32_t> children);
};

// Arithmetic circuit: topologically numbered node list (children always
// have smaller ids) plus a designated output node. Immutable by
// convention once built; every operation in this library treats it as
// read-only, so sharing across threads is safe.
struct Circuit {
  std::uint32_t n_vars = 0;
  std::vector<Node> nodes;
  std::uint32_t output = 0;

  std::size_t size() const { return nodes.size(); }
};

struct ParseResult {
  Circuit circuit;
  std::vector<std::string> warnings;
};

// Parses the line-oriented circuit text format:
//   circuit <n_vars>
//   node <id> var <i> | node <id> const <a>[/<b>]
//   node <id> sum [<w>:]<child> ... | node <id> prod <child> ...
//   output <id>
// '#' starts a comment. Ids must be dense from 0 in order. Nodes left
// unreachable from the output are pruned with a warning.
ParseResult parse_circuit(std::istream& in);
ParseResult parse_circuit(const std::string& text);

// Canonical text form; parse_circuit(serialize_circuit(c)) is
// structurally identical to c for any valid circuit.
std::string serialize_circuit(const Circuit& c);

struct ValidationFinding {
  std::string check;
  bool ok = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationFinding> findings;
  bool ok() const {
    for (const auto& f : findings)
      if (!f.ok) return false;
    return true;
  }
};

// Checks every structural invariant (topological numbering, arities,
// nonzero sum weights, variable ranges, single sink equal to the
// output, reachability). Findings are report entries, never exceptions.
ValidationReport validate(const Circuit& c);

// Drops nodes unreachable from the output and renumbers the rest,
// preserving relative order. Appends a warning when anything was cut.
void prune_unreachable(Circuit& c, std::vector<std::string>* warnings = nullptr);

bool structurally_equal(const Circuit& a, const Circuit& b);

// Serialized size in bits; stands in for the description-length bound
// used by the integer-evaluation bitwidth accounting.
std::uint64_t circuit_encoding_bits(const Circuit& c);

}  // namespace marq
