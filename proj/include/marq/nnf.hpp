#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "marq/circuit.hpp"

namespace marq {

// Parsed NNF interchange file (header "nnf v e n"; node lines "L <lit>",
// "A <c> <ids...>", "O <var> <c> <ids...>"). "A 0" is true, "O j 0" is
// false. Children always precede their parents.
struct NnfFile {
  struct NnfNode {
    enum class Kind : std::uint8_t { literal, and_node, or_node };
    Kind kind = Kind::literal;
    std::int64_t literal = 0;               // signed, 1-based
    std::vector<std::uint32_t> children;
  };
  std::uint32_t n_vars = 0;
  std::vector<NnfNode> nodes;
  std::uint32_t root = 0;
};

NnfFile parse_nnf(std::istream& in);
NnfFile parse_nnf_text(const std::string& text);

// Translates a decomposable NNF into an arithmetic circuit: literal x
// becomes a variable node, literal -x becomes 1 - x, A becomes a
// product, O becomes a unit-weight sum. Decomposability is verified
// (non-decomposable AND gates are rejected by id); determinism is the
// producer's contract. The result is syntactically multilinear and
// computes the model indicator on boolean inputs, so its polynomial is
// the multilinear representation of the source function.
Circuit circuit_from_nnf(const NnfFile& nnf);

Circuit import_dnnf(std::istream& in);

// Boolean semantics of the NNF itself (independent of the circuit
// translation). Bit i of the assignment is variable i+1.
bool nnf_eval(const NnfFile& nnf, std::uint64_t assignment);

// Enumeration model count over all 2^n assignments; capacity-guarded.
std::uint64_t nnf_model_count_enum(const NnfFile& nnf, std::uint32_t n_limit = 26);

}  // namespace marq
