#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "marq/circuit.hpp"
#include "marq/rational.hpp"

namespace marq {

struct EvidenceString;  // query.hpp

// Function table over {0,1}^n. values[x] is indexed by the integer
// encoding of the point: bit i of the index is the value of variable i.
struct TruthTable {
  std::uint32_t n = 0;
  std::vector<Rational> values;  // size 2^n
};

// Multilinear polynomial as subset-indexed coefficients: the term for
// bitmask S is coeff * prod_{i in S} x_i. Zero coefficients are never
// stored.
struct SparseMultilinearPoly {
  std::uint32_t n = 0;
  std::map<std::uint64_t, Rational> terms;
};

// General sparse polynomial keyed by exponent vectors (one entry per
// variable). Produced by circuit expansion, where per-variable degrees
// can exceed one.
struct SparsePoly {
  std::uint32_t n = 0;
  std::map<std::vector<std::uint64_t>, Rational> terms;

  bool is_multilinear() const;
};

// Conversion for expansions that turned out multilinear; throws Error
// otherwise.
SparseMultilinearPoly to_multilinear(const SparsePoly& p);

// Network form of a multilinear polynomial: terms[S] holds the function
// value at the characteristic vector of S, i.e. the polynomial is
// sum_S terms[S] * prod_{i in S} x_i * prod_{i not in S} xbar_i.
struct NetworkPoly {
  std::uint32_t n = 0;
  std::map<std::uint64_t, Rational> terms;
};

inline constexpr std::uint32_t kDefaultTableLimit = 20;

// Evaluates the circuit on every boolean point. Capacity-guarded: n_vars
// above the limit is an error, not an attempt.
TruthTable table_from_circuit(const Circuit& c, std::uint32_t n_limit = kDefaultTableLimit);

// Moebius transform: the unique multilinear polynomial agreeing with the
// table on {0,1}^n, c_S = sum_{T subseteq S} (-1)^{|S\T|} f(v_T).
SparseMultilinearPoly coefficients_from_table(const TruthTable& t);

// Zeta transform, exact inverse of coefficients_from_table.
TruthTable table_from_coefficients(const SparseMultilinearPoly& p);

NetworkPoly network_from_table(const TruthTable& t);

Rational eval_poly(const SparseMultilinearPoly& p, std::span<const Rational> point);
Rational eval_poly(const SparsePoly& p, std::span<const Rational> point);

// Direct evaluation of the sparse network form.
Rational network_eval(const NetworkPoly& np, std::span<const Rational> x,
                      std::span<const Rational> xbar);

// Evaluates the network polynomial of the circuit's (multilinear)
// polynomial via pbar(x,xbar) = prod_i (x_i+xbar_i) * p(..x_i/(x_i+xbar_i)..).
// Coordinates with x_i + xbar_i = 0 are handled by splitting on that
// coordinate pair, costing one extra evaluation doubling each.
Rational network_eval(const Circuit& c, std::span<const Rational> x,
                      std::span<const Rational> xbar);

// Builds a circuit over 2n variables (x_i at index i, xbar_i at index
// n+i) computing the network polynomial of the input's polynomial.
// Requires a syntactically multilinear input; throws Error otherwise,
// directing callers to network_eval. Output size is bounded by
// size + #sum-edges + 3n + 2.
Circuit network_circuit(const Circuit& c);

// Literal-definition oracles, used to cross-check the query engine.
Rational brute_mar(const TruthTable& t, const EvidenceString& m);
Rational brute_hmar(const TruthTable& t, const EvidenceString& m, std::uint32_t k);
Rational brute_vmar(const SparseMultilinearPoly& p, std::span<const Rational> point);

struct TableParseResult {
  TruthTable table;
  std::vector<std::string> warnings;
};

// Truth-table file format: "table <n>" then rows "<bitstring> <value>",
// leftmost bitstring character = variable 0. Rows may appear in any
// order; missing rows default to 0 with a warning.
TableParseResult parse_table(std::istream& in);
std::string serialize_table(const TruthTable& t);

}  // namespace marq
