#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "marq/circuit.hpp"
#include "marq/multilinear.hpp"

namespace marq {

// Dynamic bitset over variable indices, one word per 64 variables.
using VarSet = std::vector<std::uint64_t>;

bool varset_test(const VarSet& s, std::uint32_t i);
bool varset_intersects(const VarSet& a, const VarSet& b);

// For each node, the set of variables reachable from it.
std::vector<VarSet> reachable_vars(const Circuit& c);

// Syntactic degree bounds with constants treated as fresh variables: a
// var or const leaf has degree 1, a product adds its children's
// degrees, and a sum takes the max child degree plus 1 for every edge
// whose weight differs from 1 (the weight being one more fresh
// variable). These are upper bounds on the true degrees; cancellation
// can only lower them.
struct DegreeReport {
  std::vector<std::uint64_t> per_node_total_degree;
  std::uint64_t output_total_degree = 0;
  // Degree bound in each actual variable (fresh variables excluded).
  std::vector<std::uint64_t> per_variable_output_degree;
};

DegreeReport formal_degree(const Circuit& c);

struct SyntacticCheck {
  bool multilinear = true;
  std::optional<std::uint32_t> violating_product;
};

// True iff every product node's children reach pairwise-disjoint
// variable sets.
SyntacticCheck check_syntactic_multilinearity(const Circuit& c);

inline constexpr std::size_t kDefaultMonomialCap = 1u << 18;

// Exact expansion of the output polynomial. Aborts with CapacityError
// (naming the node) once any node's live monomial count exceeds the cap.
SparsePoly expand_sparse(const Circuit& c, std::size_t monomial_cap = kDefaultMonomialCap);

struct SemanticOptions {
  enum class Mode { exhaustive, randomized };
  Mode mode = Mode::exhaustive;
  std::uint32_t exhaustive_limit = 14;  // max n_vars for exhaustive mode
  std::size_t monomial_cap = kDefaultMonomialCap;
  // Randomized mode: per-variable divided-difference tests at `trials`
  // random points with coordinates drawn from [0, coord_range).
  std::uint32_t trials = 5;
  std::uint64_t coord_range = 1ull << 20;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
};

struct SemanticVerdict {
  enum class Kind { multilinear, not_multilinear, probably_multilinear };
  Kind kind = Kind::multilinear;
  std::optional<std::uint32_t> witness_var;   // set when not_multilinear
  std::optional<Rational> failure_bound;      // set when probably_multilinear
};

// Exhaustive mode expands the polynomial and checks every monomial's
// per-variable degree; randomized mode checks, per variable, that all
// degree >= 2 coefficients of the polynomial viewed as univariate in
// that variable vanish at random integer points, and reports the
// Schwartz-Zippel union bound on the failure probability.
SemanticVerdict check_semantic_multilinearity(const Circuit& c,
                                              const SemanticOptions& opts = {});

}  // namespace marq
