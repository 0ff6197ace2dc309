#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "marq/circuit.hpp"
#include "marq/rational.hpp"

namespace marq {

// Exact value of the circuit's polynomial at a rational point.
Rational eval_direct(const Circuit& c, std::span<const Rational> point);

struct EvalTrace {
  Rational value;
  // Largest integer (numerator or denominator of any intermediate,
  // sign-and-magnitude bits) seen while evaluating.
  std::uint64_t max_bitwidth_seen = 0;
  std::size_t node_count_evaluated = 0;
};

// Evaluation at an integer point with bitwidth accounting. For a
// circuit of formal degree d evaluated on inputs of total encoded
// length N, max_bitwidth_seen stays within (3d-1) * max(N, encoded
// circuit size).
EvalTrace eval_integer(const Circuit& c, std::span<const BigInt> point);

std::uint64_t encoded_input_length(std::span<const BigInt> point);

struct UnivariateSample {
  Rational abscissa;
  Rational ordinate;
};

// Unique interpolating polynomial through the samples, as coefficients
// in ascending degree order. Abscissas must be pairwise distinct.
std::vector<Rational> lagrange_interpolate(std::span<const UnivariateSample> samples);

// Per-sample audit record for the integer-reduction evaluation path.
struct ReductionSample {
  BigInt t;
  std::uint64_t input_length = 0;       // N for this sample's integer point
  std::uint64_t max_bitwidth_seen = 0;  // from the underlying eval_integer
};

// Evaluates the circuit at a rational point through integer evaluations
// only: with point a_i/b_i, D = prod b_i and c_i = a_i * D / b_i, the
// univariate f(t) = p(t*c_1, ..., t*c_n) has degree at most
// degree_bound; sampling it at t = 1..degree_bound+1, interpolating,
// and rescaling coefficient k by D^-k recovers p(a/b). Equals
// eval_direct on every input.
Rational eval_via_integer_reduction(const Circuit& c, std::span<const Rational> point,
                                    std::uint64_t degree_bound,
                                    std::vector<ReductionSample>* audit = nullptr);

}  // namespace marq
