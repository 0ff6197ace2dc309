#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "marq/query.hpp"
#include "marq/rational.hpp"

namespace marq {

// Bit-packed vector over GF(2), one word per 64 variables.
using GF2Vec = std::vector<std::uint64_t>;

bool gf2_get(const GF2Vec& v, std::uint32_t i);
void gf2_flip(GF2Vec& v, std::uint32_t i);
std::uint64_t gf2_popcount(const GF2Vec& v);

// Linear system over GF(2): each row is a coefficient mask plus a
// right-hand-side bit. Duplicate rows are allowed; elimination handles
// them.
struct GF2System {
  std::uint32_t n_vars = 0;
  struct Row {
    GF2Vec mask;
    bool rhs = false;
  };
  std::vector<Row> rows;

  explicit GF2System(std::uint32_t n = 0) : n_vars(n) {}
  std::size_t words() const { return (n_vars + 63) / 64; }
  // XOR-folds the listed variables into a fresh row (repeats cancel).
  void add_parity(std::span<const std::uint32_t> vars, bool rhs);
  void add_unit(std::uint32_t var, bool value);
};

struct GF2Elimination {
  bool consistent = true;
  std::uint32_t rank = 0;
  std::vector<std::uint32_t> pivot_cols;          // one per reduced row
  GF2Vec particular;                              // a solution (free vars 0)
  std::vector<GF2Vec> null_basis;                 // one vector per free var
  std::vector<std::uint32_t> free_cols;
};

GF2Elimination gf2_eliminate(const GF2System& s);

// 0 if inconsistent, else 2^(n_vars - rank).
BigInt count_solutions(const GF2System& s);

// Conjunction of parity clauses x_i + x_j + x_k = 1 over GF(2), indices
// 1-based and not necessarily distinct (repeats cancel).
struct XorFormula {
  std::uint32_t n = 0;
  std::vector<std::array<std::uint32_t, 3>> clauses;
};

// Variable layout of the f_aff instance on parameter n: the x-block (n
// variables), then the y-block (n^3, lexicographic by (i,j,k), 1-based),
// then the z-block (n^3). Constraints: y_ijk + x_i + x_j + x_k = 1 and
// y_ijk + z_ijk = 1 for all triples.
struct FaffLayout {
  std::uint32_t n = 0;

  explicit FaffLayout(std::uint32_t n_) : n(n_) {}
  std::uint32_t total_vars() const { return 2 * n * n * n + n; }
  std::uint32_t x_index(std::uint32_t i) const { return i - 1; }  // 1-based i
  std::uint32_t y_index(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    return n + ((i - 1) * n + (j - 1)) * n + (k - 1);
  }
  std::uint32_t z_index(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    return n + n * n * n + ((i - 1) * n + (j - 1)) * n + (k - 1);
  }
};

inline constexpr std::uint32_t kDefaultFaffLimit = 6;

GF2System faff_system(std::uint32_t n, std::uint32_t n_limit = kDefaultFaffLimit);

// Marginalization of the f_aff indicator: fixed evidence entries become
// unit equations, and the count is 2^(free - rank) over the remaining
// system.
BigInt faff_mar(std::uint32_t n, const EvidenceString& m,
                std::uint32_t n_limit = kDefaultFaffLimit);

struct KonesReduction {
  EvidenceString m;            // over 2n^3+n variables
  std::uint64_t target_weight; // k + n^3
};

// Encodes a #k-ONES query on the formula as evidence to f_aff: every
// clause (i,j,k) pins y_ijk = 0 and z_ijk = 1; everything else is
// marginalized. The answer appears at Hamming weight k + n^3.
KonesReduction reduce_kones_to_hmar(const XorFormula& phi, std::uint32_t k);

// Enumeration count of assignments satisfying the formula with exactly
// k ones. Capacity-guarded at 24 variables.
std::uint64_t brute_kones(const XorFormula& phi, std::uint32_t k);

inline constexpr std::uint32_t kDefaultDimLimit = 24;

// Enumerates the affine solution space of s restricted by m (via
// particular solution + null-space basis) and buckets solutions by
// total Hamming weight; entry k is the weight-k marginal mass of the
// system's indicator under evidence m.
std::vector<BigInt> weight_histogram(const GF2System& s, const EvidenceString& m,
                                     std::uint32_t dim_limit = kDefaultDimLimit);

// XOR-CSP file format: "xorcsp <n>" then clause lines "c <i> <j> <k>"
// (1-based), each asserting x_i + x_j + x_k = 1 over GF(2).
XorFormula parse_xorcsp(std::istream& in);
std::string serialize_xorcsp(const XorFormula& phi);

// Every clause of phi as a row of a GF2System over n variables.
GF2System system_from_xorcsp(const XorFormula& phi);

}  // namespace marq
