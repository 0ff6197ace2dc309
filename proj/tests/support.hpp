#pragma once

// Shared helpers for the test suites: bundled-data loading, seeded
// random circuit/evidence generators, and independent brute-force
// oracles that never go through the code paths they are checking.

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "marq/analysis.hpp"
#include "marq/circuit.hpp"
#include "marq/eval.hpp"
#include "marq/gf2.hpp"
#include "marq/multilinear.hpp"
#include "marq/query.hpp"
#include "marq/rational.hpp"

namespace support {

inline std::string data_path(const std::string& name) {
  return std::string(MARQ_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline marq::Circuit load_example3() {
  return marq::parse_circuit(read_file(data_path("example3.circ"))).circuit;
}

// The eight table values of the bundled three-variable example, indexed
// by mask (bit i = variable i).
inline std::vector<marq::Rational> example3_table() {
  using marq::Rational;
  return {Rational(1, 20), Rational(3, 20), Rational(1, 10), Rational(3, 10),
          Rational(3, 50), Rational(9, 50), Rational(1, 25), Rational(3, 25)};
}

inline std::uint64_t rnd_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline long rnd_range(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline marq::Rational rnd_rational(std::mt19937_64& rng, long span = 9, long den_max = 9) {
  return marq::Rational(rnd_range(rng, -span, span), rnd_range(rng, 1, den_max));
}

inline marq::Rational rnd_nonzero_rational(std::mt19937_64& rng, long span = 9,
                                           long den_max = 9) {
  for (;;) {
    auto r = rnd_rational(rng, span, den_max);
    if (!r.is_zero()) return r;
  }
}

// Random syntactically multilinear circuit over n variables: products
// only ever combine children built over disjoint variable subsets.
class MlCircuitGen {
 public:
  MlCircuitGen(std::mt19937_64& rng, std::uint32_t n) : rng_(rng) { c_.n_vars = n; }

  marq::Circuit generate(int depth = 3) {
    std::vector<std::uint32_t> vars(c_.n_vars);
    for (std::uint32_t i = 0; i < c_.n_vars; ++i) vars[i] = i;
    c_.output = build(vars, depth);
    marq::prune_unreachable(c_);
    return std::move(c_);
  }

 private:
  std::uint32_t add(marq::Node n) {
    c_.nodes.push_back(std::move(n));
    return static_cast<std::uint32_t>(c_.nodes.size() - 1);
  }

  std::uint32_t leaf(const std::vector<std::uint32_t>& vars) {
    if (!vars.empty() && rnd_below(rng_, 4) != 0)
      return add(marq::Node::make_var(vars[rnd_below(rng_, vars.size())]));
    return add(marq::Node::make_const(rnd_rational(rng_, 5, 5)));
  }

  std::uint32_t build(const std::vector<std::uint32_t>& vars, int depth) {
    if (depth <= 0 || rnd_below(rng_, 6) == 0) return leaf(vars);
    if (vars.size() >= 2 && rnd_below(rng_, 2) == 0) {
      // product over a random partition into disjoint parts
      std::vector<std::uint32_t> shuffled = vars;
      for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rnd_below(rng_, i)]);
      std::size_t cut = 1 + rnd_below(rng_, shuffled.size() - 1);
      std::vector<std::uint32_t> left(shuffled.begin(), shuffled.begin() + cut);
      std::vector<std::uint32_t> right(shuffled.begin() + cut, shuffled.end());
      return add(marq::Node::make_prod({build(left, depth - 1), build(right, depth - 1)}));
    }
    // weighted sum of children over subsets of the available variables
    std::size_t arity = 2 + rnd_below(rng_, 2);
    std::vector<marq::SumEdge> edges;
    for (std::size_t a = 0; a < arity; ++a) {
      std::vector<std::uint32_t> subset;
      for (auto v : vars)
        if (rnd_below(rng_, 4) != 0) subset.push_back(v);
      edges.push_back(marq::SumEdge{rnd_nonzero_rational(rng_, 4, 4), build(subset, depth - 1)});
    }
    return add(marq::Node::make_sum(std::move(edges)));
  }

  std::mt19937_64& rng_;
  marq::Circuit c_;
};

inline marq::Circuit rnd_ml_circuit(std::mt19937_64& rng, std::uint32_t n, int depth = 3) {
  return MlCircuitGen(rng, n).generate(depth);
}

// Random general circuit (not necessarily multilinear); the formal
// degree is kept under the budget so downstream interpolation stays
// cheap.
inline marq::Circuit rnd_general_circuit(std::mt19937_64& rng, std::uint32_t n,
                                         std::size_t internal_nodes,
                                         std::uint64_t degree_budget = 10) {
  marq::Circuit c;
  c.n_vars = n;
  std::vector<std::uint64_t> deg;
  auto add = [&](marq::Node node, std::uint64_t d) {
    c.nodes.push_back(std::move(node));
    deg.push_back(d);
    return static_cast<std::uint32_t>(c.nodes.size() - 1);
  };
  for (std::uint32_t i = 0; i < n; ++i) add(marq::Node::make_var(i), 1);
  add(marq::Node::make_const(rnd_rational(rng, 5, 5)), 1);
  for (std::size_t k = 0; k < internal_nodes; ++k) {
    std::uint32_t a = static_cast<std::uint32_t>(rnd_below(rng, c.nodes.size()));
    std::uint32_t b = static_cast<std::uint32_t>(rnd_below(rng, c.nodes.size()));
    if (rnd_below(rng, 2) == 0 && deg[a] + deg[b] <= degree_budget) {
      add(marq::Node::make_prod({a, b}), deg[a] + deg[b]);
    } else {
      marq::Rational wa = rnd_below(rng, 3) == 0 ? marq::Rational(1)
                                                 : rnd_nonzero_rational(rng, 4, 4);
      marq::Rational wb = rnd_below(rng, 3) == 0 ? marq::Rational(1)
                                                 : rnd_nonzero_rational(rng, 4, 4);
      std::uint64_t da = deg[a] + (wa.is_one() ? 0 : 1);
      std::uint64_t db = deg[b] + (wb.is_one() ? 0 : 1);
      add(marq::Node::make_sum({marq::SumEdge{wa, a}, marq::SumEdge{wb, b}}),
          std::max(da, db));
    }
  }
  c.output = static_cast<std::uint32_t>(c.nodes.size() - 1);
  marq::prune_unreachable(c);
  return c;
}

inline std::vector<marq::Rational> rnd_point(std::mt19937_64& rng, std::uint32_t n,
                                             long span = 9, long den_max = 9) {
  std::vector<marq::Rational> point(n);
  for (auto& x : point) x = rnd_rational(rng, span, den_max);
  return point;
}

inline marq::EvidenceString rnd_evidence(std::mt19937_64& rng, std::uint32_t n) {
  marq::EvidenceString m;
  m.entries.resize(n);
  for (auto& e : m.entries) {
    switch (rnd_below(rng, 4)) {
      case 0: e = marq::Mark::zero; break;
      case 1: e = marq::Mark::one; break;
      default: e = marq::Mark::star; break;
    }
  }
  return m;
}

inline marq::VirtualEvidence rnd_virtual_evidence(std::mt19937_64& rng, std::uint32_t n) {
  marq::VirtualEvidence w;
  w.pairs.resize(n);
  for (auto& [a, b] : w.pairs) {
    switch (rnd_below(rng, 6)) {
      case 0: a = marq::Rational(1); b = marq::Rational(0); break;  // hard one
      case 1: a = marq::Rational(0); b = marq::Rational(1); break;  // hard zero
      default:
        a = marq::Rational(rnd_range(rng, 0, 6), rnd_range(rng, 1, 4));
        b = marq::Rational(rnd_range(rng, 0, 6), rnd_range(rng, 1, 4));
        if (a.is_zero() && b.is_zero()) b = marq::Rational(1);
        break;
    }
  }
  return w;
}

// Literal reweighted sum over the evidence-consistent block, straight
// from the virtual-evidence definition.
inline marq::Rational brute_ve(const marq::TruthTable& t, const marq::VirtualEvidence& w,
                               const marq::EvidenceString& m) {
  using marq::Mark;
  using marq::Rational;
  Rational acc(0);
  for (std::uint64_t x = 0; x < t.values.size(); ++x) {
    bool consistent = true;
    for (std::uint32_t i = 0; i < t.n && consistent; ++i) {
      bool bit = (x >> i) & 1;
      if (m.entries[i] == Mark::one && !bit) consistent = false;
      if (m.entries[i] == Mark::zero && bit) consistent = false;
    }
    if (!consistent) continue;
    Rational weight(1);
    for (std::uint32_t i = 0; i < t.n; ++i) {
      bool bit = (x >> i) & 1;
      weight *= bit ? w.pairs[i].first : w.pairs[i].second;
    }
    acc += weight * t.values[x];
  }
  return acc;
}

// Enumeration count of a GF(2) system (single-word masks, n <= 20),
// optionally restricted by evidence.
inline marq::BigInt gf2_enum_count(const marq::GF2System& s,
                                   const marq::EvidenceString* m = nullptr) {
  if (s.n_vars > 20) throw std::runtime_error("enumeration oracle limited to 20 variables");
  std::uint64_t fixed = 0, values = 0;
  if (m) {
    for (std::uint32_t i = 0; i < m->size(); ++i) {
      if (m->entries[i] == marq::Mark::star) continue;
      fixed |= std::uint64_t(1) << i;
      if (m->entries[i] == marq::Mark::one) values |= std::uint64_t(1) << i;
    }
  }
  marq::BigInt count(0);
  const std::uint64_t total = std::uint64_t(1) << s.n_vars;
  for (std::uint64_t x = 0; x < total; ++x) {
    if ((x & fixed) != values) continue;
    bool ok = true;
    for (const auto& row : s.rows) {
      if ((__builtin_popcountll(x & row.mask[0]) & 1) != (row.rhs ? 1 : 0)) {
        ok = false;
        break;
      }
    }
    if (ok) count += 1;
  }
  return count;
}

// Sum-of-monomials circuit for a sparse multilinear polynomial; used to
// bridge table-level objects back into the circuit world.
inline marq::Circuit circuit_from_poly(const marq::SparseMultilinearPoly& p) {
  marq::Circuit c;
  c.n_vars = p.n;
  std::vector<std::uint32_t> vars(p.n);
  for (std::uint32_t i = 0; i < p.n; ++i) {
    c.nodes.push_back(marq::Node::make_var(i));
    vars[i] = i;
  }
  std::vector<marq::SumEdge> edges;
  for (const auto& [mask, coeff] : p.terms) {
    if (mask == 0) {
      c.nodes.push_back(marq::Node::make_const(marq::Rational(1)));
    } else {
      std::vector<std::uint32_t> children;
      for (std::uint32_t i = 0; i < p.n; ++i)
        if (mask & (std::uint64_t(1) << i)) children.push_back(vars[i]);
      c.nodes.push_back(marq::Node::make_prod(std::move(children)));
    }
    edges.push_back(marq::SumEdge{coeff, static_cast<std::uint32_t>(c.nodes.size() - 1)});
  }
  if (edges.empty()) {
    c.nodes.push_back(marq::Node::make_const(marq::Rational(0)));
    c.output = static_cast<std::uint32_t>(c.nodes.size() - 1);
  } else {
    c.nodes.push_back(marq::Node::make_sum(std::move(edges)));
    c.output = static_cast<std::uint32_t>(c.nodes.size() - 1);
  }
  marq::prune_unreachable(c);
  return c;
}

inline marq::XorFormula rnd_xor_formula(std::mt19937_64& rng, std::uint32_t n,
                                        std::size_t max_clauses) {
  marq::XorFormula phi;
  phi.n = n;
  std::size_t count = rnd_below(rng, max_clauses + 1);
  for (std::size_t c = 0; c < count; ++c)
    phi.clauses.push_back({static_cast<std::uint32_t>(1 + rnd_below(rng, n)),
                           static_cast<std::uint32_t>(1 + rnd_below(rng, n)),
                           static_cast<std::uint32_t>(1 + rnd_below(rng, n))});
  return phi;
}

}  // namespace support
