#include "marq/multilinear.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "marq/analysis.hpp"
#include "marq/eval.hpp"
#include "marq/query.hpp"

namespace marq {

TruthTable table_from_circuit(const Circuit& c, std::uint32_t n_limit) {
  if (c.n_vars > n_limit)
    throw CapacityError("truth table limited to " + std::to_string(n_limit) +
                        " variables, circuit has " + std::to_string(c.n_vars));
  TruthTable t;
  t.n = c.n_vars;
  t.values.resize(std::size_t(1) << c.n_vars);
  std::vector<Rational> point(c.n_vars, Rational(0));
  for (std::uint64_t mask = 0; mask < t.values.size(); ++mask) {
    for (std::uint32_t i = 0; i < c.n_vars; ++i)
      point[i] = Rational((mask >> i) & 1 ? 1 : 0);
    t.values[mask] = eval_direct(c, point);
  }
  return t;
}

SparseMultilinearPoly coefficients_from_table(const TruthTable& t) {
  std::vector<Rational> a = t.values;
  const std::uint64_t size = a.size();
  for (std::uint32_t d = 0; d < t.n; ++d)
    for (std::uint64_t s = 0; s < size; ++s)
      if (s & (std::uint64_t(1) << d)) a[s] -= a[s ^ (std::uint64_t(1) << d)];
  SparseMultilinearPoly p;
  p.n = t.n;
  for (std::uint64_t s = 0; s < size; ++s)
    if (!a[s].is_zero()) p.terms.emplace(s, std::move(a[s]));
  return p;
}

TruthTable table_from_coefficients(const SparseMultilinearPoly& p) {
  TruthTable t;
  t.n = p.n;
  t.values.assign(std::size_t(1) << p.n, Rational(0));
  for (const auto& [mask, coeff] : p.terms) t.values[mask] = coeff;
  for (std::uint32_t d = 0; d < t.n; ++d)
    for (std::uint64_t s = 0; s < t.values.size(); ++s)
      if (s & (std::uint64_t(1) << d)) t.values[s] += t.values[s ^ (std::uint64_t(1) << d)];
  return t;
}

NetworkPoly network_from_table(const TruthTable& t) {
  NetworkPoly np;
  np.n = t.n;
  for (std::uint64_t s = 0; s < t.values.size(); ++s)
    if (!t.values[s].is_zero()) np.terms.emplace(s, t.values[s]);
  return np;
}

Rational eval_poly(const SparseMultilinearPoly& p, std::span<const Rational> point) {
  if (point.size() != p.n) throw UsageError("point size does not match polynomial arity");
  Rational acc(0);
  for (const auto& [mask, coeff] : p.terms) {
    Rational term = coeff;
    for (std::uint32_t i = 0; i < p.n; ++i)
      if (mask & (std::uint64_t(1) << i)) term *= point[i];
    acc += term;
  }
  return acc;
}

Rational eval_poly(const SparsePoly& p, std::span<const Rational> point) {
  if (point.size() != p.n) throw UsageError("point size does not match polynomial arity");
  Rational acc(0);
  for (const auto& [exps, coeff] : p.terms) {
    Rational term = coeff;
    for (std::uint32_t i = 0; i < p.n; ++i)
      if (exps[i]) term *= pow(point[i], exps[i]);
    acc += term;
  }
  return acc;
}

Rational network_eval(const NetworkPoly& np, std::span<const Rational> x,
                      std::span<const Rational> xbar) {
  if (x.size() != np.n || xbar.size() != np.n)
    throw UsageError("network evaluation needs n values for x and for xbar");
  Rational acc(0);
  for (const auto& [mask, coeff] : np.terms) {
    Rational term = coeff;
    for (std::uint32_t i = 0; i < np.n; ++i)
      term *= (mask & (std::uint64_t(1) << i)) ? x[i] : xbar[i];
    acc += term;
  }
  return acc;
}

Rational network_eval(const Circuit& c, std::span<const Rational> x,
                      std::span<const Rational> xbar) {
  if (x.size() != c.n_vars || xbar.size() != c.n_vars)
    throw UsageError("network evaluation needs n values for x and for xbar");

  std::vector<std::uint32_t> degenerate;  // coordinates with x_i + xbar_i = 0
  for (std::uint32_t i = 0; i < c.n_vars; ++i)
    if ((x[i] + xbar[i]).is_zero()) degenerate.push_back(i);

  // pbar is linear in each (x_i, xbar_i) pair, so splitting a
  // degenerate coordinate into its (1,0) and (0,1) sections is exact.
  std::vector<Rational> point(c.n_vars);
  Rational total(0);
  const std::uint64_t splits = std::uint64_t(1) << degenerate.size();
  for (std::uint64_t choice = 0; choice < splits; ++choice) {
    Rational factor(1);
    for (std::uint32_t i = 0; i < c.n_vars; ++i) {
      Rational pair_sum = x[i] + xbar[i];
      if (!pair_sum.is_zero()) {
        factor *= pair_sum;
        point[i] = x[i] / pair_sum;
      }
    }
    for (std::size_t d = 0; d < degenerate.size(); ++d) {
      const std::uint32_t i = degenerate[d];
      const bool take_x = (choice >> d) & 1;
      factor *= take_x ? x[i] : xbar[i];
      point[i] = Rational(take_x ? 1 : 0);
    }
    if (factor.is_zero()) continue;
    total += factor * eval_direct(c, point);
  }
  return total;
}

namespace {

class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::uint32_t n_vars) { c_.n_vars = n_vars; }

  std::uint32_t add(Node n) {
    c_.nodes.push_back(std::move(n));
    return static_cast<std::uint32_t>(c_.nodes.size() - 1);
  }

  Circuit finish(std::uint32_t output) {
    c_.output = output;
    return std::move(c_);
  }

 private:
  Circuit c_;
};

}  // namespace

Circuit network_circuit(const Circuit& c) {
  auto syn = check_syntactic_multilinearity(c);
  if (!syn.multilinear)
    throw Error("network transform requires a syntactically multilinear circuit (product node " +
                std::to_string(*syn.violating_product) +
                " violates it); use network_eval instead");

  const std::uint32_t n = c.n_vars;
  auto sets = reachable_vars(c);
  CircuitBuilder builder(2 * n);

  // Lazily created per variable: x_i, xbar_i, and the pair sum
  // s_i = x_i + xbar_i used as the smoothing factor.
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> x_node(n, kUnset), pair_sum(n, kUnset);
  auto x_of = [&](std::uint32_t i) {
    if (x_node[i] == kUnset) x_node[i] = builder.add(Node::make_var(i));
    return x_node[i];
  };
  auto pair_sum_of = [&](std::uint32_t i) {
    if (pair_sum[i] == kUnset) {
      std::uint32_t xb = builder.add(Node::make_var(n + i));
      pair_sum[i] = builder.add(
          Node::make_sum({SumEdge{Rational(1), x_of(i)}, SumEdge{Rational(1), xb}}));
    }
    return pair_sum[i];
  };

  // Each original gate maps to a gate computing the network transform
  // of its polynomial over its own reachable variables. Products of
  // disjoint universes multiply directly; sum edges are padded with the
  // pair sums of the variables their child is missing.
  std::vector<std::uint32_t> mapped(c.nodes.size(), kUnset);
  for (std::uint32_t id = 0; id < c.nodes.size(); ++id) {
    const Node& node = c.nodes[id];
    switch (node.kind) {
      case NodeKind::var:
        mapped[id] = x_of(node.var);
        break;
      case NodeKind::constant:
        mapped[id] = builder.add(Node::make_const(node.value));
        break;
      case NodeKind::prod: {
        std::vector<std::uint32_t> children;
        children.reserve(node.prod.size());
        for (auto ch : node.prod) children.push_back(mapped[ch]);
        mapped[id] = builder.add(Node::make_prod(std::move(children)));
        break;
      }
      case NodeKind::sum: {
        std::vector<SumEdge> edges;
        edges.reserve(node.sum.size());
        for (const auto& e : node.sum) {
          std::vector<std::uint32_t> missing;
          for (std::uint32_t v = 0; v < n; ++v)
            if (varset_test(sets[id], v) && !varset_test(sets[e.child], v))
              missing.push_back(v);
          std::uint32_t target = mapped[e.child];
          if (!missing.empty()) {
            std::vector<std::uint32_t> factors{target};
            for (auto v : missing) factors.push_back(pair_sum_of(v));
            target = builder.add(Node::make_prod(std::move(factors)));
          }
          edges.push_back(SumEdge{e.weight, target});
        }
        mapped[id] = builder.add(Node::make_sum(std::move(edges)));
        break;
      }
    }
  }

  std::uint32_t out = mapped[c.output];
  std::vector<std::uint32_t> missing;
  for (std::uint32_t v = 0; v < n; ++v)
    if (!varset_test(sets[c.output], v)) missing.push_back(v);
  if (!missing.empty()) {
    std::vector<std::uint32_t> factors{out};
    for (auto v : missing) factors.push_back(pair_sum_of(v));
    out = builder.add(Node::make_prod(std::move(factors)));
  }
  return builder.finish(out);
}

namespace {

// Evidence as a pair of masks: which coordinates are fixed, and the
// fixed values on those coordinates.
struct EvidenceMasks {
  std::uint64_t fixed = 0;
  std::uint64_t values = 0;
};

EvidenceMasks evidence_masks(const EvidenceString& m) {
  if (m.size() > 64) throw CapacityError("brute-force oracles support at most 64 variables");
  EvidenceMasks em;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.entries[i] == Mark::star) continue;
    em.fixed |= std::uint64_t(1) << i;
    if (m.entries[i] == Mark::one) em.values |= std::uint64_t(1) << i;
  }
  return em;
}

}  // namespace

Rational brute_mar(const TruthTable& t, const EvidenceString& m) {
  if (m.size() != t.n) throw UsageError("evidence length does not match table arity");
  auto em = evidence_masks(m);
  Rational acc(0);
  for (std::uint64_t x = 0; x < t.values.size(); ++x)
    if ((x & em.fixed) == em.values) acc += t.values[x];
  return acc;
}

Rational brute_hmar(const TruthTable& t, const EvidenceString& m, std::uint32_t k) {
  if (m.size() != t.n) throw UsageError("evidence length does not match table arity");
  auto em = evidence_masks(m);
  Rational acc(0);
  for (std::uint64_t x = 0; x < t.values.size(); ++x)
    if ((x & em.fixed) == em.values &&
        static_cast<std::uint32_t>(__builtin_popcountll(x)) == k)
      acc += t.values[x];
  return acc;
}

Rational brute_vmar(const SparseMultilinearPoly& p, std::span<const Rational> point) {
  return eval_poly(p, point);
}

TableParseResult parse_table(std::istream& in) {
  TableParseResult result;
  TruthTable& t = result.table;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::vector<bool> seen;

  while (std::getline(in, line)) {
    ++line_no;
    std::string body = line.substr(0, line.find('#'));
    std::istringstream ss(body);
    std::string first;
    if (!(ss >> first)) continue;

    if (!saw_header) {
      if (first != "table") throw ParseError("expected 'table <n>' header", line_no);
      unsigned long n = 0;
      if (!(ss >> n) || n < 1 || n > 26) throw ParseError("bad table arity", line_no);
      t.n = static_cast<std::uint32_t>(n);
      t.values.assign(std::size_t(1) << t.n, Rational(0));
      seen.assign(t.values.size(), false);
      saw_header = true;
      continue;
    }

    if (first.size() != t.n)
      throw ParseError("bitstring '" + first + "' has length " + std::to_string(first.size()) +
                           ", expected " + std::to_string(t.n),
                       line_no);
    std::uint64_t mask = 0;
    for (std::uint32_t i = 0; i < t.n; ++i) {
      if (first[i] == '1')
        mask |= std::uint64_t(1) << i;
      else if (first[i] != '0')
        throw ParseError("bitstring '" + first + "' contains '" + std::string(1, first[i]) + "'",
                         line_no);
    }
    std::string value;
    if (!(ss >> value)) throw ParseError("missing value after bitstring", line_no);
    auto r = Rational::parse(value);
    if (!r) throw ParseError("malformed rational '" + value + "'", line_no);
    if (seen[mask])
      throw ParseError("duplicate row for bitstring '" + first + "'", line_no);
    seen[mask] = true;
    t.values[mask] = *r;
  }

  if (!saw_header) throw ParseError("empty input: missing 'table' header");
  std::size_t missing = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), false));
  if (missing > 0)
    result.warnings.push_back(std::to_string(missing) + " row(s) missing, defaulted to 0");
  return result;
}

std::string serialize_table(const TruthTable& t) {
  if (t.n < 1) throw UsageError("table files require at least one variable");
  std::ostringstream out;
  out << "table " << t.n << "\n";
  for (std::uint64_t mask = 0; mask < t.values.size(); ++mask) {
    for (std::uint32_t i = 0; i < t.n; ++i) out << (((mask >> i) & 1) ? '1' : '0');
    out << " " << t.values[mask].str() << "\n";
  }
  return out.str();
}

}  // namespace marq
