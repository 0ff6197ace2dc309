#include "marq/analysis.hpp"

#include <algorithm>
#include <random>

#include "marq/eval.hpp"

namespace marq {

namespace {

// Degrees are upper bounds; saturate instead of overflowing on
// pathological repeated-squaring chains.
constexpr std::uint64_t kDegreeCap = 1ull << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return (a > kDegreeCap - b || a + b > kDegreeCap) ? kDegreeCap : a + b;
}

}  // namespace

bool varset_test(const VarSet& s, std::uint32_t i) {
  return (s[i / 64] >> (i % 64)) & 1;
}

bool varset_intersects(const VarSet& a, const VarSet& b) {
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[w] & b[w]) return true;
  return false;
}

std::vector<VarSet> reachable_vars(const Circuit& c) {
  const std::size_t words = (c.n_vars + 63) / 64;
  std::vector<VarSet> sets(c.nodes.size(), VarSet(words, 0));
  for (std::size_t id = 0; id < c.nodes.size(); ++id) {
    const Node& n = c.nodes[id];
    VarSet& s = sets[id];
    switch (n.kind) {
      case NodeKind::var:
        s[n.var / 64] |= 1ull << (n.var % 64);
        break;
      case NodeKind::constant:
        break;
      case NodeKind::sum:
        for (const auto& e : n.sum)
          for (std::size_t w = 0; w < words; ++w) s[w] |= sets[e.child][w];
        break;
      case NodeKind::prod:
        for (auto ch : n.prod)
          for (std::size_t w = 0; w < words; ++w) s[w] |= sets[ch][w];
        break;
    }
  }
  return sets;
}

DegreeReport formal_degree(const Circuit& c) {
  DegreeReport report;
  report.per_node_total_degree.resize(c.nodes.size(), 0);
  auto& deg = report.per_node_total_degree;
  for (std::size_t id = 0; id < c.nodes.size(); ++id) {
    const Node& n = c.nodes[id];
    switch (n.kind) {
      case NodeKind::var:
      case NodeKind::constant:
        deg[id] = 1;
        break;
      case NodeKind::sum: {
        std::uint64_t best = 0;
        for (const auto& e : n.sum)
          best = std::max(best, sat_add(deg[e.child], e.weight.is_one() ? 0 : 1));
        deg[id] = best;
        break;
      }
      case NodeKind::prod: {
        std::uint64_t total = 0;
        for (auto ch : n.prod) total = sat_add(total, deg[ch]);
        deg[id] = total;
        break;
      }
    }
  }
  report.output_total_degree = deg[c.output];

  report.per_variable_output_degree.assign(c.n_vars, 0);
  std::vector<std::uint64_t> vdeg(c.nodes.size());
  for (std::uint32_t v = 0; v < c.n_vars; ++v) {
    for (std::size_t id = 0; id < c.nodes.size(); ++id) {
      const Node& n = c.nodes[id];
      switch (n.kind) {
        case NodeKind::var:
          vdeg[id] = (n.var == v) ? 1 : 0;
          break;
        case NodeKind::constant:
          vdeg[id] = 0;
          break;
        case NodeKind::sum: {
          std::uint64_t best = 0;
          for (const auto& e : n.sum) best = std::max(best, vdeg[e.child]);
          vdeg[id] = best;
          break;
        }
        case NodeKind::prod: {
          std::uint64_t total = 0;
          for (auto ch : n.prod) total = sat_add(total, vdeg[ch]);
          vdeg[id] = total;
          break;
        }
      }
    }
    report.per_variable_output_degree[v] = vdeg[c.output];
  }
  return report;
}

SyntacticCheck check_syntactic_multilinearity(const Circuit& c) {
  auto sets = reachable_vars(c);
  const std::size_t words = (c.n_vars + 63) / 64;
  for (std::size_t id = 0; id < c.nodes.size(); ++id) {
    const Node& n = c.nodes[id];
    if (n.kind != NodeKind::prod) continue;
    VarSet seen(words, 0);
    for (auto ch : n.prod) {
      if (varset_intersects(seen, sets[ch]))
        return SyntacticCheck{false, static_cast<std::uint32_t>(id)};
      for (std::size_t w = 0; w < words; ++w) seen[w] |= sets[ch][w];
    }
  }
  return SyntacticCheck{true, std::nullopt};
}

namespace {

using TermMap = std::map<std::vector<std::uint64_t>, Rational>;

void add_term(TermMap& into, const std::vector<std::uint64_t>& exps, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto it = into.find(exps);
  if (it == into.end()) {
    into.emplace(exps, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) into.erase(it);
  }
}

std::vector<std::uint64_t> exp_sum(const std::vector<std::uint64_t>& a,
                                   const std::vector<std::uint64_t>& b, std::uint32_t node_id) {
  std::vector<std::uint64_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > UINT64_MAX - b[i])
      throw CapacityError("exponent overflow while expanding node " + std::to_string(node_id));
    out[i] = a[i] + b[i];
  }
  return out;
}

}  // namespace

SparsePoly expand_sparse(const Circuit& c, std::size_t monomial_cap) {
  std::vector<TermMap> polys(c.nodes.size());
  auto guard = [&](std::size_t id) {
    if (polys[id].size() > monomial_cap)
      throw CapacityError("monomial cap " + std::to_string(monomial_cap) +
                          " exceeded while expanding node " + std::to_string(id));
  };
  const std::vector<std::uint64_t> zero_exps(c.n_vars, 0);

  for (std::uint32_t id = 0; id < c.nodes.size(); ++id) {
    const Node& n = c.nodes[id];
    switch (n.kind) {
      case NodeKind::var: {
        auto exps = zero_exps;
        exps[n.var] = 1;
        polys[id].emplace(std::move(exps), Rational(1));
        break;
      }
      case NodeKind::constant:
        if (!n.value.is_zero()) polys[id].emplace(zero_exps, n.value);
        break;
      case NodeKind::sum:
        for (const auto& e : n.sum)
          for (const auto& [exps, coeff] : polys[e.child])
            add_term(polys[id], exps, e.weight * coeff);
        guard(id);
        break;
      case NodeKind::prod: {
        TermMap acc;
        acc.emplace(zero_exps, Rational(1));
        for (auto ch : n.prod) {
          TermMap next;
          for (const auto& [ea, ca] : acc)
            for (const auto& [eb, cb] : polys[ch]) {
              add_term(next, exp_sum(ea, eb, id), ca * cb);
              if (next.size() > monomial_cap)
                throw CapacityError("monomial cap " + std::to_string(monomial_cap) +
                                    " exceeded while expanding node " + std::to_string(id));
            }
          acc = std::move(next);
        }
        polys[id] = std::move(acc);
        break;
      }
    }
  }

  SparsePoly out;
  out.n = c.n_vars;
  out.terms = std::move(polys[c.output]);
  return out;
}

SemanticVerdict check_semantic_multilinearity(const Circuit& c, const SemanticOptions& opts) {
  if (opts.mode == SemanticOptions::Mode::exhaustive) {
    if (c.n_vars > opts.exhaustive_limit)
      throw CapacityError("exhaustive semantic check limited to " +
                          std::to_string(opts.exhaustive_limit) + " variables, circuit has " +
                          std::to_string(c.n_vars));
    SparsePoly p = expand_sparse(c, opts.monomial_cap);
    for (const auto& [exps, coeff] : p.terms)
      for (std::uint32_t v = 0; v < c.n_vars; ++v)
        if (exps[v] > 1)
          return SemanticVerdict{SemanticVerdict::Kind::not_multilinear, v, std::nullopt};
    return SemanticVerdict{SemanticVerdict::Kind::multilinear, std::nullopt, std::nullopt};
  }

  // Randomized mode: for each variable with formal degree bound d >= 2,
  // fix the other coordinates at random integers, interpolate the
  // univariate section exactly, and demand that all coefficients of
  // degree >= 2 vanish.
  DegreeReport degrees = formal_degree(c);
  if (opts.coord_range < 2) throw UsageError("randomized check needs a coordinate range >= 2");
  std::mt19937_64 rng(opts.seed);
  auto rnd_coord = [&]() {
    return Rational(BigInt(static_cast<unsigned long>(rng() % opts.coord_range)));
  };

  std::uint64_t checked_vars = 0;
  for (std::uint32_t v = 0; v < c.n_vars; ++v) {
    const std::uint64_t d = degrees.per_variable_output_degree[v];
    if (d <= 1) continue;  // already multilinear in v by the syntactic bound
    ++checked_vars;
    for (std::uint32_t trial = 0; trial < opts.trials; ++trial) {
      std::vector<Rational> point(c.n_vars);
      for (std::uint32_t i = 0; i < c.n_vars; ++i)
        if (i != v) point[i] = rnd_coord();
      std::vector<UnivariateSample> samples;
      samples.reserve(d + 1);
      for (std::uint64_t t = 1; t <= d + 1; ++t) {
        point[v] = Rational(static_cast<long>(t));
        samples.push_back(UnivariateSample{point[v], eval_direct(c, point)});
      }
      auto coeffs = lagrange_interpolate(samples);
      for (std::size_t deg = 2; deg < coeffs.size(); ++deg)
        if (!coeffs[deg].is_zero())
          return SemanticVerdict{SemanticVerdict::Kind::not_multilinear, v, std::nullopt};
    }
  }

  // Schwartz-Zippel union bound: each suppressed coefficient is a
  // polynomial of total degree at most the formal output bound; a
  // nonzero one evades `trials` independent random points with
  // probability at most (d/range)^trials.
  Rational per_var =
      pow(Rational(BigInt(static_cast<unsigned long>(
                       std::min<std::uint64_t>(degrees.output_total_degree, opts.coord_range))),
                   BigInt(static_cast<unsigned long>(opts.coord_range))),
          opts.trials);
  Rational bound = Rational(BigInt(static_cast<unsigned long>(checked_vars))) * per_var;
  if (bound > Rational(1)) bound = Rational(1);
  return SemanticVerdict{SemanticVerdict::Kind::probably_multilinear, std::nullopt, bound};
}

bool SparsePoly::is_multilinear() const {
  for (const auto& [exps, coeff] : terms)
    for (auto e : exps)
      if (e > 1) return false;
  return true;
}

SparseMultilinearPoly to_multilinear(const SparsePoly& p) {
  SparseMultilinearPoly out;
  out.n = p.n;
  for (const auto& [exps, coeff] : p.terms) {
    std::uint64_t mask = 0;
    for (std::uint32_t v = 0; v < p.n; ++v) {
      if (exps[v] > 1) throw Error("polynomial is not multilinear (variable " + std::to_string(v) + ")");
      if (exps[v] == 1) {
        if (v >= 64) throw CapacityError("multilinear masks support at most 64 variables");
        mask |= 1ull << v;
      }
    }
    out.terms.emplace(mask, coeff);
  }
  return out;
}

}  // namespace marq
