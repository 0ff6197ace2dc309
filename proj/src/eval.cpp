#include "marq/eval.hpp"

#include <algorithm>

namespace marq {

Rational eval_direct(const Circuit& c, std::span<const Rational> point) {
  if (point.size() != c.n_vars)
    throw UsageError("point has " + std::to_string(point.size()) + " coordinates, circuit has " +
                     std::to_string(c.n_vars) + " variables");
  std::vector<Rational> values(c.nodes.size());
  for (std::size_t id = 0; id < c.nodes.size(); ++id) {
    const Node& n = c.nodes[id];
    switch (n.kind) {
      case NodeKind::var:
        values[id] = point[n.var];
        break;
      case NodeKind::constant:
        values[id] = n.value;
        break;
      case NodeKind::sum: {
        Rational acc(0);
        for (const auto& e : n.sum) acc += e.weight * values[e.child];
        values[id] = std::move(acc);
        break;
      }
      case NodeKind::prod: {
        Rational acc(1);
        for (auto ch : n.prod) acc *= values[ch];
        values[id] = std::move(acc);
        break;
      }
    }
  }
  return values[c.output];
}

EvalTrace eval_integer(const Circuit& c, std::span<const BigInt> point) {
  if (point.size() != c.n_vars)
    throw UsageError("point has " + std::to_string(point.size()) + " coordinates, circuit has " +
                     std::to_string(c.n_vars) + " variables");
  EvalTrace trace;
  std::vector<Rational> values(c.nodes.size());
  for (std::size_t id = 0; id < c.nodes.size(); ++id) {
    const Node& n = c.nodes[id];
    switch (n.kind) {
      case NodeKind::var:
        values[id] = Rational(point[n.var]);
        break;
      case NodeKind::constant:
        values[id] = n.value;
        break;
      case NodeKind::sum: {
        Rational acc(0);
        for (const auto& e : n.sum) acc += e.weight * values[e.child];
        values[id] = std::move(acc);
        break;
      }
      case NodeKind::prod: {
        Rational acc(1);
        for (auto ch : n.prod) acc *= values[ch];
        values[id] = std::move(acc);
        break;
      }
    }
    trace.max_bitwidth_seen = std::max(trace.max_bitwidth_seen, bit_width(values[id]));
  }
  trace.value = values[c.output];
  trace.node_count_evaluated = c.nodes.size();
  return trace;
}

std::uint64_t encoded_input_length(std::span<const BigInt> point) {
  std::uint64_t total = 0;
  for (const auto& a : point) total += int_bit_width(a);
  return total;
}

std::vector<Rational> lagrange_interpolate(std::span<const UnivariateSample> samples) {
  if (samples.empty()) throw UsageError("interpolation requires at least one sample");
  const std::size_t k = samples.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (samples[i].abscissa == samples[j].abscissa)
        throw Error("duplicate interpolation abscissa " + samples[i].abscissa.str());

  // Newton form: divided differences, then expand the nested products.
  std::vector<Rational> dd(k);
  for (std::size_t i = 0; i < k; ++i) dd[i] = samples[i].ordinate;
  for (std::size_t level = 1; level < k; ++level)
    for (std::size_t i = k - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (samples[i].abscissa - samples[i - level].abscissa);
      if (i == level) break;
    }

  std::vector<Rational> coeffs(k, Rational(0));
  std::vector<Rational> basis{Rational(1)};  // prod_{j<level} (t - x_j)
  for (std::size_t level = 0; level < k; ++level) {
    for (std::size_t d = 0; d < basis.size(); ++d) coeffs[d] += dd[level] * basis[d];
    if (level + 1 < k) {
      basis.push_back(Rational(0));
      for (std::size_t d = basis.size() - 1; d > 0; --d)
        basis[d] = basis[d - 1] - samples[level].abscissa * basis[d];
      basis[0] = -samples[level].abscissa * basis[0];
    }
  }
  return coeffs;
}

Rational eval_via_integer_reduction(const Circuit& c, std::span<const Rational> point,
                                    std::uint64_t degree_bound,
                                    std::vector<ReductionSample>* audit) {
  if (point.size() != c.n_vars)
    throw UsageError("point has " + std::to_string(point.size()) + " coordinates, circuit has " +
                     std::to_string(c.n_vars) + " variables");

  BigInt common_den(1);
  for (const auto& r : point) common_den *= r.den();
  std::vector<BigInt> scaled(c.n_vars);  // c_i = a_i * D / b_i
  for (std::size_t i = 0; i < point.size(); ++i)
    scaled[i] = point[i].num() * (common_den / point[i].den());

  const std::uint64_t n_samples = degree_bound + 1;
  std::vector<UnivariateSample> samples;
  samples.reserve(n_samples);
  std::vector<BigInt> at(c.n_vars);
  for (std::uint64_t t = 1; t <= n_samples; ++t) {
    for (std::size_t i = 0; i < scaled.size(); ++i) at[i] = scaled[i] * static_cast<long>(t);
    EvalTrace trace = eval_integer(c, at);
    if (audit)
      audit->push_back(ReductionSample{BigInt(static_cast<long>(t)),
                                       encoded_input_length(at), trace.max_bitwidth_seen});
    samples.push_back(UnivariateSample{Rational(static_cast<long>(t)), trace.value});
  }

  std::vector<Rational> coeffs = lagrange_interpolate(samples);
  // p(a/b) = sum_k coeff_k * D^-k, via Horner in 1/D.
  Rational inv_d = Rational(1) / Rational(common_den);
  Rational result(0);
  for (std::size_t k = coeffs.size(); k-- > 0;) result = result * inv_d + coeffs[k];
  return result;
}

}  // namespace marq
