#include "marq/query.hpp"

#include <algorithm>
#include <sstream>

#include "marq/eval.hpp"

namespace marq {

EvidenceString EvidenceString::parse(std::string_view word) {
  EvidenceString m;
  m.entries.reserve(word.size());
  for (char ch : word) {
    switch (ch) {
      case '0': m.entries.push_back(Mark::zero); break;
      case '1': m.entries.push_back(Mark::one); break;
      case '*': m.entries.push_back(Mark::star); break;
      default:
        throw UsageError("evidence strings are words over {0,1,*}; found '" +
                         std::string(1, ch) + "'");
    }
  }
  return m;
}

EvidenceString EvidenceString::all_stars(std::size_t n) {
  EvidenceString m;
  m.entries.assign(n, Mark::star);
  return m;
}

std::string EvidenceString::str() const {
  std::string s;
  s.reserve(entries.size());
  for (Mark m : entries)
    s += (m == Mark::zero ? '0' : m == Mark::one ? '1' : '*');
  return s;
}

std::size_t EvidenceString::count(Mark m) const {
  return static_cast<std::size_t>(std::count(entries.begin(), entries.end(), m));
}

VirtualEvidence VirtualEvidence::unit(std::size_t n) {
  VirtualEvidence w;
  w.pairs.assign(n, {Rational(1), Rational(1)});
  return w;
}

VirtualEvidence VirtualEvidence::parse(std::string_view text) {
  VirtualEvidence w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    std::string_view item =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw UsageError("virtual evidence entries are 'alpha:alphabar' pairs; found '" +
                       std::string(item) + "'");
    auto a = Rational::parse(item.substr(0, colon));
    auto b = Rational::parse(item.substr(colon + 1));
    if (!a || !b)
      throw UsageError("malformed virtual evidence pair '" + std::string(item) + "'");
    w.pairs.emplace_back(*a, *b);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  w.check_valid();
  return w;
}

void VirtualEvidence::check_valid() const {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [a, b] = pairs[i];
    if (a.sign() < 0 || b.sign() < 0)
      throw Error("virtual evidence weights must be nonnegative (coordinate " +
                  std::to_string(i) + ")");
    if (a.is_zero() && b.is_zero())
      throw Error("virtual evidence pair at coordinate " + std::to_string(i) +
                  " is (0, 0); at least one side must be positive");
  }
}

std::string VirtualEvidence::str() const {
  std::string s;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) s += ",";
    s += pairs[i].first.str() + ":" + pairs[i].second.str();
  }
  return s;
}

std::string Certificate::str() const {
  switch (kind) {
    case Kind::syntactic: return "syntactic";
    case Kind::semantic: return "semantic";
    case Kind::probabilistic:
      return "probabilistic (failure bound " + failure_bound.str() + ")";
    case Kind::trusted: return "trusted";
  }
  return "?";
}

Certificate certify(const Circuit& c, const CertifyOptions& opts) {
  if (check_syntactic_multilinearity(c).multilinear)
    return Certificate{Certificate::Kind::syntactic, Rational(0)};
  if (c.n_vars <= opts.exhaustive_limit) {
    SemanticOptions sem = opts.randomized;
    sem.mode = SemanticOptions::Mode::exhaustive;
    sem.exhaustive_limit = opts.exhaustive_limit;
    auto verdict = check_semantic_multilinearity(c, sem);
    if (verdict.kind == SemanticVerdict::Kind::multilinear)
      return Certificate{Certificate::Kind::semantic, Rational(0)};
    throw Error("circuit is not multilinear (witness variable " +
                std::to_string(*verdict.witness_var) + "); marginalization queries are undefined");
  }
  if (opts.allow_probabilistic) {
    SemanticOptions sem = opts.randomized;
    sem.mode = SemanticOptions::Mode::randomized;
    auto verdict = check_semantic_multilinearity(c, sem);
    if (verdict.kind == SemanticVerdict::Kind::probably_multilinear)
      return Certificate{Certificate::Kind::probabilistic, *verdict.failure_bound};
    throw Error("circuit is not multilinear (witness variable " +
                std::to_string(*verdict.witness_var) + "); marginalization queries are undefined");
  }
  throw Error(
      "no multilinearity certificate: the syntactic check fails and the circuit exceeds the "
      "exhaustive semantic limit; pass a trust override to proceed anyway");
}

Certificate trust(const Circuit&) {
  return Certificate{Certificate::Kind::trusted, Rational(0)};
}

namespace {

void check_evidence(const Circuit& c, const EvidenceString& m) {
  if (m.size() != c.n_vars)
    throw UsageError("evidence string has length " + std::to_string(m.size()) +
                     ", circuit has " + std::to_string(c.n_vars) + " variables");
}

}  // namespace

Rational vmar(const Circuit& c, const Certificate&, std::span<const Rational> point) {
  return eval_direct(c, point);
}

Rational mar(const Circuit& c, const Certificate& cert, const EvidenceString& m) {
  check_evidence(c, m);
  std::vector<Rational> point(c.n_vars);
  std::size_t stars = 0;
  const Rational half(1, 2);
  for (std::size_t i = 0; i < m.size(); ++i) {
    switch (m.entries[i]) {
      case Mark::zero: point[i] = Rational(0); break;
      case Mark::one: point[i] = Rational(1); break;
      case Mark::star: point[i] = half; ++stars; break;
    }
  }
  return Rational(pow2(stars)) * vmar(c, cert, point);
}

HammingProfile hmar_profile(const Circuit& c, const Certificate& cert,
                            const EvidenceString& m) {
  check_evidence(c, m);
  const std::uint32_t n = c.n_vars;
  const std::size_t ones = m.ones();
  const std::size_t stars = m.stars();

  // q(t) = t^#ones (t+1)^#stars p(u(t)) collects the weight-k mass as
  // the coefficient of t^k; its degree is at most n, so sampling at
  // t = 1..n+1 pins it down.
  std::vector<UnivariateSample> samples;
  samples.reserve(n + 1);
  std::vector<Rational> point(n);
  for (std::uint32_t t = 1; t <= n + 1; ++t) {
    Rational tr(static_cast<long>(t));
    Rational tp1(static_cast<long>(t) + 1);
    Rational star_value = tr / tp1;
    for (std::uint32_t i = 0; i < n; ++i) {
      switch (m.entries[i]) {
        case Mark::zero: point[i] = Rational(0); break;
        case Mark::one: point[i] = Rational(1); break;
        case Mark::star: point[i] = star_value; break;
      }
    }
    Rational q = pow(tr, ones) * pow(tp1, stars) * vmar(c, cert, point);
    samples.push_back(UnivariateSample{tr, std::move(q)});
  }

  HammingProfile profile;
  profile.coefficients = lagrange_interpolate(samples);
  profile.coefficients.resize(n + 1, Rational(0));
  return profile;
}

Rational hmar(const Circuit& c, const Certificate& cert, const EvidenceString& m,
              std::uint32_t k) {
  check_evidence(c, m);
  if (k > c.n_vars)
    throw UsageError("weight " + std::to_string(k) + " exceeds the variable count " +
                     std::to_string(c.n_vars));
  return hmar_profile(c, cert, m).coefficients[k];
}

Rational ve_marginal(const Circuit& c, const Certificate& cert, const VirtualEvidence& w,
                     const EvidenceString& m) {
  check_evidence(c, m);
  if (w.pairs.size() != c.n_vars)
    throw UsageError("virtual evidence has " + std::to_string(w.pairs.size()) +
                     " pairs, circuit has " + std::to_string(c.n_vars) + " variables");
  w.check_valid();

  Rational factor(1);
  std::vector<Rational> point(c.n_vars);
  for (std::uint32_t i = 0; i < c.n_vars; ++i) {
    const auto& [alpha, alpha_bar] = w.pairs[i];
    Rational ci;
    switch (m.entries[i]) {
      case Mark::one: ci = alpha; point[i] = Rational(1); break;
      case Mark::zero: ci = alpha_bar; point[i] = Rational(0); break;
      case Mark::star: {
        ci = alpha + alpha_bar;
        if (!ci.is_zero()) point[i] = alpha / ci;
        break;
      }
    }
    if (ci.is_zero()) return Rational(0);
    factor *= ci;
  }
  return factor * vmar(c, cert, point);
}

Rational ve_posterior(const Circuit& c, const Certificate& cert, const VirtualEvidence& w,
                      const EvidenceString& m) {
  Rational normalizer = ve_marginal(c, cert, w, EvidenceString::all_stars(c.n_vars));
  if (normalizer.is_zero())
    throw Error("posterior is undefined: the all-stars virtual-evidence mass is zero");
  return ve_marginal(c, cert, w, m) / normalizer;
}

}  // namespace marq
