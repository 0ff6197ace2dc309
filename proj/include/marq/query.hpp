#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "marq/analysis.hpp"
#include "marq/circuit.hpp"
#include "marq/rational.hpp"

namespace marq {

enum class Mark : std::uint8_t { zero, one, star };

// Word over {0,1,*}: fixed coordinates carry hard evidence, starred
// coordinates are marginalized.
struct EvidenceString {
  std::vector<Mark> entries;

  static EvidenceString parse(std::string_view word);
  static EvidenceString all_stars(std::size_t n);
  std::string str() const;

  std::size_t size() const { return entries.size(); }
  std::size_t count(Mark m) const;
  std::size_t ones() const { return count(Mark::one); }
  std::size_t stars() const { return count(Mark::star); }
};

// Per-coordinate nonnegative scaling pair (alpha_i, alphabar_i); at
// least one of each pair must be positive.
struct VirtualEvidence {
  std::vector<std::pair<Rational, Rational>> pairs;

  static VirtualEvidence unit(std::size_t n);
  // Comma-separated "alpha:alphabar" pairs, each side a rational.
  static VirtualEvidence parse(std::string_view text);
  void check_valid() const;  // throws Error on an all-zero pair
  std::string str() const;
};

// Weight-stratified marginal masses: coefficient k holds the sum of the
// function over evidence-consistent points of Hamming weight k.
struct HammingProfile {
  std::vector<Rational> coefficients;  // n+1 entries
};

struct Certificate {
  enum class Kind { syntactic, semantic, probabilistic, trusted };
  Kind kind = Kind::syntactic;
  // Failure-probability bound, nonzero only for probabilistic.
  Rational failure_bound;

  std::string str() const;
};

struct CertifyOptions {
  std::uint32_t exhaustive_limit = 14;
  bool allow_probabilistic = true;
  SemanticOptions randomized = {};
};

// The query tiers below are only sound for circuits computing
// multilinear polynomials, so they demand a certificate. certify() tries
// the syntactic check, then the exhaustive semantic check (within the
// limit), then the randomized check; it throws Error when all of them
// refuse or fail. trust() bypasses certification at the caller's risk.
Certificate certify(const Circuit& c, const CertifyOptions& opts = {});
Certificate trust(const Circuit& c);

// p at an arbitrary rational point; the virtual-evidence tier.
Rational vmar(const Circuit& c, const Certificate& cert, std::span<const Rational> point);

// Sum of the function over all points consistent with m, computed as
// 2^#stars * p(u) with u_i = m_i on fixed coordinates and 1/2 on stars.
Rational mar(const Circuit& c, const Certificate& cert, const EvidenceString& m);

// Sum restricted to points of Hamming weight exactly k. Infeasible k in
// [0, n] yields 0; k > n is an error.
Rational hmar(const Circuit& c, const Certificate& cert, const EvidenceString& m,
              std::uint32_t k);

// All n+1 weight-stratified sums from a single interpolation batch of
// q(t) = t^#ones * (t+1)^#stars * p(u(t)), u_i(t) = 0, 1, or t/(t+1),
// sampled at t = 1..n+1.
HammingProfile hmar_profile(const Circuit& c, const Certificate& cert,
                            const EvidenceString& m);

// Sum over evidence-consistent points of f(x) * prod_i (alpha_i x_i +
// alphabar_i (1-x_i)), computed with a single evaluation.
Rational ve_marginal(const Circuit& c, const Certificate& cert, const VirtualEvidence& w,
                     const EvidenceString& m);

// ve_marginal normalized by the all-stars mass; zero normalizer is an
// explicit error.
Rational ve_posterior(const Circuit& c, const Certificate& cert, const VirtualEvidence& w,
                      const EvidenceString& m);

}  // namespace marq
