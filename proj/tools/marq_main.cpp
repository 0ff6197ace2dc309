// marq: exact marginalization queries over arithmetic circuits.
//
// Every computation is exact-rational; values print as a/b unless
// --decimal is given. Exit codes: 0 success, 1 domain error, 2 usage
// error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "marq/analysis.hpp"
#include "marq/circuit.hpp"
#include "marq/eval.hpp"
#include "marq/gf2.hpp"
#include "marq/multilinear.hpp"
#include "marq/nnf.hpp"
#include "marq/query.hpp"

using namespace marq;

namespace {

struct Options {
  bool porcelain = false;
  bool decimal = false;
  unsigned decimal_digits = 6;
  bool trust_flag = false;
  // 0 means "not set": each operation keeps its own default cap.
  std::uint32_t limit_n = 0;
  std::uint32_t limit_dim = 0;
  std::size_t limit_monomials = 0;

  std::uint32_t table_limit() const { return limit_n ? limit_n : kDefaultTableLimit; }
  std::uint32_t exhaustive_limit() const { return limit_n ? limit_n : 14; }
  std::uint32_t dim_limit() const { return limit_dim ? limit_dim : kDefaultDimLimit; }
  std::size_t monomial_cap() const {
    return limit_monomials ? limit_monomials : kDefaultMonomialCap;
  }
};

Options g_opts;

std::string render(const Rational& r) {
  return g_opts.decimal ? r.decimal(g_opts.decimal_digits) : r.str();
}

void apply_capacity_profile() {
  const char* profile = std::getenv("MARQ_CAPACITY");
  if (!profile) return;
  std::string p(profile);
  if (p == "small") {
    g_opts.limit_n = 12;
    g_opts.limit_dim = 16;
    g_opts.limit_monomials = 1u << 14;
  } else if (p == "large") {
    g_opts.limit_n = 24;
    g_opts.limit_dim = 28;
    g_opts.limit_monomials = 1u << 22;
  } else if (p != "default") {
    throw UsageError("MARQ_CAPACITY must be small, default, or large; got '" + p + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_nnf(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok == "c") continue;
    return tok == "nnf";
  }
  return false;
}

// Circuit inputs may be native circuit text or an NNF file; NNF is
// detected by its header and imported.
Circuit load_circuit(const std::string& path) {
  std::string text = read_file(path);
  if (looks_like_nnf(text)) {
    std::istringstream in(text);
    return import_dnnf(in);
  }
  auto result = parse_circuit(text);
  for (const auto& w : result.warnings) std::cerr << "warning: " << path << ": " << w << "\n";
  return std::move(result.circuit);
}

Certificate certificate_for(const Circuit& c) {
  if (g_opts.trust_flag) return trust(c);
  CertifyOptions opts;
  opts.exhaustive_limit = g_opts.exhaustive_limit();
  opts.randomized.monomial_cap = g_opts.monomial_cap();
  auto cert = certify(c, opts);
  if (cert.kind == Certificate::Kind::probabilistic)
    std::cerr << "note: multilinearity certified probabilistically (failure bound "
              << cert.failure_bound.str() << ")\n";
  return cert;
}

std::vector<Rational> parse_point(const std::string& text, std::uint32_t n) {
  std::vector<Rational> point;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    auto piece = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto r = Rational::parse(piece);
    if (!r) throw UsageError("malformed coordinate '" + piece + "'");
    point.push_back(*r);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (point.size() != n)
    throw UsageError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                     std::to_string(n));
  return point;
}

std::string monomial_name(std::uint64_t mask, std::uint32_t n) {
  if (mask == 0) return "1";
  std::string s;
  for (std::uint32_t i = 0; i < n; ++i)
    if (mask & (std::uint64_t(1) << i)) {
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(i);
    }
  return s;
}

std::string network_monomial_name(std::uint64_t mask, std::uint32_t n) {
  std::string s;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!s.empty()) s += "*";
    s += (mask & (std::uint64_t(1) << i)) ? "x" + std::to_string(i) : "xb" + std::to_string(i);
  }
  return s.empty() ? "1" : s;
}

void print_value(const Rational& value) {
  if (g_opts.porcelain)
    std::cout << "value: " << render(value) << "\n";
  else
    std::cout << render(value) << "\n";
}

EvidenceString evidence_for(const Circuit& c, const std::string& word) {
  auto m = EvidenceString::parse(word);
  if (m.size() != c.n_vars)
    throw UsageError("evidence '" + word + "' has length " + std::to_string(m.size()) +
                     ", circuit has " + std::to_string(c.n_vars) + " variables");
  return m;
}

int cmd_validate(const std::string& path) {
  auto c = load_circuit(path);
  auto report = validate(c);
  for (const auto& f : report.findings) {
    if (g_opts.porcelain) {
      std::cout << "check." << f.check << ": " << (f.ok ? "pass" : "fail") << "\n";
    } else {
      std::cout << (f.ok ? "PASS " : "FAIL ") << f.check;
      if (!f.ok && !f.detail.empty()) std::cout << " (" << f.detail << ")";
      std::cout << "\n";
    }
  }
  return report.ok() ? 0 : 1;
}

int cmd_degree(const std::string& path) {
  auto c = load_circuit(path);
  auto report = formal_degree(c);
  if (g_opts.porcelain) {
    std::cout << "output_total_degree: " << report.output_total_degree << "\n";
    for (std::uint32_t v = 0; v < c.n_vars; ++v)
      std::cout << "per_variable." << v << ": " << report.per_variable_output_degree[v] << "\n";
  } else {
    std::cout << "output total degree (constants as fresh variables): "
              << report.output_total_degree << "\n";
    for (std::uint32_t v = 0; v < c.n_vars; ++v)
      std::cout << "degree in x" << v << ": " << report.per_variable_output_degree[v] << "\n";
  }
  return 0;
}

int cmd_check_ml(const std::string& path, const std::string& mode, std::uint32_t trials,
                 std::uint64_t range, std::uint64_t seed) {
  auto c = load_circuit(path);
  auto syn = check_syntactic_multilinearity(c);
  if (syn.multilinear)
    std::cout << "syntactic: multilinear\n";
  else
    std::cout << "syntactic: not multilinear (product node " << *syn.violating_product << ")\n";
  if (mode == "syntactic") return syn.multilinear ? 0 : 1;

  SemanticOptions opts;
  opts.exhaustive_limit = g_opts.exhaustive_limit();
  opts.monomial_cap = g_opts.monomial_cap();
  opts.trials = trials;
  opts.coord_range = range;
  opts.seed = seed;
  opts.mode = (mode == "randomized") ? SemanticOptions::Mode::randomized
                                     : SemanticOptions::Mode::exhaustive;
  auto verdict = check_semantic_multilinearity(c, opts);
  switch (verdict.kind) {
    case SemanticVerdict::Kind::multilinear:
      std::cout << "semantic: multilinear\n";
      return 0;
    case SemanticVerdict::Kind::not_multilinear:
      std::cout << "semantic: not multilinear (witness variable " << *verdict.witness_var
                << ")\n";
      return 1;
    case SemanticVerdict::Kind::probably_multilinear:
      std::cout << "semantic: probably multilinear (failure bound "
                << verdict.failure_bound->str() << ")\n";
      return 0;
  }
  return 0;
}

int cmd_eval(const std::string& path, const std::string& point_text, bool integer_route,
             bool show_trace) {
  auto c = load_circuit(path);
  auto point = parse_point(point_text, c.n_vars);
  if (!integer_route) {
    print_value(eval_direct(c, point));
    return 0;
  }
  auto bound = formal_degree(c).output_total_degree;
  std::vector<ReductionSample> audit;
  auto value = eval_via_integer_reduction(c, point, bound, &audit);
  print_value(value);
  if (show_trace) {
    std::uint64_t max_bits = 0;
    for (const auto& s : audit) max_bits = std::max(max_bits, s.max_bitwidth_seen);
    std::cout << "samples: " << audit.size() << "\n";
    std::cout << "max_bitwidth: " << max_bits << "\n";
    std::cout << "degree_bound: " << bound << "\n";
  }
  return 0;
}

int cmd_vmar(const std::string& path, const std::string& point_text) {
  auto c = load_circuit(path);
  auto cert = certificate_for(c);
  print_value(vmar(c, cert, parse_point(point_text, c.n_vars)));
  return 0;
}

int cmd_mar(const std::string& path, const std::string& evidence) {
  auto c = load_circuit(path);
  auto cert = certificate_for(c);
  print_value(mar(c, cert, evidence_for(c, evidence)));
  return 0;
}

int cmd_hmar(const std::string& path, const std::string& evidence, std::uint32_t k) {
  auto c = load_circuit(path);
  auto cert = certificate_for(c);
  print_value(hmar(c, cert, evidence_for(c, evidence), k));
  return 0;
}

int cmd_profile(const std::string& path, const std::string& evidence) {
  auto c = load_circuit(path);
  auto cert = certificate_for(c);
  auto profile = hmar_profile(c, cert, evidence_for(c, evidence));
  for (std::size_t k = 0; k < profile.coefficients.size(); ++k) {
    if (g_opts.porcelain)
      std::cout << "profile." << k << ": " << render(profile.coefficients[k]) << "\n";
    else
      std::cout << "k=" << k << ": " << render(profile.coefficients[k]) << "\n";
  }
  return 0;
}

int cmd_ve(const std::string& path, const std::string& evidence, const std::string& weights,
           bool posterior) {
  auto c = load_circuit(path);
  auto cert = certificate_for(c);
  auto w = VirtualEvidence::parse(weights);
  if (w.pairs.size() != c.n_vars)
    throw UsageError("virtual evidence lists " + std::to_string(w.pairs.size()) +
                     " pairs, circuit has " + std::to_string(c.n_vars) + " variables");
  auto m = evidence_for(c, evidence);
  std::cout << "weights: " << w.str() << "\n";
  print_value(posterior ? ve_posterior(c, cert, w, m) : ve_marginal(c, cert, w, m));
  return 0;
}

int cmd_network(const std::string& path, const std::string& at, const std::string& bar) {
  auto c = load_circuit(path);
  if (at.empty() && bar.empty()) {
    std::cout << serialize_circuit(network_circuit(c));
    return 0;
  }
  if (at.empty() || bar.empty()) throw UsageError("--at and --bar must be given together");
  certificate_for(c);  // the identity route needs multilinearity like every query tier
  print_value(network_eval(c, parse_point(at, c.n_vars), parse_point(bar, c.n_vars)));
  return 0;
}

int cmd_expand(const std::string& path) {
  auto c = load_circuit(path);
  auto poly = expand_sparse(c, g_opts.monomial_cap());
  if (poly.is_multilinear() && c.n_vars <= 64) {
    auto ml = to_multilinear(poly);
    for (const auto& [mask, coeff] : ml.terms)
      std::cout << (g_opts.porcelain ? "term." : "") << monomial_name(mask, ml.n) << ": "
                << render(coeff) << "\n";
    return 0;
  }
  for (const auto& [exps, coeff] : poly.terms) {
    std::string name;
    for (std::uint32_t v = 0; v < poly.n; ++v) {
      if (!exps[v]) continue;
      if (!name.empty()) name += "*";
      name += "x" + std::to_string(v);
      if (exps[v] > 1) name += "^" + std::to_string(exps[v]);
    }
    if (name.empty()) name = "1";
    std::cout << (g_opts.porcelain ? "term." : "") << name << ": " << render(coeff) << "\n";
  }
  return 0;
}

int cmd_interpolate_table(const std::string& path, bool network) {
  std::istringstream in(read_file(path));
  auto result = parse_table(in);
  for (const auto& w : result.warnings) std::cerr << "warning: " << path << ": " << w << "\n";
  if (network) {
    auto np = network_from_table(result.table);
    for (const auto& [mask, coeff] : np.terms)
      std::cout << (g_opts.porcelain ? "term." : "") << network_monomial_name(mask, np.n) << ": "
                << render(coeff) << "\n";
    return 0;
  }
  auto p = coefficients_from_table(result.table);
  for (const auto& [mask, coeff] : p.terms)
    std::cout << (g_opts.porcelain ? "term." : "") << monomial_name(mask, p.n) << ": "
              << render(coeff) << "\n";
  return 0;
}

int cmd_faff(std::uint32_t n, const std::string& evidence) {
  FaffLayout layout(n);
  auto m = EvidenceString::parse(evidence);
  if (m.size() != layout.total_vars())
    throw UsageError("f_aff with n=" + std::to_string(n) + " has " +
                     std::to_string(layout.total_vars()) + " variables, evidence has " +
                     std::to_string(m.size()));
  std::cout << faff_mar(n, m).get_str() << "\n";
  return 0;
}

int cmd_reduce(const std::string& path, std::uint32_t k) {
  std::istringstream in(read_file(path));
  auto phi = parse_xorcsp(in);
  auto red = reduce_kones_to_hmar(phi, k);
  std::cout << "evidence: " << red.m.str() << "\n";
  std::cout << "weight: " << red.target_weight << "\n";
  return 0;
}

int cmd_count_affine(const std::string& path, const std::string& evidence, bool histogram) {
  std::istringstream in(read_file(path));
  auto phi = parse_xorcsp(in);
  auto s = system_from_xorcsp(phi);
  auto m = evidence.empty() ? EvidenceString::all_stars(s.n_vars)
                            : EvidenceString::parse(evidence);
  if (m.size() != s.n_vars)
    throw UsageError("evidence length " + std::to_string(m.size()) + " does not match n=" +
                     std::to_string(s.n_vars));
  if (histogram) {
    auto buckets = weight_histogram(s, m, g_opts.dim_limit());
    for (std::size_t k = 0; k < buckets.size(); ++k) {
      if (g_opts.porcelain)
        std::cout << "weight." << k << ": " << buckets[k].get_str() << "\n";
      else
        std::cout << "k=" << k << ": " << buckets[k].get_str() << "\n";
    }
    return 0;
  }
  for (std::uint32_t i = 0; i < m.size(); ++i)
    if (m.entries[i] != Mark::star) s.add_unit(i, m.entries[i] == Mark::one);
  std::cout << count_solutions(s).get_str() << "\n";
  return 0;
}

// Built-in self-check battery. With a circuit argument it checks the
// query tiers against truth-table brute force for that circuit; with an
// NNF argument it checks the imported model count against enumeration;
// with no argument it runs a randomized battery.
int cmd_oracle(const std::string& path, std::uint32_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& counts) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << counts << ")\n";
    if (!ok) ++failures;
  };
  auto rnd_evidence = [&](std::uint32_t n) {
    EvidenceString m;
    m.entries.resize(n);
    for (auto& e : m.entries) {
      switch (rng() % 3) {
        case 0: e = Mark::zero; break;
        case 1: e = Mark::one; break;
        default: e = Mark::star; break;
      }
    }
    return m;
  };

  if (!path.empty()) {
    std::string text = read_file(path);
    if (looks_like_nnf(text)) {
      std::istringstream in(text);
      auto nnf = parse_nnf(in);
      if (nnf.n_vars > g_opts.table_limit())
        throw CapacityError("enumeration limited to " + std::to_string(g_opts.table_limit()) +
                            " variables");
      auto c = circuit_from_nnf(nnf);
      auto cert = certificate_for(c);
      auto count = nnf_model_count_enum(nnf, g_opts.table_limit());
      bool ok = mar(c, cert, EvidenceString::all_stars(c.n_vars)) == Rational(BigInt(count));
      report("model-count-vs-enumeration", ok, "models=" + std::to_string(count));
      report("syntactic-multilinearity", check_syntactic_multilinearity(c).multilinear,
             "1 check");
      return failures ? 1 : 0;
    }
    auto c = load_circuit(path);
    auto cert = certificate_for(c);
    auto t = table_from_circuit(c, g_opts.table_limit());
    std::size_t checked = 0;
    bool ok = true;
    for (std::uint32_t trial = 0; trial < trials; ++trial) {
      auto m = rnd_evidence(c.n_vars);
      ok = ok && mar(c, cert, m) == brute_mar(t, m);
      for (std::uint32_t kk = 0; kk <= c.n_vars; ++kk)
        ok = ok && hmar(c, cert, m, kk) == brute_hmar(t, m, kk);
      checked += c.n_vars + 2;
    }
    report("queries-vs-truth-table", ok, std::to_string(checked) + " queries");
    return failures ? 1 : 0;
  }

  // Randomized battery over generated circuits: sums of products over
  // disjoint variable pairs plus a constant, syntactically multilinear
  // by construction.
  std::size_t mar_checks = 0, eval_checks = 0;
  bool mar_ok = true, eval_ok = true;
  for (std::uint32_t trial = 0; trial < trials; ++trial) {
    const std::uint32_t n = 1 + rng() % 8;
    Circuit c;
    c.n_vars = n;
    for (std::uint32_t i = 0; i < n; ++i) c.nodes.push_back(Node::make_var(i));
    std::vector<SumEdge> edges;
    for (std::uint32_t g = 0; g + 1 < n; g += 2) {
      c.nodes.push_back(Node::make_prod({g, g + 1}));
      edges.push_back(SumEdge{Rational(static_cast<long>(1 + rng() % 5),
                                       static_cast<long>(1 + rng() % 5)),
                              static_cast<std::uint32_t>(c.nodes.size() - 1)});
    }
    c.nodes.push_back(Node::make_const(
        Rational(static_cast<long>(1 + rng() % 7), static_cast<long>(1 + rng() % 7))));
    edges.push_back(SumEdge{Rational(1), static_cast<std::uint32_t>(c.nodes.size() - 1)});
    c.nodes.push_back(Node::make_sum(std::move(edges)));
    c.output = static_cast<std::uint32_t>(c.nodes.size() - 1);

    auto cert = certify(c);
    auto t = table_from_circuit(c);
    auto m = rnd_evidence(n);
    mar_ok = mar_ok && mar(c, cert, m) == brute_mar(t, m);
    for (std::uint32_t kk = 0; kk <= n; ++kk)
      mar_ok = mar_ok && hmar(c, cert, m, kk) == brute_hmar(t, m, kk);
    mar_checks += n + 2;

    std::vector<Rational> point(n);
    for (auto& x : point)
      x = Rational(static_cast<long>(rng() % 19) - 9, static_cast<long>(1 + rng() % 9));
    auto bound = formal_degree(c).output_total_degree;
    eval_ok = eval_ok && eval_via_integer_reduction(c, point, bound) == eval_direct(c, point);
    ++eval_checks;
  }
  report("marginals-vs-brute-force", mar_ok, std::to_string(mar_checks) + " queries");
  report("integer-reduction-vs-direct", eval_ok, std::to_string(eval_checks) + " points");
  return failures ? 1 : 0;
}

int run_app(int argc, char** argv) {
  CLI::App app{"exact marginalization queries over arithmetic circuits"};
  app.require_subcommand(1);
  app.fallthrough(false);

  app.add_flag("--porcelain", g_opts.porcelain, "machine-parseable key: value output");
  app.add_flag("--decimal", g_opts.decimal, "render rationals as decimals (display only)");
  app.add_option("--decimal-digits", g_opts.decimal_digits, "digits for --decimal")
      ->capture_default_str();
  app.add_flag("--trust", g_opts.trust_flag,
               "skip multilinearity certification (results are only meaningful for "
               "multilinear circuits)");
  app.add_option("--limit-n", g_opts.limit_n,
                 "max variables for exhaustive/table operations (default 20, semantic checks 14)");
  app.add_option("--limit-dim", g_opts.limit_dim,
                 "max solution-space dimension to enumerate (default 24)");
  app.add_option("--limit-monomials", g_opts.limit_monomials,
                 "expansion monomial cap (default 262144)");

  std::string path, evidence, weights, point, at, bar, mode = "exhaustive";
  std::uint32_t k = 0, n = 2, trials = 5;
  std::uint64_t range = 1ull << 20, seed = 1;
  bool integer_route = false, show_trace = false, posterior = false, network_terms = false,
       histogram = false;

  auto* validate_cmd = app.add_subcommand("validate", "structural invariant report");
  validate_cmd->add_option("circuit", path)->required();

  auto* degree_cmd = app.add_subcommand("degree", "formal degree bounds");
  degree_cmd->add_option("circuit", path)->required();

  auto* checkml_cmd = app.add_subcommand("check-ml", "multilinearity checks");
  checkml_cmd->add_option("circuit", path)->required();
  checkml_cmd->add_option("--mode", mode, "syntactic | exhaustive | randomized")
      ->check(CLI::IsMember({"syntactic", "exhaustive", "randomized"}))
      ->capture_default_str();
  checkml_cmd->add_option("--trials", trials)->capture_default_str();
  checkml_cmd->add_option("--range", range)->capture_default_str();
  checkml_cmd->add_option("--seed", seed)->capture_default_str();

  auto* eval_cmd = app.add_subcommand("eval", "evaluate at a rational point");
  eval_cmd->add_option("circuit", path)->required();
  eval_cmd->add_option("--point", point, "comma-separated rationals")->required();
  eval_cmd->add_flag("--integer-route", integer_route,
                     "evaluate through the integer-point reduction");
  eval_cmd->add_flag("--trace", show_trace, "print bitwidth statistics (--integer-route)");

  auto* vmar_cmd =
      app.add_subcommand("vmar", "evaluate the multilinear representation at a rational point");
  vmar_cmd->add_option("circuit", path)->required();
  vmar_cmd->add_option("--point", point)->required();

  auto* mar_cmd = app.add_subcommand("mar", "marginalize over starred coordinates");
  mar_cmd->add_option("circuit", path)->required();
  mar_cmd->add_option("--evidence", evidence, "word over {0,1,*}")->required();

  auto* hmar_cmd = app.add_subcommand("hmar", "Hamming-weight marginalization");
  hmar_cmd->add_option("circuit", path)->required();
  hmar_cmd->add_option("--evidence", evidence)->required();
  hmar_cmd->add_option("-k,--weight", k, "target Hamming weight")->required();

  auto* profile_cmd = app.add_subcommand("profile", "all Hamming-weight marginals at once");
  profile_cmd->add_option("circuit", path)->required();
  profile_cmd->add_option("--evidence", evidence)->required();

  auto* ve_cmd = app.add_subcommand("ve", "virtual-evidence marginal or posterior");
  ve_cmd->add_option("circuit", path)->required();
  ve_cmd->add_option("--evidence", evidence)->required();
  ve_cmd->add_option("--weights", weights, "comma-separated alpha:alphabar pairs")->required();
  ve_cmd->add_flag("--posterior", posterior, "normalize by the all-stars mass");

  auto* network_cmd = app.add_subcommand(
      "network", "network-polynomial circuit (default) or evaluation with --at/--bar");
  network_cmd->add_option("circuit", path)->required();
  network_cmd->add_option("--at", at, "x values");
  network_cmd->add_option("--bar", bar, "xbar values");

  auto* expand_cmd = app.add_subcommand("expand", "exact sparse expansion of the polynomial");
  expand_cmd->add_option("circuit", path)->required();

  auto* itable_cmd =
      app.add_subcommand("interpolate-table", "multilinear coefficients of a truth table");
  itable_cmd->add_option("table", path)->required();
  itable_cmd->add_flag("--network", network_terms, "print the network polynomial instead");

  auto* faff_cmd = app.add_subcommand("faff", "marginalize the affine family instance");
  faff_cmd->add_option("-n", n, "block parameter")->required();
  faff_cmd->add_option("--evidence", evidence, "word over {0,1,*} of length 2n^3+n")->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "encode a #k-ONES query as f_aff evidence");
  reduce_cmd->add_option("xorcsp", path)->required();
  reduce_cmd->add_option("-k,--weight", k)->required();

  auto* count_cmd = app.add_subcommand("count-affine", "count XOR-CSP solutions");
  count_cmd->add_option("xorcsp", path)->required();
  count_cmd->add_option("--evidence", evidence, "optional partial assignment");
  count_cmd->add_flag("--histogram", histogram,
                      "bucket the solutions by Hamming weight (enumerates the solution space)");

  auto* oracle_cmd = app.add_subcommand("oracle", "self-check against brute-force oracles");
  oracle_cmd->add_option("file", path, "optional .circ or .nnf to check");
  oracle_cmd->add_option("--trials", trials)->capture_default_str();
  oracle_cmd->add_option("--seed", seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  apply_capacity_profile();

  if (*validate_cmd) return cmd_validate(path);
  if (*degree_cmd) return cmd_degree(path);
  if (*checkml_cmd) return cmd_check_ml(path, mode, trials, range, seed);
  if (*eval_cmd) return cmd_eval(path, point, integer_route, show_trace);
  if (*vmar_cmd) return cmd_vmar(path, point);
  if (*mar_cmd) return cmd_mar(path, evidence);
  if (*hmar_cmd) return cmd_hmar(path, evidence, k);
  if (*profile_cmd) return cmd_profile(path, evidence);
  if (*ve_cmd) return cmd_ve(path, evidence, weights, posterior);
  if (*network_cmd) return cmd_network(path, at, bar);
  if (*expand_cmd) return cmd_expand(path);
  if (*itable_cmd) return cmd_interpolate_table(path, network_terms);
  if (*faff_cmd) return cmd_faff(n, evidence);
  if (*reduce_cmd) return cmd_reduce(path, k);
  if (*count_cmd) return cmd_count_affine(path, evidence, histogram);
  if (*oracle_cmd) return cmd_oracle(path, trials, seed);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
