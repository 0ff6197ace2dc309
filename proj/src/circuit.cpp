#include "marq/circuit.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace marq {

Node Node::make_var(std::uint32_t i) {
  Node n;
  n.kind = NodeKind::var;
  n.var = i;
  return n;
}

Node Node::make_const(Rational c) {
  Node n;
  n.kind = NodeKind::constant;
  n.value = std::move(c);
  return n;
}

Node Node::make_sum(std::vector<SumEdge> edges) {
  Node n;
  n.kind = NodeKind::sum;
  n.sum = std::move(edges);
  return n;
}

Node Node::make_prod(std::vector<std::uint32_t> children) {
  Node n;
  n.kind = NodeKind::prod;
  n.prod = std::move(children);
  return n;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

std::uint32_t parse_index(const std::string& tok, const char* what, std::size_t line_no) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) {
        return c >= '0' && c <= '9';
      }))
    throw ParseError(std::string("malformed ") + what + " '" + tok + "'", line_no);
  unsigned long long v = 0;
  try {
    v = std::stoull(tok);
  } catch (const std::exception&) {
    throw ParseError(std::string("malformed ") + what + " '" + tok + "'", line_no);
  }
  if (v > 0xFFFFFFFFull)
    throw ParseError(std::string(what) + " out of range: " + tok, line_no);
  return static_cast<std::uint32_t>(v);
}

}  // namespace

void prune_unreachable(Circuit& c, std::vector<std::string>* warnings) {
  if (c.nodes.empty() || c.output >= c.nodes.size())
    throw Error("cannot prune: output node is out of range");
  std::vector<bool> live(c.nodes.size(), false);
  std::vector<std::uint32_t> stack{c.output};
  live[c.output] = true;
  while (!stack.empty()) {
    std::uint32_t id = stack.back();
    stack.pop_back();
    const Node& n = c.nodes[id];
    if (n.kind == NodeKind::sum) {
      for (const auto& e : n.sum)
        if (!live[e.child]) { live[e.child] = true; stack.push_back(e.child); }
    } else if (n.kind == NodeKind::prod) {
      for (auto ch : n.prod)
        if (!live[ch]) { live[ch] = true; stack.push_back(ch); }
    }
  }
  std::size_t n_live = static_cast<std::size_t>(std::count(live.begin(), live.end(), true));
  if (n_live == c.nodes.size()) return;

  std::vector<std::uint32_t> remap(c.nodes.size(), 0);
  std::vector<Node> kept;
  kept.reserve(n_live);
  for (std::uint32_t id = 0; id < c.nodes.size(); ++id) {
    if (!live[id]) continue;
    remap[id] = static_cast<std::uint32_t>(kept.size());
    kept.push_back(std::move(c.nodes[id]));
  }
  for (Node& n : kept) {
    if (n.kind == NodeKind::sum)
      for (auto& e : n.sum) e.child = remap[e.child];
    else if (n.kind == NodeKind::prod)
      for (auto& ch : n.prod) ch = remap[ch];
  }
  if (warnings)
    warnings->push_back("pruned " + std::to_string(c.nodes.size() - n_live) +
                        " node(s) unreachable from the output");
  c.nodes = std::move(kept);
  c.output = remap[c.output];
}

ParseResult parse_circuit(std::istream& in) {
  ParseResult result;
  Circuit& c = result.circuit;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false, saw_output = false;

  while (std::getline(in, line)) {
    ++line_no;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (saw_output)
      throw ParseError("content after output line", line_no);

    if (!saw_header) {
      if (toks[0] != "circuit" || toks.size() != 2)
        throw ParseError("expected 'circuit <n_vars>' header", line_no);
      c.n_vars = parse_index(toks[1], "variable count", line_no);
      saw_header = true;
      continue;
    }

    if (toks[0] == "output") {
      if (toks.size() != 2) throw ParseError("expected 'output <id>'", line_no);
      std::uint32_t id = parse_index(toks[1], "output id", line_no);
      if (id >= c.nodes.size())
        throw ParseError("output references undefined node " + std::to_string(id), line_no);
      c.output = id;
      saw_output = true;
      continue;
    }

    if (toks[0] != "node" || toks.size() < 4)
      throw ParseError("expected 'node <id> <kind> ...'", line_no);
    std::uint32_t id = parse_index(toks[1], "node id", line_no);
    if (id < c.nodes.size())
      throw ParseError("duplicate node id " + std::to_string(id), line_no);
    if (id > c.nodes.size())
      throw ParseError("node ids must be dense: expected " +
                           std::to_string(c.nodes.size()) + ", got " + std::to_string(id),
                       line_no);

    auto check_child = [&](std::uint32_t ch) {
      if (ch >= id)
        throw ParseError("node " + std::to_string(id) + " references undefined node " +
                             std::to_string(ch) + " (forward reference or missing)",
                         line_no);
    };

    const std::string& kind = toks[2];
    if (kind == "var") {
      if (toks.size() != 4) throw ParseError("expected 'node <id> var <i>'", line_no);
      std::uint32_t v = parse_index(toks[3], "variable index", line_no);
      if (v >= c.n_vars)
        throw ParseError("variable index " + std::to_string(v) + " out of range (n_vars=" +
                             std::to_string(c.n_vars) + ")",
                         line_no);
      c.nodes.push_back(Node::make_var(v));
    } else if (kind == "const") {
      if (toks.size() != 4) throw ParseError("expected 'node <id> const <a>[/<b>]'", line_no);
      auto r = Rational::parse(toks[3]);
      if (!r) throw ParseError("malformed rational '" + toks[3] + "'", line_no);
      c.nodes.push_back(Node::make_const(*r));
    } else if (kind == "sum") {
      std::vector<SumEdge> edges;
      for (std::size_t i = 3; i < toks.size(); ++i) {
        const std::string& tok = toks[i];
        auto colon = tok.rfind(':');
        Rational w(1);
        std::string child_tok = tok;
        if (colon != std::string::npos) {
          auto wr = Rational::parse(tok.substr(0, colon));
          if (!wr) throw ParseError("malformed edge weight in '" + tok + "'", line_no);
          if (wr->is_zero())
            throw ParseError("zero sum-edge weight in '" + tok + "'", line_no);
          w = *wr;
          child_tok = tok.substr(colon + 1);
        }
        std::uint32_t ch = parse_index(child_tok, "child id", line_no);
        check_child(ch);
        edges.push_back(SumEdge{std::move(w), ch});
      }
      if (edges.empty()) throw ParseError("sum node with no children", line_no);
      c.nodes.push_back(Node::make_sum(std::move(edges)));
    } else if (kind == "prod") {
      std::vector<std::uint32_t> children;
      for (std::size_t i = 3; i < toks.size(); ++i) {
        std::uint32_t ch = parse_index(toks[i], "child id", line_no);
        check_child(ch);
        children.push_back(ch);
      }
      if (children.empty()) throw ParseError("prod node with no children", line_no);
      c.nodes.push_back(Node::make_prod(std::move(children)));
    } else {
      throw ParseError("unknown node kind '" + kind + "'", line_no);
    }
  }

  if (!saw_header) throw ParseError("empty input: missing 'circuit' header");
  if (c.nodes.empty()) throw ParseError("circuit has no nodes");
  if (!saw_output) throw ParseError("missing output line");

  prune_unreachable(c, &result.warnings);
  return result;
}

ParseResult parse_circuit(const std::string& text) {
  std::istringstream ss(text);
  return parse_circuit(ss);
}

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "circuit " << c.n_vars << "\n";
  for (std::size_t id = 0; id < c.nodes.size(); ++id) {
    const Node& n = c.nodes[id];
    out << "node " << id << " ";
    switch (n.kind) {
      case NodeKind::var:
        out << "var " << n.var;
        break;
      case NodeKind::constant:
        out << "const " << n.value.str();
        break;
      case NodeKind::sum:
        out << "sum";
        for (const auto& e : n.sum) {
          out << " ";
          if (!e.weight.is_one()) out << e.weight.str() << ":";
          out << e.child;
        }
        break;
      case NodeKind::prod:
        out << "prod";
        for (auto ch : n.prod) out << " " << ch;
        break;
    }
    out << "\n";
  }
  out << "output " << c.output << "\n";
  return out.str();
}

ValidationReport validate(const Circuit& c) {
  ValidationReport report;
  auto add = [&](const std::string& check, bool ok, const std::string& detail = "") {
    report.findings.push_back(ValidationFinding{check, ok, detail});
  };

  bool topo_ok = true, arity_ok = true, weight_ok = true, var_ok = true;
  std::string topo_detail, arity_detail, weight_detail, var_detail;
  std::vector<bool> has_parent(c.nodes.size(), false);

  for (std::uint32_t id = 0; id < c.nodes.size(); ++id) {
    const Node& n = c.nodes[id];
    auto check_child = [&](std::uint32_t ch) {
      if (ch >= id && topo_ok) {
        topo_ok = false;
        topo_detail = "node " + std::to_string(id) + " references node " + std::to_string(ch);
      }
      if (ch < c.nodes.size()) has_parent[ch] = true;
    };
    switch (n.kind) {
      case NodeKind::var:
        if (n.var >= c.n_vars && var_ok) {
          var_ok = false;
          var_detail = "node " + std::to_string(id) + " reads variable " + std::to_string(n.var);
        }
        break;
      case NodeKind::constant:
        break;
      case NodeKind::sum:
        if (n.sum.empty() && arity_ok) {
          arity_ok = false;
          arity_detail = "sum node " + std::to_string(id) + " has no children";
        }
        for (const auto& e : n.sum) {
          check_child(e.child);
          if (e.weight.is_zero() && weight_ok) {
            weight_ok = false;
            weight_detail = "sum node " + std::to_string(id) + " has a zero-weight edge";
          }
        }
        break;
      case NodeKind::prod:
        if (n.prod.empty() && arity_ok) {
          arity_ok = false;
          arity_detail = "prod node " + std::to_string(id) + " has no children";
        }
        for (auto ch : n.prod) check_child(ch);
        break;
    }
  }

  add("topological-numbering", topo_ok, topo_detail);
  add("arity", arity_ok, arity_detail);
  add("nonzero-sum-weights", weight_ok, weight_detail);
  add("variable-range", var_ok, var_detail);

  bool output_ok = c.output < c.nodes.size();
  add("output-in-range", output_ok,
      output_ok ? "" : "output id " + std::to_string(c.output));

  // Sinks are nodes with no parent; after pruning the output must be
  // the only one.
  std::vector<std::uint32_t> sinks;
  for (std::uint32_t id = 0; id < c.nodes.size(); ++id)
    if (!has_parent[id]) sinks.push_back(id);
  bool single_sink = sinks.size() == 1 && output_ok && sinks[0] == c.output;
  std::string sink_detail;
  if (!single_sink) {
    sink_detail = std::to_string(sinks.size()) + " sink(s):";
    for (auto s : sinks) sink_detail += " " + std::to_string(s);
  }
  add("single-output", single_sink, sink_detail);

  bool reach_ok = true;
  if (output_ok && topo_ok) {
    std::vector<bool> live(c.nodes.size(), false);
    std::vector<std::uint32_t> stack{c.output};
    live[c.output] = true;
    while (!stack.empty()) {
      const Node& n = c.nodes[stack.back()];
      stack.pop_back();
      if (n.kind == NodeKind::sum) {
        for (const auto& e : n.sum)
          if (!live[e.child]) { live[e.child] = true; stack.push_back(e.child); }
      } else if (n.kind == NodeKind::prod) {
        for (auto ch : n.prod)
          if (!live[ch]) { live[ch] = true; stack.push_back(ch); }
      }
    }
    reach_ok = std::all_of(live.begin(), live.end(), [](bool b) { return b; });
  }
  add("reachability", reach_ok, reach_ok ? "" : "unreachable nodes present");

  return report;
}

bool structurally_equal(const Circuit& a, const Circuit& b) {
  if (a.n_vars != b.n_vars || a.output != b.output || a.nodes.size() != b.nodes.size())
    return false;
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    const Node& x = a.nodes[i];
    const Node& y = b.nodes[i];
    if (x.kind != y.kind) return false;
    switch (x.kind) {
      case NodeKind::var:
        if (x.var != y.var) return false;
        break;
      case NodeKind::constant:
        if (x.value != y.value) return false;
        break;
      case NodeKind::sum:
        if (x.sum.size() != y.sum.size()) return false;
        for (std::size_t j = 0; j < x.sum.size(); ++j)
          if (x.sum[j].child != y.sum[j].child || x.sum[j].weight != y.sum[j].weight)
            return false;
        break;
      case NodeKind::prod:
        if (x.prod != y.prod) return false;
        break;
    }
  }
  return true;
}

std::uint64_t circuit_encoding_bits(const Circuit& c) {
  return 8 * static_cast<std::uint64_t>(serialize_circuit(c).size());
}

}  // namespace marq
