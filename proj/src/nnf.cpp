#include "marq/nnf.hpp"

#include <istream>
#include <sstream>

#include "marq/analysis.hpp"

namespace marq {

NnfFile parse_nnf(std::istream& in) {
  NnfFile nnf;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::size_t declared_nodes = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string body = line.substr(0, line.find_first_of("#"));
    if (!body.empty() && body[0] == 'c') continue;  // comment lines, c2d style
    std::istringstream ss(body);
    std::string first;
    if (!(ss >> first)) continue;

    if (!saw_header) {
      if (first != "nnf") throw ParseError("expected header 'nnf <v> <e> <n>'", line_no);
      long long v = -1, e = -1, n = -1;
      if (!(ss >> v >> e >> n) || v < 1 || e < 0 || n < 0 || n > 1000000)
        throw ParseError("malformed nnf header", line_no);
      declared_nodes = static_cast<std::size_t>(v);
      nnf.n_vars = static_cast<std::uint32_t>(n);
      nnf.nodes.reserve(declared_nodes);
      saw_header = true;
      continue;
    }

    NnfFile::NnfNode node;
    const std::uint32_t id = static_cast<std::uint32_t>(nnf.nodes.size());
    auto read_children = [&](long long count) {
      for (long long i = 0; i < count; ++i) {
        long long ch = -1;
        if (!(ss >> ch) || ch < 0 || ch >= id)
          throw ParseError("node " + std::to_string(id) + " has a bad child reference", line_no);
        node.children.push_back(static_cast<std::uint32_t>(ch));
      }
      std::string extra;
      if (ss >> extra) throw ParseError("trailing content '" + extra + "'", line_no);
    };

    if (first == "L") {
      long long lit = 0;
      if (!(ss >> lit) || lit == 0 ||
          static_cast<std::uint64_t>(lit < 0 ? -lit : lit) > nnf.n_vars)
        throw ParseError("bad literal", line_no);
      std::string extra;
      if (ss >> extra) throw ParseError("trailing content '" + extra + "'", line_no);
      node.kind = NnfFile::NnfNode::Kind::literal;
      node.literal = lit;
    } else if (first == "A") {
      long long count = -1;
      if (!(ss >> count) || count < 0) throw ParseError("bad AND arity", line_no);
      node.kind = NnfFile::NnfNode::Kind::and_node;
      read_children(count);
    } else if (first == "O") {
      long long opp = -1, count = -1;
      if (!(ss >> opp) || opp < 0 || static_cast<std::uint64_t>(opp) > nnf.n_vars)
        throw ParseError("bad OR opposition variable", line_no);
      if (!(ss >> count) || count < 0) throw ParseError("bad OR arity", line_no);
      node.kind = NnfFile::NnfNode::Kind::or_node;
      read_children(count);
    } else {
      throw ParseError("unknown NNF line '" + first + "'", line_no);
    }
    nnf.nodes.push_back(std::move(node));
    if (nnf.nodes.size() > declared_nodes)
      throw ParseError("more nodes than the header declared", line_no);
  }

  if (!saw_header) throw ParseError("empty input: missing nnf header");
  if (nnf.nodes.size() != declared_nodes)
    throw ParseError("header declared " + std::to_string(declared_nodes) + " nodes, found " +
                     std::to_string(nnf.nodes.size()));
  nnf.root = static_cast<std::uint32_t>(nnf.nodes.size() - 1);
  return nnf;
}

NnfFile parse_nnf_text(const std::string& text) {
  std::istringstream ss(text);
  return parse_nnf(ss);
}

Circuit circuit_from_nnf(const NnfFile& nnf) {
  const std::uint32_t n = nnf.n_vars;
  const std::size_t words = (n + 63) / 64;

  Circuit c;
  c.n_vars = n;
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> var_node(n, kUnset), neg_node(n, kUnset);
  std::uint32_t const_one = kUnset, const_zero = kUnset;
  auto add = [&](Node node) {
    c.nodes.push_back(std::move(node));
    return static_cast<std::uint32_t>(c.nodes.size() - 1);
  };
  auto var_of = [&](std::uint32_t v) {
    if (var_node[v] == kUnset) var_node[v] = add(Node::make_var(v));
    return var_node[v];
  };
  auto one_of = [&]() {
    if (const_one == kUnset) const_one = add(Node::make_const(Rational(1)));
    return const_one;
  };
  auto neg_of = [&](std::uint32_t v) {
    if (neg_node[v] == kUnset) {
      std::uint32_t one = one_of();
      std::uint32_t var = var_of(v);
      neg_node[v] = add(Node::make_sum({SumEdge{Rational(1), one}, SumEdge{Rational(-1), var}}));
    }
    return neg_node[v];
  };

  std::vector<VarSet> vars(nnf.nodes.size(), VarSet(words, 0));
  std::vector<std::uint32_t> mapped(nnf.nodes.size(), kUnset);

  for (std::uint32_t id = 0; id < nnf.nodes.size(); ++id) {
    const auto& node = nnf.nodes[id];
    switch (node.kind) {
      case NnfFile::NnfNode::Kind::literal: {
        const std::uint32_t v = static_cast<std::uint32_t>(
                                    node.literal < 0 ? -node.literal : node.literal) - 1;
        vars[id][v / 64] |= std::uint64_t(1) << (v % 64);
        mapped[id] = node.literal > 0 ? var_of(v) : neg_of(v);
        break;
      }
      case NnfFile::NnfNode::Kind::and_node: {
        if (node.children.empty()) {  // A 0 is the true sentinel
          mapped[id] = one_of();
          break;
        }
        VarSet& seen = vars[id];
        for (auto ch : node.children) {
          if (varset_intersects(seen, vars[ch]))
            throw Error("AND gate " + std::to_string(id) +
                        " is not decomposable: children share variables");
          for (std::size_t w = 0; w < words; ++w) seen[w] |= vars[ch][w];
        }
        std::vector<std::uint32_t> children;
        children.reserve(node.children.size());
        for (auto ch : node.children) children.push_back(mapped[ch]);
        mapped[id] = add(Node::make_prod(std::move(children)));
        break;
      }
      case NnfFile::NnfNode::Kind::or_node: {
        if (node.children.empty()) {  // O j 0 is the false sentinel
          if (const_zero == kUnset) const_zero = add(Node::make_const(Rational(0)));
          mapped[id] = const_zero;
          break;
        }
        VarSet& seen = vars[id];
        std::vector<SumEdge> edges;
        edges.reserve(node.children.size());
        for (auto ch : node.children) {
          for (std::size_t w = 0; w < words; ++w) seen[w] |= vars[ch][w];
          edges.push_back(SumEdge{Rational(1), mapped[ch]});
        }
        mapped[id] = add(Node::make_sum(std::move(edges)));
        break;
      }
    }
  }

  c.output = mapped[nnf.root];
  // NNF files may carry nodes that are not under the root; keep the
  // translated circuit pruned like the parser would.
  prune_unreachable(c);
  return c;
}

Circuit import_dnnf(std::istream& in) { return circuit_from_nnf(parse_nnf(in)); }

bool nnf_eval(const NnfFile& nnf, std::uint64_t assignment) {
  std::vector<bool> value(nnf.nodes.size(), false);
  for (std::size_t id = 0; id < nnf.nodes.size(); ++id) {
    const auto& node = nnf.nodes[id];
    switch (node.kind) {
      case NnfFile::NnfNode::Kind::literal: {
        const std::uint32_t v = static_cast<std::uint32_t>(
                                    node.literal < 0 ? -node.literal : node.literal) - 1;
        const bool bit = (assignment >> v) & 1;
        value[id] = node.literal > 0 ? bit : !bit;
        break;
      }
      case NnfFile::NnfNode::Kind::and_node: {
        bool acc = true;
        for (auto ch : node.children) acc = acc && value[ch];
        value[id] = acc;
        break;
      }
      case NnfFile::NnfNode::Kind::or_node: {
        bool acc = false;
        for (auto ch : node.children) acc = acc || value[ch];
        value[id] = acc;
        break;
      }
    }
  }
  return value[nnf.root];
}

std::uint64_t nnf_model_count_enum(const NnfFile& nnf, std::uint32_t n_limit) {
  if (nnf.n_vars > n_limit)
    throw CapacityError("enumeration model count limited to " + std::to_string(n_limit) +
                        " variables");
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t(1) << nnf.n_vars;
  for (std::uint64_t x = 0; x < total; ++x)
    if (nnf_eval(nnf, x)) ++count;
  return count;
}

}  // namespace marq
