#pragma once

// Constituent trees: tokens, non-terminal nodes and functional edges, plus
// the FTB text format.
//
// FTB (UTF-8, LF line endings, TAB-separated fields):
//
//   #BOS <sid> <document>:<sentence_number>:<lang>
//   <form>\t<pos>\t<edge-label>\t<parent>       one line per token, index order
//   #<nid>\t<category>\t<edge-label>\t<parent>  non-terminals, ids >= 500,
//                                               listed in ascending order
//   #EOS <sid>
//
// <parent> is a non-terminal id or 0 for the virtual root. An absent edge
// label is written `--`. Yields may be discontinuous (crossing branches are
// permitted), so a yield is a set of token indices, not an interval.

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "fuse/core.hpp"

namespace fuse {

inline constexpr int kRoot = 0;
inline constexpr int kMinNodeId = 500;
inline constexpr const char* kNoLabel = "--";

struct Token {
  std::size_t index = 0;
  std::string form;
  std::string pos;
};

struct NonTerminal {
  int id = 0;
  std::string category;
};

struct OriginRef {
  std::string document;
  int sentence_number = 0;
  std::string lang;

  std::string str() const {
    return document + ":" + std::to_string(sentence_number) + ":" + lang;
  }
  auto operator<=>(const OriginRef&) const = default;
};

// Reference to a terminal (`t<index>`) or a non-terminal (`n<id>`).
struct NodeRef {
  enum class Kind : std::uint8_t { Token, Node };
  Kind kind = Kind::Token;
  int value = 0;

  static NodeRef token(std::size_t index) {
    return {Kind::Token, static_cast<int>(index)};
  }
  static NodeRef node(int id) { return {Kind::Node, id}; }

  bool is_token() const { return kind == Kind::Token; }
  bool is_node() const { return kind == Kind::Node; }

  std::string str() const {
    return (is_token() ? "t" : "n") + std::to_string(value);
  }

  static std::optional<NodeRef> parse(std::string_view s) {
    if (s.size() < 2 || (s[0] != 't' && s[0] != 'n')) return std::nullopt;
    auto v = detail::parse_int(s.substr(1));
    if (!v) return std::nullopt;
    if (s[0] == 't') return token(static_cast<std::size_t>(*v));
    return node(static_cast<int>(*v));
  }

  auto operator<=>(const NodeRef&) const = default;
};

struct Edge {
  NodeRef child;
  std::string label = kNoLabel;
  int parent = kRoot;
};

class SentenceTree {
public:
  int sid = 0;
  OriginRef origin;
  std::vector<Token> tokens;
  std::vector<NonTerminal> nodes;
  std::vector<Edge> edges;  // exactly one per token and one per node

  // Builds the derived indexes and checks the structural invariants: unique
  // node ids >= 500, one parent per element, no cycles, no empty yields.
  void finalize();

  bool has(NodeRef ref) const {
    if (ref.is_token())
      return ref.value >= 0 &&
             static_cast<std::size_t>(ref.value) < tokens.size();
    return node_index_.count(ref.value) != 0;
  }

  std::size_t node_pos(int id) const {
    auto it = node_index_.find(id);
    if (it == node_index_.end())
      throw UnknownNodeError("unknown node n" + std::to_string(id) +
                             " in sentence " + std::to_string(sid));
    return it->second;
  }

  const Edge& edge_of(NodeRef ref) const {
    if (!has(ref))
      throw UnknownNodeError("unknown node " + ref.str() + " in sentence " +
                             std::to_string(sid));
    if (ref.is_token()) return edges[token_edge_[ref.value]];
    return edges[node_edge_[node_pos(ref.value)]];
  }

  int parent_of(NodeRef ref) const { return edge_of(ref).parent; }
  const std::string& label_of(NodeRef ref) const { return edge_of(ref).label; }

  const std::vector<NodeRef>& children_of(int node_id) const {
    return children_[node_pos(node_id)];
  }

private:
  std::unordered_map<int, std::size_t> node_index_;
  std::vector<std::vector<NodeRef>> children_;  // per node, in edge order
  std::vector<std::size_t> token_edge_;
  std::vector<std::size_t> node_edge_;
};

inline void SentenceTree::finalize() {
  constexpr auto npos = static_cast<std::size_t>(-1);
  const std::string where = " in sentence " + std::to_string(sid);

  if (sid < 1) throw InvariantError("sentence id must be positive");
  if (origin.document.empty() || origin.lang.empty() ||
      origin.sentence_number < 1)
    throw InvariantError("incomplete origin reference" + where);
  if (tokens.empty()) throw InvariantError("no tokens" + where);

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].index != i)
      throw InvariantError("token index out of order" + where);
    if (tokens[i].form.empty())
      throw InvariantError("empty token form" + where);
  }

  node_index_.clear();
  for (std::size_t pos = 0; pos < nodes.size(); ++pos) {
    if (nodes[pos].id < kMinNodeId)
      throw InvariantError("node id " + std::to_string(nodes[pos].id) +
                           " below " + std::to_string(kMinNodeId) + where);
    if (!node_index_.emplace(nodes[pos].id, pos).second)
      throw InvariantError("duplicate node id " +
                           std::to_string(nodes[pos].id) + where);
  }

  token_edge_.assign(tokens.size(), npos);
  node_edge_.assign(nodes.size(), npos);
  children_.assign(nodes.size(), {});

  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const Edge& e = edges[ei];
    if (!has(e.child))
      throw InvariantError("edge for unknown element " + e.child.str() + where);
    std::size_t& slot = e.child.is_token()
                            ? token_edge_[e.child.value]
                            : node_edge_[node_index_.at(e.child.value)];
    if (slot != npos)
      throw InvariantError("multiple parents for " + e.child.str() + where);
    slot = ei;
    if (e.parent != kRoot) {
      if (e.parent < kMinNodeId)
        throw InvariantError("parent id " + std::to_string(e.parent) +
                             " below " + std::to_string(kMinNodeId) + where);
      auto it = node_index_.find(e.parent);
      if (it == node_index_.end())
        throw InvariantError("unknown parent node " +
                             std::to_string(e.parent) + where);
      children_[it->second].push_back(e.child);
    }
    if (e.label.empty()) throw InvariantError("empty edge label" + where);
  }
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (token_edge_[i] == npos)
      throw InvariantError("missing edge for t" + std::to_string(i) + where);
  for (std::size_t pos = 0; pos < nodes.size(); ++pos)
    if (node_edge_[pos] == npos)
      throw InvariantError("missing edge for n" +
                           std::to_string(nodes[pos].id) + where);

  // Acyclicity: the parent chain from any node must reach the root.
  for (const NonTerminal& n : nodes) {
    std::size_t steps = 0;
    int cur = edges[node_edge_[node_index_.at(n.id)]].parent;
    while (cur != kRoot) {
      if (++steps > nodes.size())
        throw InvariantError("cycle involving node n" + std::to_string(n.id) +
                             where);
      cur = edges[node_edge_[node_index_.at(cur)]].parent;
    }
  }

  // No empty yields: every non-terminal must dominate at least one token.
  for (const NonTerminal& n : nodes) {
    bool found = false;
    std::vector<int> stack{n.id};
    while (!stack.empty() && !found) {
      int id = stack.back();
      stack.pop_back();
      for (const NodeRef& c : children_[node_index_.at(id)]) {
        if (c.is_token()) {
          found = true;
          break;
        }
        stack.push_back(c.value);
      }
    }
    if (!found)
      throw InvariantError("empty yield at node n" + std::to_string(n.id) +
                           where);
  }
}

// Sorted token indices dominated by `ref` (a token dominates itself).
inline std::vector<std::size_t> yield_of(const SentenceTree& tree,
                                         NodeRef ref) {
  if (!tree.has(ref))
    throw UnknownNodeError("unknown node " + ref.str() + " in sentence " +
                           std::to_string(tree.sid));
  std::vector<std::size_t> out;
  if (ref.is_token()) {
    out.push_back(static_cast<std::size_t>(ref.value));
    return out;
  }
  std::vector<int> stack{ref.value};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    for (const NodeRef& c : tree.children_of(id)) {
      if (c.is_token())
        out.push_back(static_cast<std::size_t>(c.value));
      else
        stack.push_back(c.value);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Proper dominance: true iff `b` is reachable from `a` by one or more
// downward steps. Irreflexive; tokens dominate nothing.
inline bool dominates(const SentenceTree& tree, NodeRef a, NodeRef b) {
  if (!tree.has(a))
    throw UnknownNodeError("unknown node " + a.str() + " in sentence " +
                           std::to_string(tree.sid));
  if (!tree.has(b))
    throw UnknownNodeError("unknown node " + b.str() + " in sentence " +
                           std::to_string(tree.sid));
  if (a.is_token()) return false;
  int cur = tree.parent_of(b);
  while (cur != kRoot) {
    if (cur == a.value) return true;
    cur = tree.parent_of(NodeRef::node(cur));
  }
  return false;
}

namespace detail {

inline OriginRef parse_origin(std::string_view s, const std::string& file,
                              std::size_t line) {
  auto last = s.rfind(':');
  if (last == std::string_view::npos)
    throw ParseError(file, line, "malformed origin reference");
  auto mid = s.rfind(':', last - 1);
  if (mid == std::string_view::npos || mid == 0)
    throw ParseError(file, line, "malformed origin reference");
  OriginRef origin;
  origin.document = std::string(s.substr(0, mid));
  auto num = parse_int(s.substr(mid + 1, last - mid - 1));
  if (!num || *num < 1)
    throw ParseError(file, line, "bad sentence number in origin reference");
  origin.sentence_number = static_cast<int>(*num);
  origin.lang = std::string(s.substr(last + 1));
  if (origin.lang.empty())
    throw ParseError(file, line, "missing language in origin reference");
  return origin;
}

inline bool looks_like_node_line(std::string_view line) {
  if (line.size() < 2 || line[0] != '#') return false;
  std::size_t i = 1;
  while (i < line.size() && line[i] >= '0' && line[i] <= '9') ++i;
  return i > 1 && i < line.size() && line[i] == '\t';
}

}  // namespace detail

// Parses an FTB stream into trees, in file order.
inline std::vector<SentenceTree> parse_treebank(
    std::istream& in, const std::string& file = "<stream>") {
  std::vector<SentenceTree> out;
  std::set<int> seen_sids;
  std::set<std::pair<std::string, int>> seen_origins;

  SentenceTree cur;
  bool in_block = false;
  bool in_nodes = false;
  int last_node_id = 0;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.starts_with("#BOS ")) {
      if (in_block) throw ParseError(file, lineno, "unexpected #BOS");
      auto fields = detail::split(line, ' ');
      if (fields.size() != 3)
        throw ParseError(file, lineno, "malformed #BOS line");
      auto sid = detail::parse_int(fields[1]);
      if (!sid || *sid < 1) throw ParseError(file, lineno, "bad sentence id");
      cur = SentenceTree{};
      cur.sid = static_cast<int>(*sid);
      cur.origin = detail::parse_origin(fields[2], file, lineno);
      if (!seen_sids.insert(cur.sid).second)
        throw ParseError(file, lineno,
                         "duplicate sentence id " + std::to_string(cur.sid));
      if (!seen_origins
               .insert({cur.origin.document, cur.origin.sentence_number})
               .second)
        throw ParseError(file, lineno,
                         "duplicate origin " + cur.origin.document + ":" +
                             std::to_string(cur.origin.sentence_number));
      in_block = true;
      in_nodes = false;
      last_node_id = 0;
      continue;
    }
    if (line.starts_with("#EOS ")) {
      if (!in_block) throw ParseError(file, lineno, "unexpected #EOS");
      auto fields = detail::split(line, ' ');
      if (fields.size() != 2 ||
          detail::parse_int(fields[1]) !=
              std::optional<long long>(cur.sid))
        throw ParseError(file, lineno, "#EOS does not match #BOS");
      cur.finalize();
      out.push_back(std::move(cur));
      in_block = false;
      continue;
    }
    if (!in_block)
      throw ParseError(file, lineno, "content outside of #BOS/#EOS block");

    const bool node_line = detail::looks_like_node_line(line);
    auto fields = detail::split(line, '\t');
    if (fields.size() != 4)
      throw ParseError(file, lineno, "expected 4 tab-separated fields");
    for (int i = 0; i < 3; ++i)
      if (fields[i].empty()) throw ParseError(file, lineno, "empty field");
    auto parent = detail::parse_int(fields[3]);
    if (!parent) throw ParseError(file, lineno, "bad parent id: " + fields[3]);
    if (*parent != kRoot && *parent < kMinNodeId)
      throw InvariantError("parent id " + fields[3] + " below " +
                           std::to_string(kMinNodeId) + " in sentence " +
                           std::to_string(cur.sid));

    if (node_line) {
      auto nid = detail::parse_int(std::string_view(fields[0]).substr(1));
      if (!nid) throw ParseError(file, lineno, "bad node id");
      if (*nid < kMinNodeId)
        throw InvariantError("node id " + std::to_string(*nid) + " below " +
                             std::to_string(kMinNodeId) + " in sentence " +
                             std::to_string(cur.sid));
      if (*nid == last_node_id)
        throw InvariantError("duplicate node id " + std::to_string(*nid) +
                             " in sentence " + std::to_string(cur.sid));
      if (*nid < last_node_id)
        throw ParseError(file, lineno, "node ids must be ascending");
      last_node_id = static_cast<int>(*nid);
      in_nodes = true;
      cur.nodes.push_back({static_cast<int>(*nid), fields[1]});
      cur.edges.push_back({NodeRef::node(static_cast<int>(*nid)), fields[2],
                           static_cast<int>(*parent)});
    } else {
      if (in_nodes)
        throw ParseError(file, lineno, "token line after non-terminal lines");
      Token tok;
      tok.index = cur.tokens.size();
      tok.form = fields[0];
      tok.pos = fields[1];
      cur.edges.push_back(
          {NodeRef::token(tok.index), fields[2], static_cast<int>(*parent)});
      cur.tokens.push_back(std::move(tok));
    }
  }
  if (in_block)
    throw ParseError(file, lineno, "unexpected end of file in sentence " +
                                       std::to_string(cur.sid));
  return out;
}

inline void write_treebank(std::ostream& os,
                           const std::vector<SentenceTree>& trees) {
  for (const SentenceTree& t : trees) {
    os << "#BOS " << t.sid << ' ' << t.origin.str() << '\n';
    for (const Token& tok : t.tokens) {
      const Edge& e = t.edge_of(NodeRef::token(tok.index));
      os << tok.form << '\t' << tok.pos << '\t' << e.label << '\t' << e.parent
         << '\n';
    }
    for (const NonTerminal& n : t.nodes) {
      const Edge& e = t.edge_of(NodeRef::node(n.id));
      os << '#' << n.id << '\t' << n.category << '\t' << e.label << '\t'
         << e.parent << '\n';
    }
    os << "#EOS " << t.sid << '\n';
  }
}

}  // namespace fuse
