#pragma once

// Predicate-argument structures and the binding layer that attaches them to
// constituent trees. Structures are flat: one predicate with role-named
// argument slots, no nesting. A binding points at one or more tree nodes and
// may explicitly exclude dominated sub-nodes, yielding a (possibly
// discontinuous) token span.

#include <set>

#include "fuse/tree.hpp"

namespace fuse {

struct PredicateEntry {
  std::string name;   // capitalised citation form, e.g. NOMINATE
  int dis = 1;        // disambiguator for homonymous/polysemous predicates
  std::string cls;    // syntactic class, e.g. V, N, A
  std::string group;  // predicate group sharing one role inventory

  auto operator<=>(const PredicateEntry&) const = default;
};

struct Binding {
  std::vector<NodeRef> included;
  std::vector<NodeRef> excluded;
  std::vector<std::string> tags;

  bool has_tag(std::string_view tag) const {
    for (const auto& t : tags)
      if (t == tag) return true;
    return false;
  }
};

struct Argument {
  std::string aid;
  std::string role;
  Binding binding;
};

struct PredArgStructure {
  std::string pid;
  PredicateEntry predicate;
  Binding pbinding;
  std::vector<Argument> arguments;

  const Argument* find_argument(std::string_view aid) const {
    for (const Argument& a : arguments)
      if (a.aid == aid) return &a;
    return nullptr;
  }
};

// Union of the included yields minus the union of the excluded yields.
// May be empty; callers that require a non-empty span use resolve_binding.
inline std::vector<std::size_t> resolved_span(const Binding& b,
                                              const SentenceTree& tree) {
  std::set<std::size_t> in;
  for (const NodeRef& r : b.included)
    for (std::size_t i : yield_of(tree, r)) in.insert(i);
  for (const NodeRef& r : b.excluded)
    for (std::size_t i : yield_of(tree, r)) in.erase(i);
  return {in.begin(), in.end()};
}

inline std::vector<std::size_t> resolve_binding(const Binding& b,
                                                const SentenceTree& tree) {
  auto span = resolved_span(b, tree);
  if (span.empty())
    throw EmptyResolutionError("binding resolves to the empty span in sentence " +
                               std::to_string(tree.sid));
  return span;
}

// Numeric part of a P<k>/A<k> identifier, or -1 if it is not of that shape.
inline int id_number(std::string_view id) {
  if (id.size() < 2) return -1;
  auto v = detail::parse_int(id.substr(1));
  if (!v || *v < 1) return -1;
  return static_cast<int>(*v);
}

inline bool is_pid(std::string_view id) {
  return !id.empty() && id[0] == 'P' && id_number(id) > 0;
}

inline bool is_aid(std::string_view id) {
  return !id.empty() && id[0] == 'A' && id_number(id) > 0;
}

}  // namespace fuse
