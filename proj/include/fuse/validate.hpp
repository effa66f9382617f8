#pragma once

// Annotation and alignment validators. Validators never throw on rule
// violations; every violation becomes a Diagnostic. They do assume a
// structurally sound store (parsed input, or programmatic construction with
// resolvable node references).

#include "fuse/store.hpp"

namespace fuse {

namespace rules {
inline constexpr const char* kUnbound = "UNBOUND";
inline constexpr const char* kEmptySpan = "EMPTY_SPAN";
inline constexpr const char* kExclNotDominated = "EXCL_NOT_DOMINATED";
inline constexpr const char* kRecursion = "RECURSION";
inline constexpr const char* kRoleNotInGroup = "ROLE_NOT_IN_GROUP";
inline constexpr const char* kDupRole = "DUP_ROLE";
inline constexpr const char* kUnknownTag = "UNKNOWN_TAG";
inline constexpr const char* kArgWithoutPredAlign = "ARG_WITHOUT_PRED_ALIGN";
inline constexpr const char* kDanglingRef = "DANGLING_REF";
inline constexpr const char* kDupAlign = "DUP_ALIGN";
inline constexpr const char* kPairNotRegistered = "PAIR_NOT_REGISTERED";
}  // namespace rules

inline std::vector<Diagnostic> validate_annotation(const TreebankStore& store) {
  std::vector<Diagnostic> out;

  auto check_binding = [&](const Binding& b, const SentenceTree& tree,
                           const std::string& pid, const std::string& aid,
                           std::vector<std::size_t>& span) {
    if (b.included.empty()) {
      out.push_back({rules::kUnbound, Severity::Error, store.lang, tree.sid,
                     pid, aid, "element has no binding"});
      span.clear();
      return;
    }
    for (const NodeRef& excl : b.excluded) {
      bool dominated = false;
      for (const NodeRef& inc : b.included)
        if (dominates(tree, inc, excl)) dominated = true;
      if (!dominated)
        out.push_back({rules::kExclNotDominated, Severity::Error, store.lang,
                       tree.sid, pid, aid,
                       "excluded node " + excl.str() +
                           " is not dominated by any included node"});
    }
    span = resolved_span(b, tree);
    if (span.empty())
      out.push_back({rules::kEmptySpan, Severity::Error, store.lang, tree.sid,
                     pid, aid, "exclusions remove every token"});
    for (const std::string& tag : b.tags)
      if (!store.vocab.binding_tags.count(tag))
        out.push_back({rules::kUnknownTag, Severity::Error, store.lang,
                       tree.sid, pid, aid,
                       "binding tag '" + tag + "' is not declared"});
  };

  for (std::size_t i = 0; i < store.trees.size(); ++i) {
    const SentenceTree& tree = store.trees[i];
    for (const PredArgStructure& s : store.annotations[i]) {
      std::vector<std::size_t> pred_span;
      check_binding(s.pbinding, tree, s.pid, "", pred_span);

      std::map<std::string, std::string> role_seen;  // role -> first aid
      for (const Argument& arg : s.arguments) {
        std::vector<std::size_t> arg_span;
        check_binding(arg.binding, tree, s.pid, arg.aid, arg_span);

        bool overlaps = false;
        for (std::size_t t : arg_span)
          if (std::binary_search(pred_span.begin(), pred_span.end(), t))
            overlaps = true;
        if (overlaps)
          out.push_back({rules::kRecursion, Severity::Error, store.lang,
                         tree.sid, s.pid, arg.aid,
                         "argument span contains its own predicate"});

        auto [it, fresh] = role_seen.emplace(arg.role, arg.aid);
        if (!fresh)
          out.push_back({rules::kDupRole, Severity::Error, store.lang,
                         tree.sid, s.pid, arg.aid,
                         "role " + arg.role + " already used by " +
                             it->second});
      }
    }
  }

  // Near-miss role names within a group inventory: names that differ only by
  // case or underscore/whitespace placement are flagged as warnings.
  for (const auto& [group, roles] : store.inventories) {
    std::map<std::string, std::vector<std::string>> folded;
    for (const std::string& role : roles)
      folded[detail::role_fold(role)].push_back(role);
    for (const auto& [fold, variants] : folded) {
      if (variants.size() < 2) continue;
      out.push_back({rules::kRoleNotInGroup, Severity::Warning, store.lang, 0,
                     "", "",
                     "group " + group + " has near-identical role names: " +
                         detail::join(variants, ',')});
    }
  }
  return out;
}

inline std::vector<Diagnostic> validate_alignment(const ParallelSet& set) {
  std::vector<Diagnostic> out;
  // (document, number, pid_a, pid_b) -> seen, for duplicate detection across
  // blocks of the same pair.
  std::set<std::tuple<std::string, int, std::string, std::string>> seen_pred;

  for (const PairBlock& block : set.alignment) {
    const std::string& doc = block.pair.document;
    const int num = block.pair.sentence_number;

    if (!set.pair_registry.count({doc, num})) {
      out.push_back({rules::kPairNotRegistered, Severity::Error, "", num, "",
                     "", "pair " + block.pair.str() +
                         " is not in the pair registry"});
      continue;
    }
    std::size_t idx_a = set.a->index_of_origin(doc, num);
    std::size_t idx_b = set.b->index_of_origin(doc, num);

    for (const PredicateAlignment& pa : block.aligns) {
      const PredArgStructure* sa =
          pa.pid_a.empty() ? nullptr : set.a->find_structure(idx_a, pa.pid_a);
      const PredArgStructure* sb =
          pa.pid_b.empty() ? nullptr : set.b->find_structure(idx_b, pa.pid_b);
      if (!sa)
        out.push_back({rules::kDanglingRef, Severity::Error, set.a->lang, num,
                       pa.pid_a, "",
                       "no structure " + pa.pid_a + " in " + block.pair.str()});
      if (!sb)
        out.push_back({rules::kDanglingRef, Severity::Error, set.b->lang, num,
                       pa.pid_b, "",
                       "no structure " + pa.pid_b + " in " + block.pair.str()});
      if ((!sa || !sb) && !pa.args.empty())
        for (const ArgAlignment& aa : pa.args)
          out.push_back({rules::kArgWithoutPredAlign, Severity::Error, "", num,
                         pa.pid_a, aa.aid_a,
                         "argument link is not contained in a resolvable "
                         "predicate alignment"});
      for (const std::string& tag : pa.tags)
        if (!set.vocab.align_tags.count(tag))
          out.push_back({rules::kUnknownTag, Severity::Error, "", num,
                         pa.pid_a, "",
                         "alignment tag '" + tag + "' is not declared"});
      if (sa && sb &&
          !seen_pred.insert({doc, num, pa.pid_a, pa.pid_b}).second)
        out.push_back({rules::kDupAlign, Severity::Error, "", num, pa.pid_a,
                       "",
                       "duplicate predicate alignment " + pa.pid_a + "<->" +
                           pa.pid_b + " in " + block.pair.str()});

      std::set<std::pair<std::string, std::string>> seen_roles;
      for (const ArgAlignment& aa : pa.args) {
        const Argument* arg_a = sa ? sa->find_argument(aa.aid_a) : nullptr;
        const Argument* arg_b = sb ? sb->find_argument(aa.aid_b) : nullptr;
        if (sa && !arg_a)
          out.push_back({rules::kDanglingRef, Severity::Error, set.a->lang,
                         num, pa.pid_a, aa.aid_a,
                         "no argument " + aa.aid_a + " in " + pa.pid_a});
        if (sb && !arg_b)
          out.push_back({rules::kDanglingRef, Severity::Error, set.b->lang,
                         num, pa.pid_b, aa.aid_b,
                         "no argument " + aa.aid_b + " in " + pa.pid_b});
        for (const std::string& tag : aa.tags)
          if (!set.vocab.align_tags.count(tag))
            out.push_back({rules::kUnknownTag, Severity::Error, "", num,
                           pa.pid_a, aa.aid_a,
                           "alignment tag '" + tag + "' is not declared"});
        if (arg_a && arg_b &&
            !seen_roles.insert({arg_a->role, arg_b->role}).second)
          out.push_back({rules::kDupAlign, Severity::Error, "", num, pa.pid_a,
                         aa.aid_a,
                         "duplicate argument alignment " + arg_a->role +
                             "<->" + arg_b->role});
      }
    }
  }
  return out;
}

inline std::vector<Diagnostic> validate_set(const ParallelSet& set) {
  std::vector<Diagnostic> out = validate_annotation(*set.a);
  auto more = validate_annotation(*set.b);
  out.insert(out.end(), more.begin(), more.end());
  auto align = validate_alignment(set);
  out.insert(out.end(), align.begin(), align.end());
  return out;
}

}  // namespace fuse
