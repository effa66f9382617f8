#pragma once

// Treebank stores (trees + annotations per language), parallel sets (two
// stores fused by an alignment store), and the PAA/ALN text formats.
//
// PAA (UTF-8, LF, single-space separated fields; `-` is the empty set):
//
//   #SENT <document>:<sentence_number>:<lang>
//   PRED <pid> name=<NAME> dis=<n> class=<CLASS> group=<GROUP>
//   PBIND <pid> nodes=<ref,...> excl=<ref,...|-> tags=<tag,...|->
//   ARG <pid> <aid> role=<ROLE>
//   ABIND <pid> <aid> nodes=<ref,...> excl=<ref,...|-> tags=<tag,...|->
//   #END
//
// Node refs are `t<index>` for tokens and `n<id>` for non-terminals. Every
// PRED requires exactly one PBIND and every ARG exactly one ABIND.
//
// ALN (UTF-8, LF):
//
//   #PAIR <document>:<sentence_number> <lang_a> <lang_b>
//   PALIGN <pid_a> <pid_b> tags=<tag,...|->
//   AALIGN <pid_a>.<aid_a> <pid_b>.<aid_b> tags=<tag,...|->
//   #END
//
// AALIGN lines bind to the nearest preceding PALIGN; an AALIGN whose pids
// differ from that PALIGN is a parse error.

#include <memory>

#include "fuse/align.hpp"
#include "fuse/annot.hpp"

namespace fuse {

class TreebankStore {
public:
  std::string lang;
  Vocab vocab;
  std::vector<SentenceTree> trees;
  // One structure list per tree, parallel to `trees`.
  std::vector<std::vector<PredArgStructure>> annotations;
  std::map<int, std::size_t> by_sid;
  std::map<std::pair<std::string, int>, std::size_t> by_origin;
  // Derived predicate lexicon, keyed (name, disambiguator).
  std::map<std::pair<std::string, int>, PredicateEntry> lexicon;
  // Derived role inventories per predicate group.
  std::map<std::string, std::set<std::string>> inventories;

  void add_tree(SentenceTree tree) {
    if (!lang.empty() && tree.origin.lang != lang)
      throw InvariantError("sentence " + std::to_string(tree.sid) +
                           " has origin language '" + tree.origin.lang +
                           "' in store for '" + lang + "'");
    if (!by_sid.emplace(tree.sid, trees.size()).second)
      throw InvariantError("duplicate sentence id " + std::to_string(tree.sid));
    if (!by_origin
             .emplace(std::pair{tree.origin.document,
                                tree.origin.sentence_number},
                      trees.size())
             .second)
      throw InvariantError("duplicate origin " + tree.origin.str());
    trees.push_back(std::move(tree));
    annotations.emplace_back();
  }

  // Appends a structure to a sentence, updating the lexicon and the group
  // role inventory. Identity rules (unique pid, consistent lexicon entry)
  // are enforced here; semantic binding rules are left to the validator.
  void add_structure(std::size_t tree_idx, PredArgStructure s) {
    for (const PredArgStructure& other : annotations.at(tree_idx))
      if (other.pid == s.pid)
        throw InvariantError("duplicate structure id " + s.pid +
                             " in sentence " +
                             std::to_string(trees[tree_idx].sid));
    auto key = std::pair{s.predicate.name, s.predicate.dis};
    auto it = lexicon.find(key);
    if (it == lexicon.end()) {
      lexicon.emplace(key, s.predicate);
    } else if (it->second.cls != s.predicate.cls ||
               it->second.group != s.predicate.group) {
      throw InvariantError("conflicting declaration for predicate " +
                           s.predicate.name + "." +
                           std::to_string(s.predicate.dis));
    }
    auto& roles = inventories[s.predicate.group];
    for (const Argument& a : s.arguments) roles.insert(a.role);
    annotations[tree_idx].push_back(std::move(s));
  }

  const SentenceTree* find_origin(const std::string& document,
                                  int sentence_number) const {
    auto it = by_origin.find({document, sentence_number});
    return it == by_origin.end() ? nullptr : &trees[it->second];
  }

  std::size_t index_of_origin(const std::string& document,
                              int sentence_number) const {
    auto it = by_origin.find({document, sentence_number});
    if (it == by_origin.end())
      throw Error("no sentence " + document + ":" +
                  std::to_string(sentence_number) + " in store for '" + lang +
                  "'");
    return it->second;
  }

  const PredArgStructure* find_structure(std::size_t tree_idx,
                                         std::string_view pid) const {
    for (const PredArgStructure& s : annotations.at(tree_idx))
      if (s.pid == pid) return &s;
    return nullptr;
  }
};

// Union of roles used by structures whose predicate is in `group`; empty for
// unknown groups.
inline std::set<std::string> role_inventory(const TreebankStore& store,
                                            const std::string& group) {
  auto it = store.inventories.find(group);
  return it == store.inventories.end() ? std::set<std::string>{} : it->second;
}

namespace detail {

inline std::string expect_kv(const std::string& field, std::string_view key,
                             const std::string& file, std::size_t line) {
  if (field.size() <= key.size() + 1 ||
      std::string_view(field).substr(0, key.size()) != key ||
      field[key.size()] != '=')
    throw ParseError(file, line,
                     "expected " + std::string(key) + "=<value>, got '" +
                         field + "'");
  return field.substr(key.size() + 1);
}

inline std::vector<std::string> parse_tag_list(const std::string& value,
                                               const std::string& file,
                                               std::size_t line) {
  if (value == "-") return {};
  auto tags = split(value, ',');
  for (const auto& t : tags)
    if (t.empty()) throw ParseError(file, line, "empty tag");
  return tags;
}

inline std::vector<NodeRef> parse_ref_list(const std::string& value,
                                           const SentenceTree& tree,
                                           bool allow_empty,
                                           const std::string& file,
                                           std::size_t line) {
  if (value == "-") {
    if (!allow_empty) throw ParseError(file, line, "empty node set");
    return {};
  }
  std::vector<NodeRef> refs;
  for (const auto& part : split(value, ',')) {
    auto ref = NodeRef::parse(part);
    if (!ref) throw ParseError(file, line, "bad node reference '" + part + "'");
    if (!tree.has(*ref))
      throw ParseError(file, line, "unknown node " + ref->str() +
                                       " in sentence " +
                                       std::to_string(tree.sid));
    refs.push_back(*ref);
  }
  return refs;
}

inline std::string render_refs(const std::vector<NodeRef>& refs) {
  if (refs.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (i) out.push_back(',');
    out += refs[i].str();
  }
  return out;
}

inline std::string render_tags(const std::vector<std::string>& tags) {
  return tags.empty() ? "-" : join(tags, ',');
}

}  // namespace detail

// Parses a PAA stream and attaches the structures to the store's sentences.
// Reference failures (unknown sentence, unknown node, duplicate ids) are
// hard errors; semantic rules are checked by validate_annotation.
inline void parse_paa(std::istream& in, TreebankStore& store,
                      const std::string& file = "<stream>") {
  struct Pending {
    PredArgStructure s;
    bool pbound = false;
    std::set<std::string> abound;
    std::size_t line = 0;
  };

  std::size_t tree_idx = 0;
  const SentenceTree* tree = nullptr;
  std::vector<Pending> pending;  // declaration order
  std::map<std::string, std::size_t> by_pid;

  auto find_pending = [&](const std::string& pid, std::size_t line) -> Pending& {
    auto it = by_pid.find(pid);
    if (it == by_pid.end())
      throw ParseError(file, line, "unknown structure id " + pid);
    return pending[it->second];
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = detail::split(line, ' ');
    for (const auto& f : fields)
      if (f.empty()) throw ParseError(file, lineno, "empty field");

    if (fields[0] == "#SENT") {
      if (tree) throw ParseError(file, lineno, "unexpected #SENT");
      if (fields.size() != 2)
        throw ParseError(file, lineno, "malformed #SENT line");
      OriginRef origin = detail::parse_origin(fields[1], file, lineno);
      if (origin.lang != store.lang)
        throw ParseError(file, lineno, "language '" + origin.lang +
                                           "' does not match store '" +
                                           store.lang + "'");
      auto it = store.by_origin.find(
          {origin.document, origin.sentence_number});
      if (it == store.by_origin.end())
        throw ParseError(file, lineno,
                         "unknown sentence " + origin.document + ":" +
                             std::to_string(origin.sentence_number));
      tree_idx = it->second;
      tree = &store.trees[tree_idx];
      pending.clear();
      by_pid.clear();
      continue;
    }
    if (fields[0] == "#END") {
      if (!tree) throw ParseError(file, lineno, "unexpected #END");
      if (fields.size() != 1)
        throw ParseError(file, lineno, "malformed #END line");
      for (Pending& p : pending) {
        if (!p.pbound)
          throw ParseError(file, p.line,
                           "PRED " + p.s.pid + " has no PBIND");
        for (const Argument& a : p.s.arguments)
          if (!p.abound.count(a.aid))
            throw ParseError(file, p.line, "ARG " + p.s.pid + " " + a.aid +
                                               " has no ABIND");
        try {
          store.add_structure(tree_idx, std::move(p.s));
        } catch (const InvariantError& e) {
          throw ParseError(file, p.line, e.what());
        }
      }
      tree = nullptr;
      continue;
    }
    if (!tree)
      throw ParseError(file, lineno, "content outside of #SENT/#END block");

    if (fields[0] == "PRED") {
      if (fields.size() != 6)
        throw ParseError(file, lineno, "malformed PRED line");
      PredArgStructure s;
      s.pid = fields[1];
      if (!is_pid(s.pid))
        throw ParseError(file, lineno, "bad structure id '" + s.pid + "'");
      s.predicate.name = detail::expect_kv(fields[2], "name", file, lineno);
      if (detail::has_ascii_lower(s.predicate.name))
        throw ParseError(file, lineno,
                         "predicate name must be uppercase: " +
                             s.predicate.name);
      auto dis =
          detail::parse_int(detail::expect_kv(fields[3], "dis", file, lineno));
      if (!dis || *dis < 1)
        throw ParseError(file, lineno, "bad disambiguator");
      s.predicate.dis = static_cast<int>(*dis);
      s.predicate.cls = detail::expect_kv(fields[4], "class", file, lineno);
      if (!store.vocab.classes.count(s.predicate.cls))
        throw ParseError(file, lineno,
                         "unknown predicate class '" + s.predicate.cls + "'");
      s.predicate.group = detail::expect_kv(fields[5], "group", file, lineno);
      if (by_pid.count(s.pid))
        throw ParseError(file, lineno, "duplicate structure id " + s.pid);
      by_pid.emplace(s.pid, pending.size());
      pending.push_back({std::move(s), false, {}, lineno});
      continue;
    }
    if (fields[0] == "PBIND") {
      if (fields.size() != 5)
        throw ParseError(file, lineno, "malformed PBIND line");
      Pending& p = find_pending(fields[1], lineno);
      if (p.pbound)
        throw ParseError(file, lineno, "duplicate PBIND for " + fields[1]);
      Binding b;
      b.included = detail::parse_ref_list(
          detail::expect_kv(fields[2], "nodes", file, lineno), *tree, false,
          file, lineno);
      b.excluded = detail::parse_ref_list(
          detail::expect_kv(fields[3], "excl", file, lineno), *tree, true,
          file, lineno);
      b.tags = detail::parse_tag_list(
          detail::expect_kv(fields[4], "tags", file, lineno), file, lineno);
      p.s.pbinding = std::move(b);
      p.pbound = true;
      continue;
    }
    if (fields[0] == "ARG") {
      if (fields.size() != 4)
        throw ParseError(file, lineno, "malformed ARG line");
      Pending& p = find_pending(fields[1], lineno);
      Argument a;
      a.aid = fields[2];
      if (!is_aid(a.aid))
        throw ParseError(file, lineno, "bad argument id '" + a.aid + "'");
      if (p.s.find_argument(a.aid))
        throw ParseError(file, lineno, "duplicate argument id " + a.aid +
                                           " in " + p.s.pid);
      a.role = detail::expect_kv(fields[3], "role", file, lineno);
      if (!detail::is_role_name(a.role))
        throw ParseError(file, lineno, "bad role name '" + a.role + "'");
      p.s.arguments.push_back(std::move(a));
      continue;
    }
    if (fields[0] == "ABIND") {
      if (fields.size() != 6)
        throw ParseError(file, lineno, "malformed ABIND line");
      Pending& p = find_pending(fields[1], lineno);
      Argument* arg = nullptr;
      for (Argument& a : p.s.arguments)
        if (a.aid == fields[2]) arg = &a;
      if (!arg)
        throw ParseError(file, lineno, "unknown argument id " + fields[2] +
                                           " in " + p.s.pid);
      if (p.abound.count(arg->aid))
        throw ParseError(file, lineno, "duplicate ABIND for " + p.s.pid + " " +
                                           arg->aid);
      Binding b;
      b.included = detail::parse_ref_list(
          detail::expect_kv(fields[3], "nodes", file, lineno), *tree, false,
          file, lineno);
      b.excluded = detail::parse_ref_list(
          detail::expect_kv(fields[4], "excl", file, lineno), *tree, true,
          file, lineno);
      b.tags = detail::parse_tag_list(
          detail::expect_kv(fields[5], "tags", file, lineno), file, lineno);
      arg->binding = std::move(b);
      p.abound.insert(arg->aid);
      continue;
    }
    throw ParseError(file, lineno, "unknown line type '" + fields[0] + "'");
  }
  if (tree) throw ParseError(file, lineno, "unexpected end of file");
}

inline void write_paa(std::ostream& os, const TreebankStore& store) {
  for (std::size_t i = 0; i < store.trees.size(); ++i) {
    if (store.annotations[i].empty()) continue;
    os << "#SENT " << store.trees[i].origin.str() << '\n';
    for (const PredArgStructure& s : store.annotations[i]) {
      os << "PRED " << s.pid << " name=" << s.predicate.name
         << " dis=" << s.predicate.dis << " class=" << s.predicate.cls
         << " group=" << s.predicate.group << '\n';
      os << "PBIND " << s.pid << " nodes=" << detail::render_refs(s.pbinding.included)
         << " excl=" << detail::render_refs(s.pbinding.excluded)
         << " tags=" << detail::render_tags(s.pbinding.tags) << '\n';
      for (const Argument& a : s.arguments) {
        os << "ARG " << s.pid << ' ' << a.aid << " role=" << a.role << '\n';
        os << "ABIND " << s.pid << ' ' << a.aid
           << " nodes=" << detail::render_refs(a.binding.included)
           << " excl=" << detail::render_refs(a.binding.excluded)
           << " tags=" << detail::render_tags(a.binding.tags) << '\n';
      }
    }
    os << "#END\n";
  }
}

// Two monolingual stores fused by one alignment store. Stores are shared
// read-only; sets loaded from the same manifest reuse them.
class ParallelSet {
public:
  std::string name;
  std::shared_ptr<const TreebankStore> a;
  std::shared_ptr<const TreebankStore> b;
  std::vector<PairBlock> alignment;
  // Sentence pairs present in both stores, keyed (document, number).
  std::set<std::pair<std::string, int>> pair_registry;
  Vocab vocab;

  const TreebankStore& store_a() const { return *a; }
  const TreebankStore& store_b() const { return *b; }

  const TreebankStore* store_for(std::string_view lang) const {
    if (a && a->lang == lang) return a.get();
    if (b && b->lang == lang) return b.get();
    return nullptr;
  }

  void build_registry() {
    pair_registry.clear();
    for (const auto& [key, idx] : a->by_origin)
      if (b->by_origin.count(key)) pair_registry.insert(key);
  }

  SentencePair make_pair(const std::string& document,
                         int sentence_number) const {
    return {document, sentence_number, a->lang, b->lang};
  }

  static ParallelSet make(std::string name, TreebankStore store_a,
                          TreebankStore store_b) {
    if (store_a.lang == store_b.lang)
      throw InvariantError("parallel set requires two distinct languages");
    ParallelSet set;
    set.name = std::move(name);
    set.vocab = store_a.vocab;
    set.a = std::make_shared<const TreebankStore>(std::move(store_a));
    set.b = std::make_shared<const TreebankStore>(std::move(store_b));
    set.build_registry();
    return set;
  }
};

// Parses an ALN stream into the set. Unresolvable references (unknown pair,
// pid or aid) are hard errors; duplicate alignments and unknown tags load
// and are reported by validate_alignment.
inline void parse_aln(std::istream& in, ParallelSet& set,
                      const std::string& file = "<stream>") {
  PairBlock* block = nullptr;
  std::size_t idx_a = 0, idx_b = 0;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = detail::split(line, ' ');
    for (const auto& f : fields)
      if (f.empty()) throw ParseError(file, lineno, "empty field");

    if (fields[0] == "#PAIR") {
      if (block) throw ParseError(file, lineno, "unexpected #PAIR");
      if (fields.size() != 4)
        throw ParseError(file, lineno, "malformed #PAIR line");
      auto colon = fields[1].rfind(':');
      if (colon == std::string::npos || colon == 0)
        throw ParseError(file, lineno, "malformed pair reference");
      std::string document = fields[1].substr(0, colon);
      auto num = detail::parse_int(std::string_view(fields[1]).substr(colon + 1));
      if (!num || *num < 1)
        throw ParseError(file, lineno, "bad sentence number");
      if (fields[2] != set.a->lang || fields[3] != set.b->lang)
        throw ParseError(file, lineno, "pair languages '" + fields[2] + " " +
                                           fields[3] +
                                           "' do not match the set");
      int number = static_cast<int>(*num);
      if (!set.pair_registry.count({document, number}))
        throw ParseError(file, lineno, "pair " + document + ":" +
                                           std::to_string(number) +
                                           " is not registered");
      idx_a = set.a->index_of_origin(document, number);
      idx_b = set.b->index_of_origin(document, number);
      set.alignment.push_back({set.make_pair(document, number), {}});
      block = &set.alignment.back();
      continue;
    }
    if (fields[0] == "#END") {
      if (!block) throw ParseError(file, lineno, "unexpected #END");
      if (fields.size() != 1)
        throw ParseError(file, lineno, "malformed #END line");
      block = nullptr;
      continue;
    }
    if (!block)
      throw ParseError(file, lineno, "content outside of #PAIR/#END block");

    if (fields[0] == "PALIGN") {
      if (fields.size() != 4)
        throw ParseError(file, lineno, "malformed PALIGN line");
      PredicateAlignment pa;
      pa.pid_a = fields[1];
      pa.pid_b = fields[2];
      if (!set.a->find_structure(idx_a, pa.pid_a))
        throw ParseError(file, lineno, "no structure " + pa.pid_a + " in " +
                                           block->pair.str() + " (" +
                                           set.a->lang + ")");
      if (!set.b->find_structure(idx_b, pa.pid_b))
        throw ParseError(file, lineno, "no structure " + pa.pid_b + " in " +
                                           block->pair.str() + " (" +
                                           set.b->lang + ")");
      pa.tags = detail::parse_tag_list(
          detail::expect_kv(fields[3], "tags", file, lineno), file, lineno);
      block->aligns.push_back(std::move(pa));
      continue;
    }
    if (fields[0] == "AALIGN") {
      if (fields.size() != 4)
        throw ParseError(file, lineno, "malformed AALIGN line");
      if (block->aligns.empty())
        throw ParseError(file, lineno, "AALIGN before any PALIGN");
      PredicateAlignment& pa = block->aligns.back();

      auto split_ref = [&](const std::string& s) {
        auto dot = s.rfind('.');
        if (dot == std::string::npos || dot == 0 || dot + 1 == s.size())
          throw ParseError(file, lineno, "bad argument reference '" + s + "'");
        return std::pair{s.substr(0, dot), s.substr(dot + 1)};
      };
      auto [pid_a, aid_a] = split_ref(fields[1]);
      auto [pid_b, aid_b] = split_ref(fields[2]);
      if (pid_a != pa.pid_a || pid_b != pa.pid_b)
        throw ParseError(file, lineno,
                         "AALIGN pids do not match the preceding PALIGN");
      const PredArgStructure* sa = set.a->find_structure(idx_a, pid_a);
      const PredArgStructure* sb = set.b->find_structure(idx_b, pid_b);
      const Argument* arg_a = sa->find_argument(aid_a);
      const Argument* arg_b = sb->find_argument(aid_b);
      if (!arg_a)
        throw ParseError(file, lineno, "no argument " + aid_a + " in " +
                                           pid_a + " (" + set.a->lang + ")");
      if (!arg_b)
        throw ParseError(file, lineno, "no argument " + aid_b + " in " +
                                           pid_b + " (" + set.b->lang + ")");
      ArgAlignment aa;
      aa.aid_a = aid_a;
      aa.aid_b = aid_b;
      aa.role_a = arg_a->role;
      aa.role_b = arg_b->role;
      aa.tags = detail::parse_tag_list(
          detail::expect_kv(fields[3], "tags", file, lineno), file, lineno);
      pa.args.push_back(std::move(aa));
      continue;
    }
    throw ParseError(file, lineno, "unknown line type '" + fields[0] + "'");
  }
  if (block) throw ParseError(file, lineno, "unexpected end of file");
}

inline void write_aln(std::ostream& os, const ParallelSet& set) {
  for (const PairBlock& block : set.alignment) {
    os << "#PAIR " << block.pair.str() << ' ' << block.pair.lang_a << ' '
       << block.pair.lang_b << '\n';
    for (const PredicateAlignment& pa : block.aligns) {
      os << "PALIGN " << pa.pid_a << ' ' << pa.pid_b
         << " tags=" << detail::render_tags(pa.tags) << '\n';
      for (const ArgAlignment& aa : pa.args)
        os << "AALIGN " << pa.pid_a << '.' << aa.aid_a << ' ' << pa.pid_b
           << '.' << aa.aid_b << " tags=" << detail::render_tags(aa.tags)
           << '\n';
    }
    os << "#END\n";
  }
}

}  // namespace fuse
