#pragma once

// Queries over loaded parallel sets: paradigmatic realisation queries,
// per-predicate frame summaries, alignment-tag search, the translation graph
// with predicate clustering, dangling reports and corpus statistics.
//
// Every operation is a pure function over an immutable set and produces a
// deterministic ordering. Reports render as TSV (one record per line) or a
// line-oriented human-readable form.

#include <tuple>

#include "fuse/store.hpp"

namespace fuse {

// ---------------------------------------------------------------------------
// Realisation queries

struct RealisationRecord {
  std::string lang;
  int sid = 0;
  std::string pid;
  std::string pred_name;
  std::string pred_class;
  std::string aid;  // kept for ordering; not part of the record output
  std::string role;
  std::vector<std::size_t> span;
  std::vector<NodeRef> nodes;            // bound (included) nodes
  std::vector<std::string> categories;   // phrasal category / POS per node
  std::vector<std::string> functions;    // functional edge label per node
  std::vector<std::string> tags;         // binding tags
};

struct RealisationFilter {
  std::optional<std::string> lang;
  std::set<std::string> skip_binding_tags;
  std::set<std::string> skip_pred_tags;
  std::set<std::string> skip_align_tags;
};

namespace detail {

inline bool intersects_tagset(const std::vector<std::string>& tags,
                              const std::set<std::string>& skip) {
  for (const auto& t : tags)
    if (skip.count(t)) return true;
  return false;
}

// Keys of structures/arguments that participate in an alignment carrying one
// of the skipped tags: (lang, document, number, pid[, aid]).
struct AlignSkips {
  std::set<std::tuple<std::string, std::string, int, std::string>> structures;
  std::set<std::tuple<std::string, std::string, int, std::string, std::string>>
      arguments;
};

inline AlignSkips collect_align_skips(const ParallelSet& set,
                                      const std::set<std::string>& skip) {
  AlignSkips out;
  if (skip.empty()) return out;
  for (const PairBlock& block : set.alignment) {
    const std::string& doc = block.pair.document;
    int num = block.pair.sentence_number;
    for (const PredicateAlignment& pa : block.aligns) {
      if (intersects_tagset(pa.tags, skip)) {
        out.structures.insert({set.a->lang, doc, num, pa.pid_a});
        out.structures.insert({set.b->lang, doc, num, pa.pid_b});
      }
      for (const ArgAlignment& aa : pa.args)
        if (intersects_tagset(aa.tags, skip)) {
          out.arguments.insert({set.a->lang, doc, num, pa.pid_a, aa.aid_a});
          out.arguments.insert({set.b->lang, doc, num, pa.pid_b, aa.aid_b});
        }
    }
  }
  return out;
}

}  // namespace detail

// One record per argument of a structure in `group` carrying `role`, both
// stores unless filtered by language, ordered by (lang, sid, pid, aid).
inline std::vector<RealisationRecord> realisations(
    const ParallelSet& set, const std::string& group, const std::string& role,
    const RealisationFilter& filter = {}) {
  std::vector<RealisationRecord> out;
  detail::AlignSkips skips =
      detail::collect_align_skips(set, filter.skip_align_tags);

  auto scan = [&](const TreebankStore& store) {
    if (filter.lang && *filter.lang != store.lang) return;
    for (std::size_t i = 0; i < store.trees.size(); ++i) {
      const SentenceTree& tree = store.trees[i];
      for (const PredArgStructure& s : store.annotations[i]) {
        if (s.predicate.group != group) continue;
        if (detail::intersects_tagset(s.pbinding.tags, filter.skip_pred_tags))
          continue;
        if (skips.structures.count({store.lang, tree.origin.document,
                                    tree.origin.sentence_number, s.pid}))
          continue;
        for (const Argument& arg : s.arguments) {
          if (arg.role != role) continue;
          if (detail::intersects_tagset(arg.binding.tags,
                                        filter.skip_binding_tags))
            continue;
          if (skips.arguments.count({store.lang, tree.origin.document,
                                     tree.origin.sentence_number, s.pid,
                                     arg.aid}))
            continue;
          RealisationRecord rec;
          rec.lang = store.lang;
          rec.sid = tree.sid;
          rec.pid = s.pid;
          rec.pred_name = s.predicate.name;
          rec.pred_class = s.predicate.cls;
          rec.aid = arg.aid;
          rec.role = arg.role;
          rec.span = resolved_span(arg.binding, tree);
          rec.nodes = arg.binding.included;
          for (const NodeRef& ref : rec.nodes) {
            if (ref.is_token())
              rec.categories.push_back(tree.tokens[ref.value].pos);
            else
              rec.categories.push_back(
                  tree.nodes[tree.node_pos(ref.value)].category);
            rec.functions.push_back(tree.label_of(ref));
          }
          rec.tags = arg.binding.tags;
          out.push_back(std::move(rec));
        }
      }
    }
  };
  scan(*set.a);
  scan(*set.b);
  std::sort(out.begin(), out.end(),
            [](const RealisationRecord& x, const RealisationRecord& y) {
              return std::tuple(x.lang, x.sid, id_number(x.pid),
                                id_number(x.aid)) <
                     std::tuple(y.lang, y.sid, id_number(y.pid),
                                id_number(y.aid));
            });
  return out;
}

// ---------------------------------------------------------------------------
// Frame summaries

struct FrameSummary {
  std::string name;
  int dis = 1;
  std::string cls;
  std::set<std::string> roles;
  std::map<int, int> arg_count_dist;  // #arguments -> #structures
};

// One summary per (name, dis) of `group` in the store for `lang`, ordered by
// (name, dis). Unknown language or group yields an empty list.
inline std::vector<FrameSummary> frames(const ParallelSet& set,
                                        const std::string& lang,
                                        const std::string& group) {
  const TreebankStore* store = set.store_for(lang);
  std::vector<FrameSummary> out;
  if (!store) return out;

  std::map<std::pair<std::string, int>, FrameSummary> acc;
  for (std::size_t i = 0; i < store->trees.size(); ++i) {
    for (const PredArgStructure& s : store->annotations[i]) {
      if (s.predicate.group != group) continue;
      auto& fs = acc[{s.predicate.name, s.predicate.dis}];
      fs.name = s.predicate.name;
      fs.dis = s.predicate.dis;
      fs.cls = s.predicate.cls;
      for (const Argument& a : s.arguments) fs.roles.insert(a.role);
      fs.arg_count_dist[static_cast<int>(s.arguments.size())] += 1;
    }
  }
  for (auto& [key, fs] : acc) out.push_back(std::move(fs));
  return out;
}

// ---------------------------------------------------------------------------
// Alignment-tag search

struct AlignTagHit {
  enum class Level { Predicate, Argument };
  SentencePair pair;
  std::string pid_a;
  std::string pid_b;
  Level level = Level::Predicate;
  std::string role_a;  // argument-level hits only
  std::string role_b;
};

// All predicate and argument alignments carrying `tag`, in store order.
inline std::vector<AlignTagHit> find_by_align_tag(const ParallelSet& set,
                                                  const std::string& tag) {
  std::vector<AlignTagHit> out;
  for (const PairBlock& block : set.alignment) {
    for (const PredicateAlignment& pa : block.aligns) {
      if (pa.has_tag(tag))
        out.push_back({block.pair, pa.pid_a, pa.pid_b,
                       AlignTagHit::Level::Predicate, "", ""});
      for (const ArgAlignment& aa : pa.args)
        if (aa.has_tag(tag))
          out.push_back({block.pair, pa.pid_a, pa.pid_b,
                         AlignTagHit::Level::Argument, aa.role_a, aa.role_b});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Translation graph and predicate clusters

struct PredKey {
  std::string lang;
  std::string name;
  int dis = 1;

  std::string str() const { return lang + ":" + name + "." + std::to_string(dis); }
  auto operator<=>(const PredKey&) const = default;
};

struct RoleKey {
  PredKey pred;
  std::string role;

  std::string str() const { return pred.str() + ":" + role; }
  auto operator<=>(const RoleKey&) const = default;
};

struct RoleEdgeData {
  int count = 0;
  std::map<std::string, int> tags;  // tag multiset over contributing links
};

struct TranslationGraph {
  std::set<PredKey> vertices;  // predicates of both stores
  std::map<std::pair<PredKey, PredKey>, int> edges;
  std::map<std::pair<RoleKey, RoleKey>, RoleEdgeData> role_edges;
};

// Aggregates alignment counts over the set. Predicate alignments carrying an
// excluded tag are skipped together with their argument links; an argument
// link carrying an excluded tag is skipped alone.
inline TranslationGraph build_graph(
    const ParallelSet& set, const std::set<std::string>& exclude_align_tags = {}) {
  TranslationGraph g;
  for (const auto& [key, entry] : set.a->lexicon)
    g.vertices.insert({set.a->lang, entry.name, entry.dis});
  for (const auto& [key, entry] : set.b->lexicon)
    g.vertices.insert({set.b->lang, entry.name, entry.dis});

  for (const PairBlock& block : set.alignment) {
    const std::string& doc = block.pair.document;
    int num = block.pair.sentence_number;
    const SentenceTree* ta = set.a->find_origin(doc, num);
    const SentenceTree* tb = set.b->find_origin(doc, num);
    if (!ta || !tb) continue;
    std::size_t idx_a = set.a->index_of_origin(doc, num);
    std::size_t idx_b = set.b->index_of_origin(doc, num);
    for (const PredicateAlignment& pa : block.aligns) {
      if (detail::intersects_tagset(pa.tags, exclude_align_tags)) continue;
      const PredArgStructure* sa = set.a->find_structure(idx_a, pa.pid_a);
      const PredArgStructure* sb = set.b->find_structure(idx_b, pa.pid_b);
      if (!sa || !sb) continue;
      PredKey ka{set.a->lang, sa->predicate.name, sa->predicate.dis};
      PredKey kb{set.b->lang, sb->predicate.name, sb->predicate.dis};
      g.edges[{ka, kb}] += 1;
      for (const ArgAlignment& aa : pa.args) {
        if (detail::intersects_tagset(aa.tags, exclude_align_tags)) continue;
        const Argument* arg_a = sa->find_argument(aa.aid_a);
        const Argument* arg_b = sb->find_argument(aa.aid_b);
        if (!arg_a || !arg_b) continue;
        auto& edge = g.role_edges[{RoleKey{ka, arg_a->role},
                                   RoleKey{kb, arg_b->role}}];
        edge.count += 1;
        for (const std::string& t : aa.tags) edge.tags[t] += 1;
      }
    }
  }
  return g;
}

struct PredicateCluster {
  std::vector<PredKey> members;                  // sorted
  std::vector<std::vector<RoleKey>> role_classes;  // each sorted
};

namespace detail {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t x, std::size_t y) { parent_[find(x)] = find(y); }

private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

// Connected components of the predicate graph restricted to edges with count
// >= min_count; singleton components are dropped. Within each cluster the
// role classes are the components of the above-threshold role edges.
inline std::vector<PredicateCluster> derive_clusters(
    const TranslationGraph& graph, int min_count = 1) {
  if (min_count < 1) throw Error("min_count must be positive");

  std::vector<PredKey> verts(graph.vertices.begin(), graph.vertices.end());
  std::map<PredKey, std::size_t> index;
  for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = i;

  detail::UnionFind uf(verts.size());
  for (const auto& [pair, count] : graph.edges) {
    if (count < min_count) continue;
    auto a = index.find(pair.first);
    auto b = index.find(pair.second);
    if (a == index.end() || b == index.end()) continue;
    uf.unite(a->second, b->second);
  }

  std::map<std::size_t, std::vector<PredKey>> components;
  for (std::size_t i = 0; i < verts.size(); ++i)
    components[uf.find(i)].push_back(verts[i]);

  std::vector<PredicateCluster> out;
  std::map<std::size_t, std::size_t> cluster_of_root;
  for (auto& [root, members] : components) {
    if (members.size() < 2) continue;
    PredicateCluster c;
    c.members = std::move(members);  // already sorted: verts is sorted
    cluster_of_root[root] = out.size();
    out.push_back(std::move(c));
  }

  // Role classes: components over role edges whose predicate endpoints fall
  // into the same (kept) cluster.
  std::vector<RoleKey> role_nodes;
  std::map<RoleKey, std::size_t> role_index;
  std::vector<std::pair<std::size_t, std::size_t>> role_links;
  for (const auto& [pair, data] : graph.role_edges) {
    if (data.count < min_count) continue;
    auto a = index.find(pair.first.pred);
    auto b = index.find(pair.second.pred);
    if (a == index.end() || b == index.end()) continue;
    std::size_t ra = uf.find(a->second), rb = uf.find(b->second);
    if (ra != rb || !cluster_of_root.count(ra)) continue;
    for (const RoleKey& rk : {pair.first, pair.second})
      if (!role_index.count(rk)) {
        role_index[rk] = role_nodes.size();
        role_nodes.push_back(rk);
      }
    role_links.push_back({role_index[pair.first], role_index[pair.second]});
  }
  detail::UnionFind ruf(role_nodes.size());
  for (auto [x, y] : role_links) ruf.unite(x, y);
  std::map<std::size_t, std::vector<RoleKey>> role_components;
  for (std::size_t i = 0; i < role_nodes.size(); ++i)
    role_components[ruf.find(i)].push_back(role_nodes[i]);
  for (auto& [root, members] : role_components) {
    std::sort(members.begin(), members.end());
    std::size_t pred_root = uf.find(index.at(members.front().pred));
    out[cluster_of_root.at(pred_root)].role_classes.push_back(
        std::move(members));
  }

  for (PredicateCluster& c : out)
    std::sort(c.role_classes.begin(), c.role_classes.end());
  std::sort(out.begin(), out.end(),
            [](const PredicateCluster& x, const PredicateCluster& y) {
              return x.members.front() < y.members.front();
            });
  return out;
}

// ---------------------------------------------------------------------------
// Dangling report

struct DanglingPredicate {
  std::string lang;
  int sid = 0;
  std::string pid;
  std::string name;
};

struct DanglingArgument {
  std::string document;
  int sentence_number = 0;
  std::string lang;
  std::string pid;
  std::string aid;
  std::string role;
  std::string other_pid;  // counterpart of the predicate alignment
};

struct DanglingReport {
  std::vector<DanglingPredicate> predicates;
  std::vector<DanglingArgument> arguments;
};

// Structures that participate in no predicate alignment, sorted by
// (lang, sid, pid); plus, per aligned structure pair, the arguments on
// either side without an argument alignment.
inline DanglingReport dangling_report(const ParallelSet& set) {
  DanglingReport report;
  std::set<std::tuple<std::string, std::string, int, std::string>> aligned;

  for (const PairBlock& block : set.alignment) {
    const std::string& doc = block.pair.document;
    int num = block.pair.sentence_number;
    const SentenceTree* ta = set.a->find_origin(doc, num);
    const SentenceTree* tb = set.b->find_origin(doc, num);
    if (!ta || !tb) continue;
    std::size_t idx_a = set.a->index_of_origin(doc, num);
    std::size_t idx_b = set.b->index_of_origin(doc, num);
    for (const PredicateAlignment& pa : block.aligns) {
      const PredArgStructure* sa = set.a->find_structure(idx_a, pa.pid_a);
      const PredArgStructure* sb = set.b->find_structure(idx_b, pa.pid_b);
      if (!sa || !sb) continue;
      aligned.insert({set.a->lang, doc, num, pa.pid_a});
      aligned.insert({set.b->lang, doc, num, pa.pid_b});

      std::set<std::string> linked_a, linked_b;
      for (const ArgAlignment& aa : pa.args) {
        linked_a.insert(aa.aid_a);
        linked_b.insert(aa.aid_b);
      }
      for (const Argument& arg : sa->arguments)
        if (!linked_a.count(arg.aid))
          report.arguments.push_back({doc, num, set.a->lang, pa.pid_a,
                                      arg.aid, arg.role, pa.pid_b});
      for (const Argument& arg : sb->arguments)
        if (!linked_b.count(arg.aid))
          report.arguments.push_back({doc, num, set.b->lang, pa.pid_b,
                                      arg.aid, arg.role, pa.pid_a});
    }
  }

  auto scan = [&](const TreebankStore& store) {
    for (std::size_t i = 0; i < store.trees.size(); ++i) {
      const SentenceTree& tree = store.trees[i];
      for (const PredArgStructure& s : store.annotations[i])
        if (!aligned.count({store.lang, tree.origin.document,
                            tree.origin.sentence_number, s.pid}))
          report.predicates.push_back(
              {store.lang, tree.sid, s.pid, s.predicate.name});
    }
  };
  scan(*set.a);
  scan(*set.b);

  std::sort(report.predicates.begin(), report.predicates.end(),
            [](const DanglingPredicate& x, const DanglingPredicate& y) {
              return std::tuple(x.lang, x.sid, id_number(x.pid)) <
                     std::tuple(y.lang, y.sid, id_number(y.pid));
            });
  std::sort(report.arguments.begin(), report.arguments.end(),
            [](const DanglingArgument& x, const DanglingArgument& y) {
              return std::tuple(x.document, x.sentence_number, x.lang,
                                id_number(x.pid), id_number(x.aid)) <
                     std::tuple(y.document, y.sentence_number, y.lang,
                                id_number(y.pid), id_number(y.aid));
            });
  return report;
}

// ---------------------------------------------------------------------------
// Statistics

struct LangStats {
  std::string lang;
  int sentences = 0;
  int tokens = 0;
  int structures = 0;
  int arguments = 0;
  int bindings_with_exclusions = 0;
  int dangling_structures = 0;
  int dangling_arguments = 0;
};

struct StatsReport {
  LangStats a, b;
  int pairs = 0;
  int predicate_alignments = 0;
  int argument_alignments = 0;
  std::map<std::string, int> predicate_align_tags;
  std::map<std::string, int> argument_align_tags;
};

inline StatsReport stats(const ParallelSet& set) {
  StatsReport r;
  auto count_store = [](const TreebankStore& store, LangStats& ls) {
    ls.lang = store.lang;
    ls.sentences = static_cast<int>(store.trees.size());
    for (const SentenceTree& t : store.trees)
      ls.tokens += static_cast<int>(t.tokens.size());
    for (const auto& sentence : store.annotations) {
      ls.structures += static_cast<int>(sentence.size());
      for (const PredArgStructure& s : sentence) {
        ls.arguments += static_cast<int>(s.arguments.size());
        if (!s.pbinding.excluded.empty()) ++ls.bindings_with_exclusions;
        for (const Argument& a : s.arguments)
          if (!a.binding.excluded.empty()) ++ls.bindings_with_exclusions;
      }
    }
  };
  count_store(*set.a, r.a);
  count_store(*set.b, r.b);
  r.pairs = static_cast<int>(set.pair_registry.size());
  for (const PairBlock& block : set.alignment)
    for (const PredicateAlignment& pa : block.aligns) {
      ++r.predicate_alignments;
      for (const std::string& t : pa.tags) r.predicate_align_tags[t] += 1;
      for (const ArgAlignment& aa : pa.args) {
        ++r.argument_alignments;
        for (const std::string& t : aa.tags) r.argument_align_tags[t] += 1;
      }
    }
  DanglingReport dangling = dangling_report(set);
  for (const DanglingPredicate& p : dangling.predicates) {
    if (p.lang == r.a.lang) ++r.a.dangling_structures;
    if (p.lang == r.b.lang) ++r.b.dangling_structures;
  }
  for (const DanglingArgument& arg : dangling.arguments) {
    if (arg.lang == r.a.lang) ++r.a.dangling_arguments;
    if (arg.lang == r.b.lang) ++r.b.dangling_arguments;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string render_span(const std::vector<std::size_t>& span) {
  if (span.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < span.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(span[i]);
  }
  return out;
}

inline std::string render_list(const std::vector<std::string>& items) {
  return items.empty() ? "-" : join(items, ',');
}

}  // namespace detail

enum class ReportFormat { Tsv, Text };

inline void write_realisations(std::ostream& os,
                               const std::vector<RealisationRecord>& records,
                               ReportFormat format) {
  for (const RealisationRecord& r : records) {
    std::vector<std::string> refs;
    for (const NodeRef& n : r.nodes) refs.push_back(n.str());
    if (format == ReportFormat::Tsv) {
      os << r.lang << '\t' << r.sid << '\t' << r.pid << '\t' << r.pred_name
         << '\t' << r.pred_class << '\t' << r.role << '\t'
         << detail::render_span(r.span) << '\t' << detail::render_list(refs)
         << '\t' << detail::render_list(r.categories) << '\t'
         << detail::render_list(r.functions) << '\t'
         << detail::render_list(r.tags) << '\n';
    } else {
      os << r.lang << " sid=" << r.sid << ' ' << r.pid << ' ' << r.pred_name
         << '/' << r.pred_class << " role=" << r.role
         << " span=" << detail::render_span(r.span)
         << " nodes=" << detail::render_list(refs)
         << " cats=" << detail::render_list(r.categories)
         << " funcs=" << detail::render_list(r.functions)
         << " tags=" << detail::render_list(r.tags) << '\n';
    }
  }
}

inline void write_frames(std::ostream& os,
                         const std::vector<FrameSummary>& summaries,
                         ReportFormat format) {
  for (const FrameSummary& f : summaries) {
    std::vector<std::string> roles(f.roles.begin(), f.roles.end());
    std::string dist;
    for (const auto& [n, count] : f.arg_count_dist) {
      if (!dist.empty()) dist.push_back(',');
      dist += std::to_string(n) + ":" + std::to_string(count);
    }
    if (dist.empty()) dist = "-";
    if (format == ReportFormat::Tsv)
      os << f.name << '\t' << f.dis << '\t' << f.cls << '\t'
         << detail::render_list(roles) << '\t' << dist << '\n';
    else
      os << f.name << '.' << f.dis << " class=" << f.cls
         << " roles=" << detail::render_list(roles) << " args={" << dist
         << "}\n";
  }
}

inline void write_align_hits(std::ostream& os,
                             const std::vector<AlignTagHit>& hits,
                             ReportFormat format) {
  for (const AlignTagHit& h : hits) {
    const char* level =
        h.level == AlignTagHit::Level::Predicate ? "predicate" : "argument";
    if (format == ReportFormat::Tsv)
      os << h.pair.str() << '\t' << h.pid_a << '\t' << h.pid_b << '\t'
         << level << '\t' << (h.role_a.empty() ? "-" : h.role_a) << '\t'
         << (h.role_b.empty() ? "-" : h.role_b) << '\n';
    else {
      os << h.pair.str() << ' ' << level << ' ' << h.pid_a << "<->"
         << h.pid_b;
      if (h.level == AlignTagHit::Level::Argument)
        os << ' ' << h.role_a << "<->" << h.role_b;
      os << '\n';
    }
  }
}

inline void write_clusters(std::ostream& os,
                           const std::vector<PredicateCluster>& clusters,
                           ReportFormat format) {
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const PredicateCluster& c = clusters[i];
    std::vector<std::string> members;
    for (const PredKey& k : c.members) members.push_back(k.str());
    if (format == ReportFormat::Tsv)
      os << "cluster\t" << (i + 1) << '\t' << detail::join(members, ',')
         << '\n';
    else
      os << "cluster " << (i + 1) << ": " << detail::join(members, ' ')
         << '\n';
    for (std::size_t j = 0; j < c.role_classes.size(); ++j) {
      std::vector<std::string> roles;
      for (const RoleKey& rk : c.role_classes[j]) roles.push_back(rk.str());
      if (format == ReportFormat::Tsv)
        os << "roleclass\t" << (i + 1) << '.' << (j + 1) << '\t'
           << detail::join(roles, ',') << '\n';
      else
        os << "  roles " << (i + 1) << '.' << (j + 1) << ": "
           << detail::join(roles, ' ') << '\n';
    }
  }
}

inline void write_stats(std::ostream& os, const StatsReport& r,
                        ReportFormat format) {
  auto row = [&](const std::string& metric, const std::string& scope,
                 int value) {
    if (format == ReportFormat::Tsv)
      os << metric << '\t' << scope << '\t' << value << '\n';
    else
      os << metric << ' ' << scope << '=' << value << '\n';
  };
  auto per_lang = [&](const std::string& metric, int va, int vb) {
    row(metric, r.a.lang.empty() ? "a" : r.a.lang, va);
    row(metric, r.b.lang.empty() ? "b" : r.b.lang, vb);
    row(metric, "total", va + vb);
  };
  per_lang("sentences", r.a.sentences, r.b.sentences);
  per_lang("tokens", r.a.tokens, r.b.tokens);
  per_lang("structures", r.a.structures, r.b.structures);
  per_lang("arguments", r.a.arguments, r.b.arguments);
  per_lang("bindings_with_exclusions", r.a.bindings_with_exclusions,
           r.b.bindings_with_exclusions);
  per_lang("dangling_structures", r.a.dangling_structures,
           r.b.dangling_structures);
  per_lang("dangling_arguments", r.a.dangling_arguments,
           r.b.dangling_arguments);
  row("pairs", "total", r.pairs);
  row("predicate_alignments", "total", r.predicate_alignments);
  row("argument_alignments", "total", r.argument_alignments);
  for (const auto& [tag, count] : r.predicate_align_tags)
    row("predicate_alignments_tagged", tag, count);
  for (const auto& [tag, count] : r.argument_align_tags)
    row("argument_alignments_tagged", tag, count);
}

inline void write_dangling(std::ostream& os, const DanglingReport& report,
                           ReportFormat format) {
  for (const DanglingPredicate& p : report.predicates) {
    if (format == ReportFormat::Tsv)
      os << "predicate\t" << p.lang << '\t' << p.sid << '\t' << p.pid << '\t'
         << p.name << '\n';
    else
      os << "dangling predicate " << p.lang << " sid=" << p.sid << ' '
         << p.pid << ' ' << p.name << '\n';
  }
  for (const DanglingArgument& a : report.arguments) {
    if (format == ReportFormat::Tsv)
      os << "argument\t" << a.lang << '\t' << a.document << ':'
         << a.sentence_number << '\t' << a.pid << '\t' << a.aid << '\t'
         << a.role << '\t' << a.other_pid << '\n';
    else
      os << "dangling argument " << a.lang << ' ' << a.document << ':'
         << a.sentence_number << ' ' << a.pid << '.' << a.aid << " role="
         << a.role << " (aligned with " << a.other_pid << ")\n";
  }
}

}  // namespace fuse
