#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fuse/fuse.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/testutil.hpp"

using namespace fuse;
namespace ts = testsupport;

namespace {

ParallelSet load_fixture(const std::string& set) {
  return load_set(ts::fixture(set, "manifest.fuse"), set);
}

}  // namespace

TEST_CASE("realisations reproduce the category divergence") {
  ParallelSet set = load_fixture("nominate");
  auto records = realisations(set, "NOMINATE-G", "ENT_NOMINATED");
  REQUIRE(records.size() == 2);
  // sorted by language: de before en
  CHECK(records[0].lang == "de");
  CHECK(records[0].categories == std::vector<std::string>{"NP"});
  CHECK(records[0].functions == std::vector<std::string>{"AG"});
  CHECK(records[0].nodes == std::vector<NodeRef>{NodeRef::node(505)});
  CHECK(records[1].lang == "en");
  CHECK(records[1].categories == std::vector<std::string>{"NP"});
  CHECK(records[1].functions == std::vector<std::string>{"OD"});
  CHECK(records[1].nodes == std::vector<NodeRef>{NodeRef::node(508)});

  RealisationFilter only_en;
  only_en.lang = "en";
  CHECK(realisations(set, "NOMINATE-G", "ENT_NOMINATED", only_en).size() == 1);
  CHECK(realisations(set, "NO-SUCH-GROUP", "ENT_NOMINATED").empty());
}

TEST_CASE("binding-tag filters on the object-control fixture") {
  ParallelSet set = load_fixture("propose");

  CHECK(realisations(set, "PROPOSE-G", "PROPOSER").size() == 1);

  RealisationFilter skip_pred;
  skip_pred.skip_pred_tags = {"oc"};
  CHECK(realisations(set, "PROPOSE-G", "PROPOSER", skip_pred).empty());
  CHECK(realisations(set, "PROPOSE-G", "PROPOSAL", skip_pred).empty());

  RealisationFilter skip_arg;
  skip_arg.skip_binding_tags = {"oc-case"};
  CHECK(realisations(set, "PROPOSE-G", "PROPOSER", skip_arg).empty());
  CHECK(realisations(set, "PROPOSE-G", "PROPOSAL", skip_arg).size() == 1);
}

TEST_CASE("alignment-tag filters suppress aligned elements") {
  ParallelSet set = load_fixture("give");
  CHECK(realisations(set, "GIVE-G", "GIVER").size() == 1);

  RealisationFilter skip;
  skip.skip_align_tags = {"incomp"};
  CHECK(realisations(set, "GIVE-G", "GIVER", skip).empty());
  CHECK(realisations(set, "MITGEBEN-G", "MITGEBER", skip).empty());
  // untagged links are unaffected
  CHECK(realisations(set, "GIVE-G", "ENT_GIVEN", skip).size() == 1);

  ParallelSet absopp = load_fixture("absopp");
  RealisationFilter skip_opp;
  skip_opp.skip_align_tags = {"abs-opp"};
  CHECK(realisations(absopp, "INAPPLICABLE-G", "ENT_INAPPLICABLE").size() == 1);
  CHECK(realisations(absopp, "INAPPLICABLE-G", "ENT_INAPPLICABLE", skip_opp)
            .empty());
}

TEST_CASE("frames separate predicates by syntactic class") {
  const std::string ftb =
      "#BOS 1 d:1:en\n"
      "he\tPRP\tSB\t0\n"
      "nominates\tVBZ\tHD\t0\n"
      "her\tPRP\tOA\t0\n"
      "#EOS 1\n"
      "#BOS 2 d:2:en\n"
      "the\tDT\tNK\t500\n"
      "nomination\tNN\tNK\t500\n"
      "#500\tNP\tSB\t0\n"
      "#EOS 2\n";
  const std::string paa =
      "#SENT d:1:en\n"
      "PRED P1 name=NOMINATE dis=1 class=V group=NOMINATE-G\n"
      "PBIND P1 nodes=t1 excl=- tags=-\n"
      "ARG P1 A1 role=ENT_NOMINATED\n"
      "ABIND P1 A1 nodes=t2 excl=- tags=-\n"
      "ARG P1 A2 role=NOMINATOR\n"
      "ABIND P1 A2 nodes=t0 excl=- tags=-\n"
      "#END\n"
      "#SENT d:2:en\n"
      "PRED P1 name=NOMINATION dis=1 class=N group=NOMINATE-G\n"
      "PBIND P1 nodes=t1 excl=- tags=-\n"
      "ARG P1 A1 role=ENT_NOMINATED\n"
      "ABIND P1 A1 nodes=n500 excl=- tags=-\n"
      "#END\n";
  TreebankStore en;
  en.lang = "en";
  {
    std::istringstream in(ftb);
    for (SentenceTree& t : parse_treebank(in)) en.add_tree(std::move(t));
    std::istringstream pin(paa);
    parse_paa(pin, en, "<paa>");
  }
  TreebankStore de;
  de.lang = "de";
  {
    std::istringstream in(std::string("#BOS 1 d:1:de\nx\tX\t--\t0\n#EOS 1\n"
                                      "#BOS 2 d:2:de\ny\tX\t--\t0\n#EOS 2\n"));
    for (SentenceTree& t : parse_treebank(in)) de.add_tree(std::move(t));
  }
  ParallelSet set = ParallelSet::make("frames", std::move(en), std::move(de));

  auto summaries = frames(set, "en", "NOMINATE-G");
  REQUIRE(summaries.size() == 2);
  CHECK(summaries[0].name == "NOMINATE");
  CHECK(summaries[0].cls == "V");
  CHECK(summaries[0].roles ==
        std::set<std::string>{"ENT_NOMINATED", "NOMINATOR"});
  CHECK(summaries[1].name == "NOMINATION");
  CHECK(summaries[1].cls == "N");
  CHECK(summaries[1].roles == std::set<std::string>{"ENT_NOMINATED"});

  CHECK(frames(set, "en", "EMPTY-G").empty());
  CHECK(frames(set, "fr", "NOMINATE-G").empty());
}

TEST_CASE("frames report the argument count distribution") {
  ts::Rng rng(99);
  // one predicate in three sentences with 1, 2, 2 arguments
  std::string ftb, paa;
  for (int s = 1; s <= 3; ++s) {
    ftb += "#BOS " + std::to_string(s) + " d:" + std::to_string(s) + ":en\n";
    ftb += "a\tDT\tNK\t0\nb\tNN\tNK\t0\nc\tVB\tHD\t0\n";
    ftb += "#EOS " + std::to_string(s) + "\n";
    paa += "#SENT d:" + std::to_string(s) + ":en\n";
    paa += "PRED P1 name=TEST dis=1 class=V group=TEST-G\n";
    paa += "PBIND P1 nodes=t2 excl=- tags=-\n";
    paa += "ARG P1 A1 role=AGENT\nABIND P1 A1 nodes=t0 excl=- tags=-\n";
    if (s > 1)
      paa += "ARG P1 A2 role=THEME\nABIND P1 A2 nodes=t1 excl=- tags=-\n";
    paa += "#END\n";
  }
  TreebankStore en;
  en.lang = "en";
  std::istringstream in(ftb);
  for (SentenceTree& t : parse_treebank(in)) en.add_tree(std::move(t));
  std::istringstream pin(paa);
  parse_paa(pin, en, "<paa>");

  TreebankStore de = ts::random_store(rng, "de", "d", 1, Vocab{});
  ParallelSet set = ParallelSet::make("dist", std::move(en), std::move(de));
  auto summaries = frames(set, "en", "TEST-G");
  REQUIRE(summaries.size() == 1);
  CHECK(summaries[0].arg_count_dist == std::map<int, int>{{1, 1}, {2, 2}});
}

TEST_CASE("alignment tag search") {
  ParallelSet give = load_fixture("give");
  auto hits = find_by_align_tag(give, "incomp");
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].level == AlignTagHit::Level::Argument);
  CHECK(hits[0].role_a == "GIVER");
  CHECK(hits[0].role_b == "MITGEBER");

  ParallelSet absopp = load_fixture("absopp");
  auto opp = find_by_align_tag(absopp, "abs-opp");
  REQUIRE(opp.size() == 1);
  CHECK(opp[0].level == AlignTagHit::Level::Predicate);

  // binding tags live in a different vocabulary; nothing matches
  CHECK(find_by_align_tag(give, "pv").empty());
}

TEST_CASE("translation graph over the cluster fixture") {
  ParallelSet set = load_fixture("buykaufen");
  TranslationGraph g = build_graph(set);
  CHECK(g.vertices.size() == 3);
  REQUIRE(g.edges.size() == 2);
  PredKey buy{"en", "BUY", 1}, purchase{"en", "PURCHASE", 1},
      kaufen{"de", "KAUFEN", 1};
  CHECK(g.edges.at({buy, kaufen}) == 2);
  CHECK(g.edges.at({purchase, kaufen}) == 1);
  CHECK(g.role_edges.size() == 4);

  // empty alignment store: vertices only
  ParallelSet raise = load_fixture("raise");
  TranslationGraph empty = build_graph(raise);
  CHECK(empty.vertices.size() == 1);
  CHECK(empty.edges.empty());

  // excluding incomp drops the role edge but keeps the predicate edge
  ParallelSet give = load_fixture("give");
  TranslationGraph filtered = build_graph(give, {"incomp"});
  CHECK(filtered.edges.size() == 1);
  CHECK(filtered.role_edges.size() == 2);
  for (const auto& [key, data] : filtered.role_edges)
    CHECK(key.first.role != "GIVER");
}

TEST_CASE("cluster derivation on the fixture graph") {
  ParallelSet set = load_fixture("buykaufen");
  TranslationGraph g = build_graph(set);

  auto clusters = derive_clusters(g, 1);
  REQUIRE(clusters.size() == 1);
  std::set<std::string> members;
  for (const PredKey& k : clusters[0].members) members.insert(k.name);
  CHECK(members == std::set<std::string>{"BUY", "PURCHASE", "KAUFEN"});
  REQUIRE(clusters[0].role_classes.size() == 2);
  std::set<std::set<std::string>> role_classes;
  for (const auto& cls : clusters[0].role_classes) {
    std::set<std::string> names;
    for (const RoleKey& rk : cls) names.insert(rk.role);
    role_classes.insert(names);
  }
  CHECK(role_classes.count({"BUYER", "PURCHASER", "KAEUFER"}) == 1);
  CHECK(role_classes.count({"ENT_BOUGHT", "ENT_PURCHASED", "GEKAUFTES"}) == 1);

  CHECK(derive_clusters(g, 2).size() == 1);  // BUY-KAUFEN stays
  CHECK(derive_clusters(g, 3).empty());
  CHECK_THROWS_AS(derive_clusters(g, 0), Error);
}

TEST_CASE("clusters match brute-force component enumeration") {
  ts::Rng rng(20200202);
  for (int trial = 0; trial < 60; ++trial) {
    int n_a = ts::rand_int(rng, 1, 100);
    int n_b = ts::rand_int(rng, 1, 100);
    TranslationGraph g;
    std::vector<PredKey> verts;
    for (int i = 0; i < n_a; ++i)
      verts.push_back({"en", "E" + std::to_string(i), 1});
    for (int i = 0; i < n_b; ++i)
      verts.push_back({"de", "D" + std::to_string(i), 1});
    for (const PredKey& v : verts) g.vertices.insert(v);

    int min_count = ts::rand_int(rng, 1, 3);
    int n_edges = ts::rand_int(rng, 0, 150);
    for (int e = 0; e < n_edges; ++e) {
      int a = ts::rand_int(rng, 0, n_a - 1);
      int b = ts::rand_int(rng, 0, n_b - 1);
      g.edges[{verts[a], verts[n_a + b]}] += 1;
    }

    // oracle over indices
    std::map<PredKey, std::size_t> index;
    for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = i;
    std::vector<std::pair<std::size_t, std::size_t>> strong;
    for (const auto& [key, count] : g.edges)
      if (count >= min_count)
        strong.push_back({index.at(key.first), index.at(key.second)});
    auto expected_all = ts::oracle_components(verts.size(), strong);
    std::set<std::vector<std::size_t>> expected;
    for (auto& comp : expected_all)
      if (comp.size() >= 2) expected.insert(comp);

    std::set<std::vector<std::size_t>> got;
    for (const PredicateCluster& c : derive_clusters(g, min_count)) {
      std::vector<std::size_t> comp;
      for (const PredKey& k : c.members) comp.push_back(index.at(k));
      std::sort(comp.begin(), comp.end());
      got.insert(comp);
    }
    CHECK(got == expected);
  }
}

TEST_CASE("role classes stay inside their cluster") {
  ts::Rng rng(606060);
  for (int trial = 0; trial < 40; ++trial) {
    ParallelSet set = ts::random_set(rng, "rc" + std::to_string(trial));
    TranslationGraph g = build_graph(set);
    for (const PredicateCluster& c : derive_clusters(g)) {
      std::set<PredKey> members(c.members.begin(), c.members.end());
      for (const auto& cls : c.role_classes)
        for (const RoleKey& rk : cls) CHECK(members.count(rk.pred) == 1);
    }
  }
}

TEST_CASE("stats over the fixtures") {
  StatsReport nominate = stats(load_fixture("nominate"));
  CHECK(nominate.pairs == 1);
  CHECK(nominate.a.structures + nominate.b.structures == 2);
  CHECK(nominate.a.arguments + nominate.b.arguments == 2);
  CHECK(nominate.predicate_alignments == 1);
  CHECK(nominate.argument_alignments == 1);
  CHECK(nominate.a.tokens == 11);
  CHECK(nominate.b.tokens == 10);

  StatsReport harmonise = stats(load_fixture("harmonise"));
  CHECK(harmonise.b.dangling_structures == 1);
  CHECK(harmonise.a.dangling_structures == 0);

  StatsReport raise = stats(load_fixture("raise"));
  CHECK(raise.a.bindings_with_exclusions == 1);

  StatsReport give = stats(load_fixture("give"));
  CHECK(give.argument_align_tags.at("incomp") == 1);

  // empty set: all zeros
  TreebankStore empty_en, empty_de;
  empty_en.lang = "en";
  empty_de.lang = "de";
  StatsReport empty = stats(
      ParallelSet::make("empty", std::move(empty_en), std::move(empty_de)));
  CHECK(empty.pairs == 0);
  CHECK(empty.a.sentences == 0);
  CHECK(empty.predicate_alignments == 0);
}

TEST_CASE("realisation spans agree with resolve_binding") {
  ts::Rng rng(181818);
  for (int trial = 0; trial < 20; ++trial) {
    ParallelSet set = ts::random_set(rng, "span" + std::to_string(trial));
    for (const std::string& group :
         {std::string("ALPHA-G"), std::string("BETA-G")}) {
      for (const std::string& role :
           {std::string("AGENT"), std::string("THEME")}) {
        for (const RealisationRecord& rec : realisations(set, group, role)) {
          const TreebankStore& store =
              rec.lang == set.a->lang ? *set.a : *set.b;
          std::size_t idx = store.by_sid.at(rec.sid);
          const PredArgStructure* s = store.find_structure(idx, rec.pid);
          REQUIRE(s != nullptr);
          const Argument* arg = s->find_argument(rec.aid);
          REQUIRE(arg != nullptr);
          CHECK(rec.span == resolved_span(arg->binding, store.trees[idx]));
        }
      }
    }
  }
}

TEST_CASE("enlarging a skip set never adds results") {
  ts::Rng rng(717171);
  const std::vector<std::string> groups{"ALPHA-G", "BETA-G", "GAMMA-G",
                                        "DELTA-G", "OMEGA-G"};
  const std::vector<std::string> roles{"AGENT", "THEME", "GOAL", "SOURCE"};
  const std::vector<std::string> btags{"pv", "oc", "oc-case"};
  const std::vector<std::string> atags{"incomp", "abs-opp"};

  int checked = 0;
  while (checked < 150) {
    ParallelSet set = ts::random_set(rng, "mono" + std::to_string(checked));
    for (int q = 0; q < 10; ++q, ++checked) {
      std::string group = ts::pick(rng, groups);
      std::string role = ts::pick(rng, roles);
      RealisationFilter filter;
      if (ts::chance(rng, 0.4))
        filter.skip_binding_tags.insert(ts::pick(rng, btags));
      if (ts::chance(rng, 0.4))
        filter.skip_pred_tags.insert(ts::pick(rng, btags));
      if (ts::chance(rng, 0.4))
        filter.skip_align_tags.insert(ts::pick(rng, atags));

      auto base = realisations(set, group, role, filter).size();
      RealisationFilter larger = filter;
      larger.skip_binding_tags.insert(ts::pick(rng, btags));
      larger.skip_pred_tags.insert(ts::pick(rng, btags));
      larger.skip_align_tags.insert(ts::pick(rng, atags));
      auto smaller = realisations(set, group, role, larger).size();
      CHECK(smaller <= base);
    }
  }
}

TEST_CASE("query output is deterministic") {
  ParallelSet set1 = load_fixture("buykaufen");
  ParallelSet set2 = load_fixture("buykaufen");
  std::ostringstream a, b;
  write_clusters(a, derive_clusters(build_graph(set1)), ReportFormat::Tsv);
  write_clusters(b, derive_clusters(build_graph(set2)), ReportFormat::Tsv);
  CHECK(a.str() == b.str());
  CHECK_FALSE(a.str().empty());

  std::ostringstream r1, r2;
  write_realisations(r1, realisations(set1, "BUY-G", "BUYER"),
                     ReportFormat::Tsv);
  write_realisations(r2, realisations(set2, "BUY-G", "BUYER"),
                     ReportFormat::Tsv);
  CHECK(r1.str() == r2.str());
}
