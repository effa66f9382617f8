// fusekit — command-line front end for the fuse-kit parallel treebank engine.
//
// Exit codes: 0 success, 1 validation diagnostics at error severity,
// 2 usage, parse or I/O failure. Diagnostics go to standard error, data to
// standard output.

#include <iostream>

#include "CLI11.hpp"
#include "fuse/fuse.hpp"

namespace {

struct SetArgs {
  std::string manifest;
  std::string set_name;
};

void add_set_options(CLI::App* cmd, SetArgs& args) {
  cmd->add_option("--manifest", args.manifest, "Path to the manifest file")
      ->envname("FUSE_MANIFEST");
  cmd->add_option("--set", args.set_name, "Name of the parallel set")
      ->required();
}

fuse::ParallelSet load(const SetArgs& args, fuse::Manifest& manifest_out) {
  if (args.manifest.empty())
    throw fuse::Error("no manifest given (use --manifest or FUSE_MANIFEST)");
  manifest_out = fuse::read_manifest(args.manifest);
  fuse::Loader loader(manifest_out);
  return loader.load(args.set_name);
}

std::set<std::string> tag_set(const std::vector<std::string>& values) {
  std::set<std::string> out;
  for (const std::string& v : values)
    for (const std::string& tag : fuse::detail::split(v, ','))
      if (!tag.empty()) out.insert(tag);
  return out;
}

fuse::ReportFormat parse_format(const std::string& format) {
  if (format == "tsv") return fuse::ReportFormat::Tsv;
  if (format == "text") return fuse::ReportFormat::Text;
  throw fuse::Error("unknown format '" + format + "' (expected tsv or text)");
}

void print_diagnostics(const std::vector<fuse::Diagnostic>& diags) {
  for (const fuse::Diagnostic& d : diags) std::cerr << d.str() << '\n';
}

int cmd_import(const SetArgs& args, bool strict) {
  fuse::Manifest manifest;
  fuse::ParallelSet set = load(args, manifest);
  auto diags = fuse::validate_set(set);
  print_diagnostics(diags);
  if (strict && fuse::has_errors(diags)) return 1;
  fuse::resave_set_files(set, manifest, *manifest.find(args.set_name));
  return 0;
}

int cmd_validate(const SetArgs& args) {
  fuse::Manifest manifest;
  fuse::ParallelSet set = load(args, manifest);
  auto diags = fuse::validate_set(set);
  print_diagnostics(diags);
  return fuse::has_errors(diags) ? 1 : 0;
}

int cmd_ingest(const std::string& src, const std::string& tgt,
               const std::string& doc, const std::string& lang_a,
               const std::string& lang_b, const std::string& out,
               bool force) {
  auto [a, b] = fuse::ingest_pairs(src, tgt, doc, lang_a, lang_b);
  fuse::write_ingested(out, doc, a, b, force);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuse-kit parallel treebank tool"};
  app.require_subcommand(1);

  // import
  SetArgs import_args;
  bool import_strict = false;
  CLI::App* import_cmd =
      app.add_subcommand("import", "Load a set and re-save canonical files");
  add_set_options(import_cmd, import_args);
  import_cmd->add_flag("--strict", import_strict,
                       "Fail on error-severity diagnostics");

  // validate
  SetArgs validate_args;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Run all validators over a set");
  add_set_options(validate_cmd, validate_args);

  // query
  SetArgs query_args;
  std::string query_format = "tsv";
  CLI::App* query_cmd = app.add_subcommand("query", "Query a loaded set");
  query_cmd->require_subcommand(1);
  query_cmd->fallthrough();
  add_set_options(query_cmd, query_args);
  query_cmd->add_option("--format", query_format, "Output format: tsv|text");

  std::string q_group, q_role, q_lang;
  std::vector<std::string> q_skip_tags, q_skip_pred_tags, q_exclude_align;
  CLI::App* realisations_cmd = query_cmd->add_subcommand(
      "realisations", "All realisations of a role within a predicate group");
  realisations_cmd->add_option("--group", q_group, "Predicate group")
      ->required();
  realisations_cmd->add_option("--role", q_role, "Argument role")->required();
  realisations_cmd->add_option("--lang", q_lang, "Restrict to one language");
  realisations_cmd->add_option("--skip-tags", q_skip_tags,
                               "Skip arguments whose binding carries a tag");
  realisations_cmd->add_option(
      "--skip-pred-tags", q_skip_pred_tags,
      "Skip structures whose predicate binding carries a tag");
  realisations_cmd->add_option(
      "--exclude-align-tags", q_exclude_align,
      "Skip elements aligned under one of these tags");

  std::string f_lang, f_group;
  CLI::App* frames_cmd = query_cmd->add_subcommand(
      "frames", "Per-predicate summaries of a group");
  frames_cmd->add_option("--lang", f_lang, "Language")->required();
  frames_cmd->add_option("--group", f_group, "Predicate group")->required();

  std::string t_tag;
  CLI::App* aligntag_cmd = query_cmd->add_subcommand(
      "aligntag", "Find alignments carrying a tag");
  aligntag_cmd->add_option("--tag", t_tag, "Alignment tag")->required();

  CLI::App* stats_cmd = query_cmd->add_subcommand("stats", "Corpus counts");

  // cluster
  SetArgs cluster_args;
  int min_count = 1;
  std::string cluster_format = "tsv";
  std::vector<std::string> cluster_exclude;
  CLI::App* cluster_cmd = app.add_subcommand(
      "cluster", "Derive predicate clusters from the alignment graph");
  add_set_options(cluster_cmd, cluster_args);
  cluster_cmd->add_option("--min-count", min_count,
                          "Minimum alignment count per edge");
  cluster_cmd->add_option("--exclude-align-tags", cluster_exclude,
                          "Ignore alignments carrying one of these tags");
  cluster_cmd->add_option("--format", cluster_format,
                          "Output format: tsv|text");

  // ingest
  std::string in_src, in_tgt, in_doc, in_lang_a, in_lang_b, in_out;
  bool in_force = false;
  CLI::App* ingest_cmd = app.add_subcommand(
      "ingest", "Build skeleton stores from line-aligned text");
  ingest_cmd->add_option("--src", in_src, "Language A text file")->required();
  ingest_cmd->add_option("--tgt", in_tgt, "Language B text file")->required();
  ingest_cmd->add_option("--doc", in_doc, "Document identifier")->required();
  ingest_cmd->add_option("--lang-a", in_lang_a, "Language A code")->required();
  ingest_cmd->add_option("--lang-b", in_lang_b, "Language B code")->required();
  ingest_cmd->add_option("--out", in_out, "Output directory")->required();
  ingest_cmd->add_flag("--force", in_force, "Overwrite existing output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (import_cmd->parsed()) return cmd_import(import_args, import_strict);
    if (validate_cmd->parsed()) return cmd_validate(validate_args);
    if (query_cmd->parsed()) {
      fuse::ReportFormat format = parse_format(query_format);
      fuse::Manifest manifest;
      fuse::ParallelSet set = load(query_args, manifest);
      if (realisations_cmd->parsed()) {
        fuse::RealisationFilter filter;
        if (!q_lang.empty()) filter.lang = q_lang;
        filter.skip_binding_tags = tag_set(q_skip_tags);
        filter.skip_pred_tags = tag_set(q_skip_pred_tags);
        filter.skip_align_tags = tag_set(q_exclude_align);
        fuse::write_realisations(
            std::cout, fuse::realisations(set, q_group, q_role, filter),
            format);
      } else if (frames_cmd->parsed()) {
        fuse::write_frames(std::cout, fuse::frames(set, f_lang, f_group),
                           format);
      } else if (aligntag_cmd->parsed()) {
        fuse::write_align_hits(std::cout, fuse::find_by_align_tag(set, t_tag),
                               format);
      } else if (stats_cmd->parsed()) {
        fuse::write_stats(std::cout, fuse::stats(set), format);
      }
      return 0;
    }
    if (cluster_cmd->parsed()) {
      if (min_count < 1) {
        std::cerr << "fusekit: --min-count must be positive\n";
        return 2;
      }
      fuse::ReportFormat format = parse_format(cluster_format);
      fuse::Manifest manifest;
      fuse::ParallelSet set = load(cluster_args, manifest);
      auto graph = fuse::build_graph(set, tag_set(cluster_exclude));
      fuse::write_clusters(std::cout, fuse::derive_clusters(graph, min_count),
                           format);
      return 0;
    }
    if (ingest_cmd->parsed())
      return cmd_ingest(in_src, in_tgt, in_doc, in_lang_a, in_lang_b, in_out,
                        in_force);
  } catch (const fuse::ValidationFailed& e) {
    print_diagnostics(e.diagnostics());
    return 1;
  } catch (const fuse::Error& e) {
    std::cerr << "fusekit: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
