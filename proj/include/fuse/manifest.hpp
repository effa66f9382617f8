#pragma once

// The administrative manifest: declarations of parallel sets (two treebank
// stores plus one alignment store) and vocabulary extensions; loading,
// saving and sentence-pair ingestion.
//
// Manifest (UTF-8, LF; paths are relative to the manifest file):
//
//   SET <name> A=<lang>:<ftb>:<paa> B=<lang>:<ftb>:<paa> ALIGN=<aln>
//   VOCAB <class|binding|align> += <tag>
//
// Blank lines and lines starting with `#` are ignored on input and never
// written back. The canonical directory layout of a saved set is
// <dir>/<lang>.ftb, <dir>/<lang>.paa, <dir>/<langA>-<langB>.aln and
// <dir>/manifest.fuse.

#include <filesystem>
#include <fstream>

#include "fuse/store.hpp"
#include "fuse/validate.hpp"

namespace fuse {

struct SetDecl {
  std::string name;
  std::string lang_a, ftb_a, paa_a;
  std::string lang_b, ftb_b, paa_b;
  std::string aln;
};

struct Manifest {
  std::filesystem::path dir;
  std::vector<SetDecl> sets;
  Vocab vocab;

  const SetDecl* find(std::string_view name) const {
    for (const SetDecl& s : sets)
      if (s.name == name) return &s;
    return nullptr;
  }
};

inline Manifest parse_manifest(std::istream& in,
                               const std::filesystem::path& dir,
                               const std::string& file = "<stream>") {
  Manifest m;
  m.dir = dir;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = detail::split(line, ' ');
    for (const auto& f : fields)
      if (f.empty()) throw ParseError(file, lineno, "empty field");

    if (fields[0] == "SET") {
      if (fields.size() != 5)
        throw ParseError(file, lineno, "malformed SET line");
      SetDecl decl;
      decl.name = fields[1];
      if (m.find(decl.name))
        throw ParseError(file, lineno, "duplicate set name " + decl.name);
      auto parse_side = [&](const std::string& field, std::string_view key,
                            std::string& lang, std::string& ftb,
                            std::string& paa) {
        auto parts =
            detail::split(detail::expect_kv(field, key, file, lineno), ':');
        if (parts.size() != 3 || parts[0].empty() || parts[1].empty() ||
            parts[2].empty())
          throw ParseError(file, lineno,
                           "expected " + std::string(key) +
                               "=<lang>:<ftb>:<paa>");
        lang = parts[0];
        ftb = parts[1];
        paa = parts[2];
      };
      parse_side(fields[2], "A", decl.lang_a, decl.ftb_a, decl.paa_a);
      parse_side(fields[3], "B", decl.lang_b, decl.ftb_b, decl.paa_b);
      if (decl.lang_a == decl.lang_b)
        throw ParseError(file, lineno,
                         "a set requires two distinct languages");
      decl.aln = detail::expect_kv(fields[4], "ALIGN", file, lineno);
      if (decl.aln.empty()) throw ParseError(file, lineno, "empty ALIGN path");
      m.sets.push_back(std::move(decl));
      continue;
    }
    if (fields[0] == "VOCAB") {
      if (fields.size() != 4 || fields[2] != "+=")
        throw ParseError(file, lineno, "malformed VOCAB line");
      try {
        m.vocab.extend(fields[1], fields[3]);
      } catch (const Error& e) {
        throw ParseError(file, lineno, e.what());
      }
      continue;
    }
    throw ParseError(file, lineno, "unknown line type '" + fields[0] + "'");
  }
  return m;
}

inline Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  return parse_manifest(in, path.parent_path(), path.string());
}

enum class LoadMode { Lenient, Strict };

// Loads sets from one manifest. Stores named by identical paths are parsed
// once and shared read-only between sets.
class Loader {
public:
  explicit Loader(Manifest manifest) : manifest_(std::move(manifest)) {}

  const Manifest& manifest() const { return manifest_; }

  ParallelSet load(const std::string& set_name,
                   LoadMode mode = LoadMode::Lenient) {
    const SetDecl* decl = manifest_.find(set_name);
    if (!decl) throw Error("unknown set '" + set_name + "'");

    ParallelSet set;
    set.name = decl->name;
    set.vocab = manifest_.vocab;
    set.a = store_at(decl->lang_a, decl->ftb_a, decl->paa_a);
    set.b = store_at(decl->lang_b, decl->ftb_b, decl->paa_b);
    set.build_registry();

    auto aln_path = manifest_.dir / decl->aln;
    std::ifstream in(aln_path, std::ios::binary);
    if (!in) throw IoError("cannot open " + aln_path.string());
    parse_aln(in, set, aln_path.string());

    if (mode == LoadMode::Strict) {
      auto diags = validate_set(set);
      if (has_errors(diags)) throw ValidationFailed(std::move(diags));
    }
    return set;
  }

private:
  std::shared_ptr<const TreebankStore> store_at(const std::string& lang,
                                                const std::string& ftb,
                                                const std::string& paa) {
    auto ftb_path = manifest_.dir / ftb;
    auto paa_path = manifest_.dir / paa;
    std::string key = lang + '\x1f' + ftb_path.string() + '\x1f' +
                      paa_path.string();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    TreebankStore store;
    store.lang = lang;
    store.vocab = manifest_.vocab;
    {
      std::ifstream in(ftb_path, std::ios::binary);
      if (!in) throw IoError("cannot open " + ftb_path.string());
      for (SentenceTree& tree : parse_treebank(in, ftb_path.string()))
        store.add_tree(std::move(tree));
    }
    {
      std::ifstream in(paa_path, std::ios::binary);
      if (!in) throw IoError("cannot open " + paa_path.string());
      parse_paa(in, store, paa_path.string());
    }
    auto shared = std::make_shared<const TreebankStore>(std::move(store));
    cache_.emplace(std::move(key), shared);
    return shared;
  }

  Manifest manifest_;
  std::map<std::string, std::shared_ptr<const TreebankStore>> cache_;
};

inline ParallelSet load_set(const std::filesystem::path& manifest_path,
                            const std::string& set_name,
                            LoadMode mode = LoadMode::Lenient) {
  Loader loader(read_manifest(manifest_path));
  return loader.load(set_name, mode);
}

namespace detail {

inline std::string render_treebank(const TreebankStore& store) {
  std::ostringstream os;
  write_treebank(os, store.trees);
  return os.str();
}

inline std::string render_paa(const TreebankStore& store) {
  std::ostringstream os;
  write_paa(os, store);
  return os.str();
}

inline std::string render_aln(const ParallelSet& set) {
  std::ostringstream os;
  write_aln(os, set);
  return os.str();
}

inline std::string render_manifest(const ParallelSet& set) {
  std::ostringstream os;
  const std::string& la = set.a->lang;
  const std::string& lb = set.b->lang;
  os << "SET " << set.name << " A=" << la << ':' << la << ".ftb:" << la
     << ".paa B=" << lb << ':' << lb << ".ftb:" << lb << ".paa ALIGN=" << la
     << '-' << lb << ".aln\n";
  for (const VocabExtension& ext : set.vocab.extensions)
    os << "VOCAB " << ext.kind << " += " << ext.value << '\n';
  return os.str();
}

// Writes every file through a temporary name and renames at the end, so a
// failure leaves no partial files behind.
inline void write_files_atomically(
    const std::vector<std::pair<std::filesystem::path, std::string>>& files) {
  namespace fs = std::filesystem;
  std::vector<fs::path> temps;
  auto cleanup = [&temps]() {
    std::error_code ec;
    for (const fs::path& p : temps) fs::remove(p, ec);
  };
  try {
    for (const auto& [path, content] : files) {
      fs::path tmp = path;
      tmp += ".tmp";
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot write " + tmp.string());
      temps.push_back(tmp);
      out.write(content.data(),
                static_cast<std::streamsize>(content.size()));
      out.close();
      if (!out) throw IoError("write failed for " + tmp.string());
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      std::error_code ec;
      fs::rename(temps[i], files[i].first, ec);
      if (ec)
        throw IoError("cannot rename " + temps[i].string() + ": " +
                      ec.message());
    }
  } catch (...) {
    cleanup();
    throw;
  }
}

}  // namespace detail

// Writes the set in canonical form under `out_dir` using the canonical file
// names, including a single-set manifest.fuse.
inline void save_set(const ParallelSet& set,
                     const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " +
                        ec.message());

  const std::string& la = set.a->lang;
  const std::string& lb = set.b->lang;
  std::vector<std::pair<fs::path, std::string>> files;
  files.emplace_back(out_dir / (la + ".ftb"), detail::render_treebank(*set.a));
  files.emplace_back(out_dir / (lb + ".ftb"), detail::render_treebank(*set.b));
  files.emplace_back(out_dir / (la + ".paa"), detail::render_paa(*set.a));
  files.emplace_back(out_dir / (lb + ".paa"), detail::render_paa(*set.b));
  files.emplace_back(out_dir / (la + "-" + lb + ".aln"),
                     detail::render_aln(set));
  files.emplace_back(out_dir / "manifest.fuse", detail::render_manifest(set));
  detail::write_files_atomically(files);
}

// Rewrites the FTB/PAA/ALN files of a loaded set in canonical form at the
// paths its manifest declares. The manifest file itself is left untouched.
inline void resave_set_files(const ParallelSet& set, const Manifest& manifest,
                             const SetDecl& decl) {
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  files.emplace_back(manifest.dir / decl.ftb_a,
                     detail::render_treebank(*set.a));
  files.emplace_back(manifest.dir / decl.ftb_b,
                     detail::render_treebank(*set.b));
  files.emplace_back(manifest.dir / decl.paa_a, detail::render_paa(*set.a));
  files.emplace_back(manifest.dir / decl.paa_b, detail::render_paa(*set.b));
  files.emplace_back(manifest.dir / decl.aln, detail::render_aln(set));
  detail::write_files_atomically(files);
}

// Builds skeleton stores from two line-aligned plain-text files: one
// sentence per line, whitespace-tokenized, POS left blank. The sentence
// number is the 1-based line number.
inline std::pair<TreebankStore, TreebankStore> ingest_pairs(
    const std::filesystem::path& file_a, const std::filesystem::path& file_b,
    const std::string& document, const std::string& lang_a,
    const std::string& lang_b) {
  auto read_lines = [](const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
  };
  auto lines_a = read_lines(file_a);
  auto lines_b = read_lines(file_b);
  if (lines_a.size() != lines_b.size())
    throw Error("line count mismatch: " + file_a.string() + " has " +
                std::to_string(lines_a.size()) + " lines, " +
                file_b.string() + " has " + std::to_string(lines_b.size()));

  auto build = [&](const std::vector<std::string>& lines,
                   const std::string& lang, const std::string& file) {
    TreebankStore store;
    store.lang = lang;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      SentenceTree tree;
      tree.sid = static_cast<int>(i + 1);
      tree.origin = {document, static_cast<int>(i + 1), lang};
      std::istringstream ls(lines[i]);
      std::string form;
      while (ls >> form) {
        Token tok;
        tok.index = tree.tokens.size();
        tok.form = form;
        tok.pos = kNoLabel;
        tree.edges.push_back({NodeRef::token(tok.index), kNoLabel, kRoot});
        tree.tokens.push_back(std::move(tok));
      }
      if (tree.tokens.empty())
        throw ParseError(file, i + 1, "empty line");
      tree.finalize();
      store.add_tree(std::move(tree));
    }
    return store;
  };
  return {build(lines_a, lang_a, file_a.string()),
          build(lines_b, lang_b, file_b.string())};
}

// Writes the skeleton stores of an ingestion as a loadable set directory:
// FTB files, empty PAA and ALN files, and a manifest stub.
inline void write_ingested(const std::filesystem::path& out_dir,
                           const std::string& set_name,
                           const TreebankStore& a, const TreebankStore& b,
                           bool force = false) {
  namespace fs = std::filesystem;
  const std::string& la = a.lang;
  const std::string& lb = b.lang;

  std::vector<std::pair<fs::path, std::string>> files;
  files.emplace_back(out_dir / (la + ".ftb"), detail::render_treebank(a));
  files.emplace_back(out_dir / (lb + ".ftb"), detail::render_treebank(b));
  files.emplace_back(out_dir / (la + ".paa"), "");
  files.emplace_back(out_dir / (lb + ".paa"), "");
  files.emplace_back(out_dir / (la + "-" + lb + ".aln"), "");
  {
    std::ostringstream os;
    os << "SET " << set_name << " A=" << la << ':' << la << ".ftb:" << la
       << ".paa B=" << lb << ':' << lb << ".ftb:" << lb << ".paa ALIGN=" << la
       << '-' << lb << ".aln\n";
    files.emplace_back(out_dir / "manifest.fuse", os.str());
  }
  if (!force)
    for (const auto& [path, content] : files)
      if (fs::exists(path))
        throw IoError("output file exists: " + path.string() +
                      " (use --force to overwrite)");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " +
                        ec.message());
  detail::write_files_atomically(files);
}

}  // namespace fuse
