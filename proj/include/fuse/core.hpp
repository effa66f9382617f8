#pragma once

// Shared error types, diagnostics and vocabularies used across the library.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fuse {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public Error {
public:
  using Error::Error;
};

// Malformed input; carries the file name and 1-based line number.
class ParseError : public Error {
public:
  ParseError(std::string file, std::size_t line, const std::string& msg)
      : Error(file + ":" + std::to_string(line) + ": " + msg),
        file_(std::move(file)),
        line_(line) {}
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

private:
  std::string file_;
  std::size_t line_ = 0;
};

class InvariantError : public Error {
public:
  using Error::Error;
};

class UnknownNodeError : public Error {
public:
  using Error::Error;
};

class EmptyResolutionError : public Error {
public:
  using Error::Error;
};

enum class Severity { Warning, Error };

// One validator finding. `sid` is the sentence id (or the sentence number of
// a pair for alignment findings); unset fields render as "-".
struct Diagnostic {
  std::string rule;
  Severity severity = Severity::Error;
  std::string lang;
  int sid = 0;
  std::string pid;
  std::string aid;
  std::string detail;

  std::string str() const {
    std::ostringstream os;
    os << (severity == Severity::Error ? "error" : "warning") << ' ' << rule
       << ' ' << (lang.empty() ? "-" : lang) << ':' << sid << ' '
       << (pid.empty() ? "-" : pid);
    if (!aid.empty()) os << '.' << aid;
    if (!detail.empty()) os << ' ' << detail;
    return os.str();
  }
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Severity::Error) return true;
  return false;
}

// Thrown by strict loads when error-severity diagnostics are present.
class ValidationFailed : public Error {
public:
  explicit ValidationFailed(std::vector<Diagnostic> diags)
      : Error(describe(diags)), diagnostics_(std::move(diags)) {}
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
  static std::string describe(const std::vector<Diagnostic>& diags) {
    std::size_t n = 0;
    for (const auto& d : diags)
      if (d.severity == Severity::Error) ++n;
    std::string msg = "validation failed with " + std::to_string(n) +
                      " error diagnostic(s)";
    if (!diags.empty()) msg += "; first: " + diags.front().str();
    return msg;
  }
  std::vector<Diagnostic> diagnostics_;
};

struct VocabExtension {
  std::string kind;  // "class", "binding" or "align"
  std::string value;
};

// Predicate classes and tag inventories. Ships with the default sets; a
// manifest may extend them. Extensions keep their declaration order so that
// manifests serialize back byte-identically.
struct Vocab {
  std::set<std::string> classes{"V", "N", "A"};
  std::set<std::string> binding_tags{"pv", "oc", "oc-case"};
  std::set<std::string> align_tags{"incomp", "abs-opp"};
  std::vector<VocabExtension> extensions;

  void extend(const std::string& kind, const std::string& value) {
    if (kind == "class")
      classes.insert(value);
    else if (kind == "binding")
      binding_tags.insert(value);
    else if (kind == "align")
      align_tags.insert(value);
    else
      throw Error("unknown vocabulary kind: " + kind);
    extensions.push_back({kind, value});
  }
};

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

// Strict decimal parse: digits only, no sign, no leading zeros ("0" is fine).
inline std::optional<long long> parse_int(std::string_view s) {
  if (s.empty() || s.size() > 18) return std::nullopt;
  if (s.size() > 1 && s[0] == '0') return std::nullopt;
  long long v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

inline bool has_ascii_lower(std::string_view s) {
  for (char c : s)
    if (c >= 'a' && c <= 'z') return true;
  return false;
}

inline bool is_role_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

// Normalization used for near-miss detection between role names: case is
// folded and underscores/whitespace are dropped.
inline std::string role_fold(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == ' ' || c == '\t') continue;
    out.push_back(c >= 'a' && c <= 'z' ? char(c - 'a' + 'A') : c);
  }
  return out;
}

}  // namespace detail
}  // namespace fuse
