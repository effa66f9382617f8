#pragma once

// Shared test plumbing: fixture locations, file helpers and subprocess
// invocation of the fusekit binary.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef FUSE_FIXTURES_DIR
#define FUSE_FIXTURES_DIR "tests/fixtures"
#endif
#ifndef FUSEKIT_BIN_PATH
#define FUSEKIT_BIN_PATH "fusekit"
#endif

namespace testsupport {

inline std::filesystem::path fixtures_dir() { return FUSE_FIXTURES_DIR; }

inline std::filesystem::path fixture(const std::string& set,
                                     const std::string& file = "") {
  auto p = fixtures_dir() / set;
  return file.empty() ? p : p / file;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline std::filesystem::path fresh_temp_dir(const std::string& hint) {
  static int counter = 0;
  auto dir = std::filesystem::temp_directory_path() /
             ("fusekit-test-" + hint + "-" + std::to_string(getpid()) + "-" +
              std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

inline void copy_fixture(const std::string& set,
                         const std::filesystem::path& dest) {
  std::filesystem::create_directories(dest);
  std::filesystem::copy(fixture(set), dest,
                        std::filesystem::copy_options::recursive |
                            std::filesystem::copy_options::overwrite_existing);
}

struct CmdResult {
  int status = -1;
  std::string out;
  std::string err;
};

// Runs the fusekit binary with the given argument string; stdout and stderr
// are captured separately. `env_prefix` may hold KEY=value assignments.
inline CmdResult run_fusekit(const std::string& args,
                             const std::string& env_prefix = "") {
  auto dir = fresh_temp_dir("cmd");
  auto out_path = dir / "out";
  auto err_path = dir / "err";
  std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") +
                    std::string(FUSEKIT_BIN_PATH) + " " + args + " >" +
                    out_path.string() + " 2>" + err_path.string();
  int rc = std::system(cmd.c_str());
  CmdResult result;
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  std::filesystem::remove_all(dir);
  return result;
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace testsupport
