#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "ptrs/cli.hpp"
#include "ptrs/rational.hpp"
#include "ptrs/term.hpp"
#include "ptrs/wst.hpp"

namespace testing {

inline ptrs::Rational q(const char* text) { return ptrs::parse_rational(text); }

/// Terms over the variables x, y, z.
inline ptrs::Term T(const char* text) { return ptrs::parse_term(text, {"x", "y", "z"}); }

inline std::string source_path(const std::string& relative) { return std::string(PTRS_SOURCE_DIR) + "/" + relative; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream(path, std::ios::binary) << content;
}

inline std::string temp_path(const std::string& name) { return std::string(PTRS_BINARY_DIR) + "/tmp_" + name; }

/// Shell command running the fake solver with a canned reply.
inline std::string fake_solver(const std::string& reply_file, const std::string& extra = "") {
  return std::string("'") + PTRS_FAKE_SOLVER + "' '" + reply_file + "'" + (extra.empty() ? "" : " " + extra);
}

struct CliResult {
  int code = 0;
  std::string out, err;
};

inline CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ptrs");
  std::ostringstream out, err;
  CliResult r;
  r.code = ptrs::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace testing
