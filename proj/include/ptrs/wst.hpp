#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ptrs/rewriting.hpp"
#include "ptrs/term.hpp"

namespace ptrs {

struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct RawAlternative {
  std::uint64_t weight = 1;
  Term rhs;
};

/// A rule as written: `l -> r` is sugar for a single alternative of
/// weight 1 (`weighted` is false in that case).
struct RawRule {
  Term lhs;
  std::vector<RawAlternative> alternatives;
  bool weighted = false;
  SourceLocation location;
};

struct ProblemFile {
  std::set<std::string> variables;
  std::vector<RawRule> rules;
  Signature signature;
};

/// Parses the WST format extended with `l -> w1 : r1 || ... || wn : rn`.
/// Lines starting with `;` are comments. Errors carry `line:column`.
ProblemFile parse_problem(std::string_view input);
ProblemFile read_problem_file(const std::string& path);

/// Canonical text form; `parse_problem(render_problem(p))` renders back to
/// the same text.
std::string render_problem(const ProblemFile& problem);

/// Normalizes weights to probabilities w_j / sum w and merges identical
/// right-hand sides.
Ptrs elaborate(const ProblemFile& problem);

/// Parses a single term; identifiers in `variables` become variables.
Term parse_term(std::string_view text, const std::set<std::string>& variables = {});

}  // namespace ptrs
