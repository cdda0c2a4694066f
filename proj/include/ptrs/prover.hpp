#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptrs/interpretation.hpp"
#include "ptrs/smt.hpp"
#include "ptrs/wst.hpp"

namespace ptrs {

struct ProverConfig {
  std::vector<Shape> shapes = default_shapes();
  std::string solver = "z3 -in";
  std::chrono::milliseconds timeout{20000};
  Integer coefficient_bound = 16;
  bool parallel = false;
  /// When set, each encoded script is written here (with `.<shape>`
  /// inserted before the extension if several shapes are tried).
  std::optional<std::string> emit_smt;

  static std::vector<Shape> default_shapes();
};

struct ShapeOutcome {
  Shape shape;
  /// `yes`, `unsat`, `unknown`, `degree-overflow`, `solver-error` or
  /// `cancelled`.
  std::string status;
  std::string detail;
};

struct Verdict {
  enum class Answer { Yes, Maybe, Error };
  Answer answer = Answer::Maybe;
  std::optional<Certificate> certificate;
  std::optional<Shape> shape;
  std::vector<ShapeOutcome> outcomes;
  /// Rules or witnesses that failed in check mode.
  std::vector<std::string> problems;
  std::string diagnostic;
};

const char* to_string(Verdict::Answer a);

/// Tries every shape of the portfolio; the first shape whose model decodes
/// to an interpretation accepted by check_certificate yields YES. A model
/// that fails validation is reported as an ERROR verdict.
Verdict prove(const Ptrs& system, const ProverConfig& config);

/// Parses and elaborates the file first; failures become ERROR verdicts.
Verdict prove_file(const std::string& path, const ProverConfig& config);

/// YES iff the given interpretation text is a valid certificate.
Verdict check_only(const Ptrs& system, std::string_view interpretation_text);

/// Exit status convention: 0 = YES, 1 = MAYBE, 2 = ERROR.
int exit_code(const Verdict& v);

/// First line `YES`/`MAYBE`/`ERROR`, then the certificate or the reasons.
std::string render_verdict(const Verdict& v);

}  // namespace ptrs
