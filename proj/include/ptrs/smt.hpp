#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ptrs/interpretation.hpp"
#include "ptrs/poly.hpp"
#include "ptrs/rewriting.hpp"

namespace ptrs {

/// Interpretation template searched by the prover.
struct Shape {
  enum class Kind { PolyLinear, PolyMultilinear, Matrix };
  Kind kind = Kind::PolyLinear;
  /// Multilinear degree cap (poly) or vector dimension (matrix).
  std::size_t parameter = 1;

  /// `poly-linear`, `poly-multilinear-2`, `matrix-1` .. `matrix-4`.
  static Shape parse(std::string_view name);
  std::string name() const;

  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Non-negative integer unknown bounded above by `upper`.
struct Unknown {
  std::string name;
  Integer upper;
};

/// expression >= lower
struct Constraint {
  UnknownPoly expression;
  Integer lower;
  std::string origin;
};

using InterpretationTemplate = std::variant<PolyInterpretation<UnknownPoly>, MatrixInterpretation<UnknownPoly>>;

struct ConstraintSet {
  Shape shape;
  std::vector<Unknown> unknowns;
  std::vector<Constraint> constraints;
  bool nonlinear = false;
  InterpretationTemplate interpretation;
};

/// Orientation constraints w*[l] - sum_j w_j*[r_j] >= 0 coefficientwise,
/// with the constant (first component) >= 1, plus monotonicity witnesses.
/// Throws Error(DegreeOverflow) when the shape cannot express a rule.
ConstraintSet encode(const Ptrs& system, const Shape& shape, const Integer& bound);

/// Byte-stable SMT-LIB 2 script ending in (check-sat) (get-model).
std::string emit_smtlib(const ConstraintSet& cs);

using Assignment = std::map<std::string, Integer>;

/// Evaluates every constraint and bound under a total assignment.
bool satisfies(const ConstraintSet& cs, const Assignment& assignment);

struct SolverModel {
  Assignment assignment;
};

struct SolverResult {
  enum class Status { Sat, Unsat, Unknown, Error };
  Status status = Status::Unknown;
  SolverModel model;
  std::string diagnostic;
};

const char* to_string(SolverResult::Status s);

/// Parses solver output: a `sat`/`unsat`/`unknown` line followed, for sat,
/// by `(define-fun name () Int k)` entries.
SolverResult parse_solver_output(std::string_view output);

/// Runs `command` through /bin/sh, writes `script` to its standard input
/// and parses its standard output. On timeout or stop request the process
/// group is killed and reaped, and the result is Unknown.
SolverResult run_solver(const std::string& script, const std::string& command, std::chrono::milliseconds timeout,
                        std::stop_token stop = {});

/// Concrete interpretation from a model. Throws Error(IncompleteModel) if
/// an unknown is missing or out of bounds.
Interpretation decode(const ConstraintSet& cs, const SolverModel& model);

/// SMT-LIB symbol for an unknown name (quoted when not a simple symbol).
std::string smt_symbol(const std::string& name);

}  // namespace ptrs
