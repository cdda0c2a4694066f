#include "ptrs/prover.hpp"

#include <fstream>
#include <mutex>
#include <stop_token>
#include <thread>

#include "ptrs/certificate_io.hpp"
#include "ptrs/error.hpp"

namespace ptrs {

std::vector<Shape> ProverConfig::default_shapes() {
  return {Shape::parse("poly-linear"), Shape::parse("poly-multilinear-2"), Shape::parse("matrix-2"),
          Shape::parse("matrix-3")};
}

const char* to_string(Verdict::Answer a) {
  switch (a) {
    case Verdict::Answer::Yes: return "YES";
    case Verdict::Answer::Maybe: return "MAYBE";
    case Verdict::Answer::Error: return "ERROR";
  }
  return "ERROR";
}

int exit_code(const Verdict& v) {
  switch (v.answer) {
    case Verdict::Answer::Yes: return 0;
    case Verdict::Answer::Maybe: return 1;
    case Verdict::Answer::Error: return 2;
  }
  return 2;
}

namespace {

std::string script_path(const std::string& base, const Shape& shape, bool several) {
  if (!several) return base;
  const auto slash = base.find_last_of('/');
  const auto dot = base.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return base + "." + shape.name();
  return base.substr(0, dot) + "." + shape.name() + base.substr(dot);
}

struct Attempt {
  ShapeOutcome outcome;
  std::optional<Certificate> certificate;
  /// Set when a sat model failed validation.
  std::optional<std::string> hard_error;
};

Attempt attempt_shape(const Ptrs& system, const Shape& shape, const ProverConfig& config, bool several,
                      std::stop_token stop) {
  Attempt a;
  a.outcome.shape = shape;
  ConstraintSet cs;
  try {
    cs = encode(system, shape, config.coefficient_bound);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegreeOverflow) throw;
    a.outcome.status = "degree-overflow";
    a.outcome.detail = e.what();
    return a;
  }
  const std::string script = emit_smtlib(cs);
  if (config.emit_smt) {
    const std::string path = script_path(*config.emit_smt, shape, several);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Usage, "cannot write '" + path + "'");
    out << script;
  }
  const SolverResult r = run_solver(script, config.solver, config.timeout, stop);
  switch (r.status) {
    case SolverResult::Status::Unsat:
      a.outcome.status = "unsat";
      return a;
    case SolverResult::Status::Unknown:
      a.outcome.status = r.diagnostic == "cancelled" ? "cancelled" : "unknown";
      a.outcome.detail = r.diagnostic;
      return a;
    case SolverResult::Status::Error:
      a.outcome.status = "solver-error";
      a.outcome.detail = r.diagnostic;
      return a;
    case SolverResult::Status::Sat:
      break;
  }
  Interpretation interp;
  try {
    interp = decode(cs, r.model);
  } catch (const Error& e) {
    a.outcome.status = "solver-error";
    a.outcome.detail = e.what();
    a.hard_error = std::string("model rejected: ") + e.what();
    return a;
  }
  CertificateCheck check = check_certificate(interp, system);
  if (!check.accepted) {
    a.outcome.status = "solver-error";
    std::string problems;
    for (const auto& p : check.problems) problems += "\n  " + p;
    a.outcome.detail = "decoded interpretation failed validation";
    a.hard_error = "decoded interpretation for shape " + shape.name() + " failed validation:" + problems +
                   "\n" + render_interpretation(interp);
    return a;
  }
  a.outcome.status = "yes";
  a.certificate = std::move(check.certificate);
  return a;
}

}  // namespace

Verdict prove(const Ptrs& system, const ProverConfig& config) {
  if (config.shapes.empty()) throw Error(ErrorCode::Usage, "no interpretation shapes enabled");
  const bool several = config.shapes.size() > 1;
  Verdict v;
  std::vector<Attempt> attempts(config.shapes.size());

  if (!config.parallel) {
    for (std::size_t i = 0; i < config.shapes.size(); ++i) {
      attempts[i] = attempt_shape(system, config.shapes[i], config, several, {});
      if (attempts[i].certificate || attempts[i].hard_error) {
        attempts.resize(i + 1);
        break;
      }
    }
  } else {
    std::stop_source cancel;
    std::mutex failure_mutex;
    std::optional<std::string> failure;
    {
      std::vector<std::jthread> workers;
      for (std::size_t i = 0; i < config.shapes.size(); ++i) {
        workers.emplace_back([&, i] {
          try {
            attempts[i] = attempt_shape(system, config.shapes[i], config, several, cancel.get_token());
          } catch (const std::exception& e) {
            std::lock_guard lock(failure_mutex);
            failure = e.what();
            attempts[i].outcome = {config.shapes[i], "solver-error", e.what()};
          }
          if (attempts[i].certificate || attempts[i].hard_error) cancel.request_stop();
        });
      }
    }
    if (failure && std::none_of(attempts.begin(), attempts.end(), [](const Attempt& a) { return a.certificate.has_value(); })) {
      v.answer = Verdict::Answer::Error;
      v.diagnostic = *failure;
    }
  }

  for (Attempt& a : attempts) {
    v.outcomes.push_back(a.outcome);
    if (a.hard_error && v.answer != Verdict::Answer::Error && !v.certificate) {
      v.answer = Verdict::Answer::Error;
      v.diagnostic = *a.hard_error;
    }
    if (a.certificate && !v.certificate && v.answer != Verdict::Answer::Error) {
      v.answer = Verdict::Answer::Yes;
      v.certificate = std::move(a.certificate);
      v.shape = a.outcome.shape;
    }
  }
  return v;
}

Verdict prove_file(const std::string& path, const ProverConfig& config) {
  try {
    return prove(elaborate(read_problem_file(path)), config);
  } catch (const Error& e) {
    Verdict v;
    v.answer = Verdict::Answer::Error;
    v.diagnostic = path + ":" + e.what();
    return v;
  }
}

Verdict check_only(const Ptrs& system, std::string_view interpretation_text) {
  Verdict v;
  Interpretation interp;
  try {
    interp = parse_interpretation(interpretation_text);
  } catch (const Error& e) {
    v.answer = Verdict::Answer::Error;
    v.diagnostic = e.what();
    return v;
  }
  CertificateCheck check;
  try {
    check = check_certificate(interp, system);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegreeOverflow) throw;
    v.problems.push_back(e.what());
    return v;
  }
  if (!check.accepted) {
    v.problems = std::move(check.problems);
    return v;
  }
  v.answer = Verdict::Answer::Yes;
  v.certificate = std::move(check.certificate);
  return v;
}

std::string render_verdict(const Verdict& v) {
  std::string out = std::string(to_string(v.answer)) + "\n";
  if (v.certificate) {
    out += "interpretation: " + shape_name(v.certificate->interpretation);
    if (v.shape) out += " (shape " + v.shape->name() + ")";
    out += "\n" + render_certificate(*v.certificate);
    return out;
  }
  for (const auto& p : v.problems) out += "problem: " + p + "\n";
  for (const auto& o : v.outcomes) {
    out += "shape " + o.shape.name() + ": " + o.status;
    if (!o.detail.empty()) out += " (" + o.detail + ")";
    out += "\n";
  }
  return out;
}

}  // namespace ptrs
