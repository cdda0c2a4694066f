#include "ptrs/cli.hpp"

#include <chrono>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "ptrs/certificate_io.hpp"
#include "ptrs/error.hpp"
#include "ptrs/families.hpp"
#include "ptrs/prover.hpp"
#include "ptrs/report.hpp"

namespace ptrs {

namespace {

struct GlobalOptions {
  int verbosity = 0;
  bool color = false;
  bool json = false;
  std::string config;
};

struct ProveOptions {
  std::string file;
  std::string solver = "z3 -in";
  std::vector<std::string> shapes;
  std::int64_t coeff_bound = 16;
  double smt_timeout = 20.0;
  bool parallel = false;
  std::string emit_smt;
};

struct CheckOptions {
  std::string file;
  std::string certificate;
};

struct SimulateOptions {
  std::string file;
  std::string family;
  std::string p = "1/2";
  std::string start;
  std::size_t steps = 10;
  std::string mode = "outermost";
  std::uint64_t seed = 1;
  std::string cert;
  bool trace = false;
  bool collapse = false;
  std::int64_t truncate = -1;
  std::size_t node_budget = 1'000'000;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Usage, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string paint(const std::string& answer, bool color) {
  if (!color) return answer;
  const char* code = answer == "YES" ? "32" : answer == "MAYBE" ? "33" : "31";
  return std::string("\033[") + code + "m" + answer + "\033[0m";
}

int emit_verdict(const Verdict& v, const std::string& command, const GlobalOptions& g, std::ostream& out,
                 std::ostream& err) {
  if (g.json) {
    out << verdict_json(v, command).dump(2) << "\n";
  } else {
    std::string text = render_verdict(v);
    const auto nl = text.find('\n');
    out << paint(text.substr(0, nl), g.color) << text.substr(nl);
  }
  if (v.answer == Verdict::Answer::Error) err << "error: " << v.diagnostic << "\n";
  if (g.verbosity > 0 && v.certificate) {
    for (const auto& o : v.outcomes) err << "shape " << o.shape.name() << ": " << o.status << "\n";
  }
  return exit_code(v);
}

int do_prove(const ProveOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  ProverConfig cfg;
  cfg.solver = o.solver;
  if (!o.shapes.empty()) {
    cfg.shapes.clear();
    for (const auto& s : o.shapes) cfg.shapes.push_back(Shape::parse(s));
  }
  if (o.coeff_bound < 0) throw Error(ErrorCode::Usage, "--coeff-bound must be non-negative");
  cfg.coefficient_bound = o.coeff_bound;
  if (o.smt_timeout <= 0) throw Error(ErrorCode::Usage, "--smt-timeout must be positive");
  cfg.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(o.smt_timeout * 1000));
  cfg.parallel = o.parallel;
  if (!o.emit_smt.empty()) cfg.emit_smt = o.emit_smt;
  const auto started = std::chrono::steady_clock::now();
  const Verdict v = prove_file(o.file, cfg);
  if (g.verbosity > 0) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    err << "prove: " << ms.count() << " ms\n";
  }
  return emit_verdict(v, "prove", g, out, err);
}

int do_check(const CheckOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  Verdict v;
  try {
    const Ptrs system = elaborate(read_problem_file(o.file));
    v = check_only(system, read_text(o.certificate));
  } catch (const Error& e) {
    v.answer = Verdict::Answer::Error;
    v.diagnostic = e.what();
  }
  return emit_verdict(v, "check", g, out, err);
}

Ptrs random_walk_system(const Rational& p) {
  const Term x = Term::variable("x");
  const Term sx = Term::apply("s", {x});
  std::vector<std::pair<Term, Rational>> rhs{{x, p}, {Term::apply("s", {sx}), 1 - p}};
  return Ptrs(std::vector<ProbRule>{ProbRule{sx, FiniteDistribution<Term>::from_entries(rhs)}});
}

Term numeral(std::int64_t n) {
  Term t = Term::apply("0");
  for (std::int64_t i = 0; i < n; ++i) t = Term::apply("s", {t});
  return t;
}

Certificate load_certificate(const std::string& path, const Ptrs& system) {
  const CertificateCheck check = check_certificate(parse_interpretation(read_text(path)), system);
  if (!check.accepted) {
    std::string why;
    for (const auto& p : check.problems) why += "\n  " + p;
    throw Error(ErrorCode::NotOriented, "certificate '" + path + "' is not valid for this system:" + why);
  }
  return *check.certificate;
}

template <class Obj>
int finish_simulation(const Pars<Obj>& pars, const Obj& start, const RunConfig& cfg, SimulationInfo info,
                      const std::optional<Ranking>& ranking, const std::function<Rational(const Obj&)>& rank,
                      const GlobalOptions& g, std::ostream& out) {
  EdhReport<Obj> r = ranking ? estimate_edh(pars, start, cfg, &rank, &ranking->epsilon) : estimate_edh(pars, start, cfg);
  info.bound = r.bound;
  info.bound_holds = r.bound_holds;
  if (g.json) {
    out << simulation_json(r.run, pars, info).dump(2) << "\n";
  } else {
    out << simulation_text(r.run, pars, info);
  }
  return r.bound_holds ? 0 : 1;
}

int do_simulate(const SimulateOptions& o, const GlobalOptions& g, std::ostream& out) {
  if (o.file.empty() == o.family.empty()) throw Error(ErrorCode::Usage, "give exactly one of FILE or --family");
  if (o.start.empty()) throw Error(ErrorCode::Usage, "--start is required");
  RunConfig cfg;
  cfg.steps = o.steps;
  cfg.mode = parse_run_mode(o.mode);
  cfg.seed = o.seed;
  cfg.collapse = o.collapse;
  cfg.node_budget = o.node_budget;
  cfg.trace = o.trace;
  SimulationInfo info{o.file.empty() ? "family " + o.family : o.file, o.start, cfg.mode, std::nullopt, true};

  if (!o.file.empty()) {
    const ProblemFile problem = read_problem_file(o.file);
    const Ptrs system = elaborate(problem);
    std::optional<std::size_t> max_size;
    if (o.truncate >= 0) max_size = static_cast<std::size_t>(o.truncate);
    TermPars pars(system, max_size);
    const Term start = parse_term(o.start, problem.variables);
    std::optional<Ranking> ranking;
    if (!o.cert.empty()) ranking = ranking_from_certificate(load_certificate(o.cert, system));
    std::function<Rational(const Term&)> rank = ranking ? ranking->value : nullptr;
    return finish_simulation<Term>(pars, start, cfg, info, ranking, rank, g, out);
  }

  const FamilyObject start = parse_family_object(o.start);
  if (o.family == "rw") {
    const Rational p = parse_rational(o.p);
    if (p < 0 || p > 1) throw Error(ErrorCode::Usage, "--p must lie in [0,1]");
    if (!start.is_number()) throw Error(ErrorCode::Usage, "rw objects are natural numbers");
    const std::int64_t bound = o.truncate >= 0 ? o.truncate : std::numeric_limits<std::int64_t>::max();
    RandomWalk pars(p, bound);
    std::optional<Ranking> ranking;
    if (!o.cert.empty()) ranking = ranking_from_certificate(load_certificate(o.cert, random_walk_system(p)));
    std::function<Rational(const FamilyObject&)> rank;
    if (ranking) rank = [f = ranking->value](const FamilyObject& n) { return f(numeral(n.index)); };
    return finish_simulation<FamilyObject>(pars, start, cfg, info, ranking, rank, g, out);
  }
  if (!o.cert.empty()) throw Error(ErrorCode::Usage, "--cert applies to term systems and the rw family only");
  if (o.family == "amd") {
    NondeterministicExample pars;
    return finish_simulation<FamilyObject>(pars, start, cfg, info, std::nullopt, nullptr, g, out);
  }
  if (o.family == "an") {
    ExplodingFamily pars(o.truncate >= 0 ? o.truncate : 20);
    return finish_simulation<FamilyObject>(pars, start, cfg, info, std::nullopt, nullptr, g, out);
  }
  throw Error(ErrorCode::Usage, "unknown family '" + o.family + "' (expected rw, amd or an)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic term rewriting: SAST prover and reduction simulator", "ptrs"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_flag("-v,--verbose", g.verbosity, "Increase diagnostic output on stderr");
  app.add_flag("--color,!--no-color", g.color, "Colour the verdict line");
  app.add_flag("--json", g.json, "Emit JSON instead of text");
  app.set_config("--config", "", "Read option defaults from a key=value file");

  ProveOptions po;
  CLI::App* prove_cmd = app.add_subcommand("prove", "Search for an interpretation certifying SAST");
  prove_cmd->add_option("FILE", po.file, "Problem file (- for stdin)")->required();
  prove_cmd->add_option("--solver", po.solver, "SMT solver command reading SMT-LIB on stdin")
      ->envname("PTRS_SOLVER")
      ->capture_default_str();
  prove_cmd->add_option("--shapes", po.shapes, "Comma-separated shapes: poly-linear, poly-multilinear-2, matrix-D")
      ->delimiter(',');
  prove_cmd->add_option("--coeff-bound", po.coeff_bound, "Upper bound of every integer unknown")->capture_default_str();
  prove_cmd->add_option("--smt-timeout", po.smt_timeout, "Per-shape solver timeout in seconds")->capture_default_str();
  prove_cmd->add_flag("--parallel", po.parallel, "Try all shapes concurrently");
  prove_cmd->add_option("--emit-smt", po.emit_smt, "Write the SMT-LIB script(s) to PATH");

  CheckOptions co;
  CLI::App* check_cmd = app.add_subcommand("check", "Validate a given interpretation without a solver");
  check_cmd->add_option("FILE", co.file, "Problem file (- for stdin)")->required();
  check_cmd->add_option("--certificate", co.certificate, "Interpretation file")->required();

  SimulateOptions so;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Iterate the multidistribution reduction relation");
  sim_cmd->add_option("FILE", so.file, "Problem file");
  sim_cmd->add_option("--family", so.family, "Built-in system: rw, amd or an");
  sim_cmd->add_option("--p", so.p, "Decrease probability of the rw family")->capture_default_str();
  sim_cmd->add_option("--start", so.start, "Start object (term, number, or name such as a_3)");
  sim_cmd->add_option("--steps", so.steps, "Number of reduction steps")->capture_default_str();
  sim_cmd->add_option("--mode", so.mode, "exhaustive, innermost, outermost or random")->capture_default_str();
  sim_cmd->add_option("--seed", so.seed, "Seed of the random chooser")->capture_default_str();
  sim_cmd->add_option("--cert", so.cert, "Certificate giving the bound f(start)/epsilon");
  sim_cmd->add_flag("--trace", so.trace, "Print every multidistribution");
  sim_cmd->add_flag("--collapse", so.collapse, "Merge equal objects after each step");
  sim_cmd->add_option("--truncate", so.truncate, "Index bound (families) or term size bound (files)");
  sim_cmd->add_option("--node-budget", so.node_budget, "Node budget of exhaustive expansion")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*prove_cmd) return do_prove(po, g, out, err);
    if (*check_cmd) return do_check(co, g, out, err);
    return do_simulate(so, g, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::Usage) err << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ptrs
