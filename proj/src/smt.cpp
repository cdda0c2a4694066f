#include "ptrs/smt.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ptrs/error.hpp"

namespace ptrs {

Shape Shape::parse(std::string_view name) {
  if (name == "poly-linear") return {Kind::PolyLinear, 1};
  if (name == "poly-multilinear-2") return {Kind::PolyMultilinear, 2};
  if (name.starts_with("matrix-")) {
    std::string_view dim = name.substr(7);
    if (dim.size() == 1 && dim[0] >= '1' && dim[0] <= '4') return {Kind::Matrix, static_cast<std::size_t>(dim[0] - '0')};
  }
  throw Error(ErrorCode::Usage, "unknown shape '" + std::string(name) +
                                    "' (expected poly-linear, poly-multilinear-2 or matrix-1..matrix-4)");
}

std::string Shape::name() const {
  switch (kind) {
    case Kind::PolyLinear: return "poly-linear";
    case Kind::PolyMultilinear: return "poly-multilinear-" + std::to_string(parameter);
    case Kind::Matrix: return "matrix-" + std::to_string(parameter);
  }
  return "?";
}

namespace {

class Builder {
 public:
  Builder(ConstraintSet& cs, Integer bound) : cs_(cs), bound_(std::move(bound)) {}

  UnknownPoly fresh(std::string name) {
    cs_.unknowns.push_back({std::move(name), bound_});
    return UnknownPoly::variable(cs_.unknowns.size() - 1);
  }

  void require(UnknownPoly expression, Integer lower, std::string origin) {
    if (expression.degree() == 0) {
      // Constant constraints that hold are dropped; violated ones are kept
      // so the solver reports unsat.
      if (expression.constant_term() >= lower) return;
    }
    cs_.constraints.push_back({std::move(expression), std::move(lower), std::move(origin)});
  }

 private:
  ConstraintSet& cs_;
  Integer bound_;
};

// All subsets of {1..n} of size <= cap, in increasing size then lexicographic order.
std::vector<ArgumentSet> subsets_up_to(std::size_t n, std::size_t cap) {
  std::vector<ArgumentSet> out{{}};
  std::vector<ArgumentSet> frontier{{}};
  for (std::size_t size = 1; size <= cap; ++size) {
    std::vector<ArgumentSet> next;
    for (const ArgumentSet& s : frontier) {
      for (std::size_t i = s.empty() ? 1 : s.back() + 1; i <= n; ++i) {
        ArgumentSet t = s;
        t.push_back(i);
        next.push_back(t);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::string subset_suffix(const ArgumentSet& s) {
  if (s.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "." : "") + std::to_string(s[i]);
  return out;
}

}  // namespace

ConstraintSet encode(const Ptrs& system, const Shape& shape, const Integer& bound) {
  ConstraintSet cs;
  cs.shape = shape;
  Builder b(cs, bound);

  if (shape.kind == Shape::Kind::Matrix) {
    const std::size_t m = shape.parameter;
    MatrixInterpretation<UnknownPoly> templ;
    templ.dimension = m;
    for (const auto& [f, arity] : system.signature().symbols()) {
      MatrixSymbol<UnknownPoly> sym;
      for (std::size_t i = 1; i <= arity; ++i) {
        Matrix<UnknownPoly> c = zero_matrix<UnknownPoly>(m);
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t col = 0; col < m; ++col)
            c[r][col] = b.fresh(f + ".C" + std::to_string(i) + "." + std::to_string(r + 1) + "." + std::to_string(col + 1));
        b.require(c[0][0], 1, "monotonicity of " + f + " in argument " + std::to_string(i));
        sym.arguments.push_back(std::move(c));
      }
      for (std::size_t r = 0; r < m; ++r) sym.constant.push_back(b.fresh(f + ".c." + std::to_string(r + 1)));
      templ.symbols.emplace(f, std::move(sym));
    }
    for (const ProbRule& rule : system.rules()) {
      const auto [w, weights] = integer_weights(rule);
      const std::string origin = to_string(rule);
      VectorForm<UnknownPoly> d = VectorForm<UnknownPoly>::zero(m);
      d.accumulate(symbolic_eval(templ, rule.lhs), UnknownPoly(w));
      for (std::size_t j = 0; j < weights.size(); ++j)
        d.accumulate(symbolic_eval(templ, rule.rhs.entries()[j].first), UnknownPoly(Integer(-weights[j])));
      for (const auto& [x, mat] : d.linear)
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t col = 0; col < m; ++col) b.require(mat[r][col], 0, origin);
      b.require(d.constant[0], 1, origin);
      for (std::size_t r = 1; r < m; ++r) b.require(d.constant[r], 0, origin);
    }
    cs.interpretation = std::move(templ);
  } else {
    const std::size_t cap = shape.kind == Shape::Kind::PolyLinear ? 1 : shape.parameter;
    PolyInterpretation<UnknownPoly> templ;
    for (const auto& [f, arity] : system.signature().symbols()) {
      PolySymbol<UnknownPoly> sym;
      sym.arity = arity;
      for (const ArgumentSet& s : subsets_up_to(arity, cap)) {
        UnknownPoly u = b.fresh(f + "." + subset_suffix(s));
        if (s.size() == 1) b.require(u, 1, "monotonicity of " + f + " in argument " + std::to_string(s[0]));
        sym.coefficients.emplace(s, std::move(u));
      }
      templ.symbols.emplace(f, std::move(sym));
    }
    for (const ProbRule& rule : system.rules()) {
      const auto [w, weights] = integer_weights(rule);
      const std::string origin = to_string(rule);
      TermPoly<UnknownPoly> d = symbolic_eval(templ, rule.lhs).scaled(UnknownPoly(w));
      for (std::size_t j = 0; j < weights.size(); ++j)
        d -= symbolic_eval(templ, rule.rhs.entries()[j].first).scaled(UnknownPoly(weights[j]));
      for (const auto& [monomial, coefficient] : d.terms())
        if (!monomial.empty()) b.require(coefficient, 0, origin);
      b.require(d.constant_term(), 1, origin);
    }
    cs.interpretation = std::move(templ);
  }
  cs.nonlinear = std::any_of(cs.constraints.begin(), cs.constraints.end(),
                             [](const Constraint& c) { return c.expression.degree() > 1; });
  return cs;
}

std::string smt_symbol(const std::string& name) {
  static const std::string extra = "~!@$%^&*_-+=<>.?/";
  const bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0])) &&
                      std::all_of(name.begin(), name.end(), [](char c) {
                        return std::isalnum(static_cast<unsigned char>(c)) || extra.find(c) != std::string::npos;
                      });
  if (simple) return name;
  std::string quoted = "|";
  for (char c : name) quoted += (c == '|' || c == '\\') ? '_' : c;
  return quoted + "|";
}

namespace {

std::string smt_integer(const Integer& k) { return k < 0 ? "(- " + Integer(-k).str() + ")" : k.str(); }

std::string smt_monomial(const ConstraintSet& cs, const UnknownPoly::Monomial& m, const Integer& coefficient) {
  std::vector<std::string> factors;
  if (coefficient != 1 || m.empty()) factors.push_back(smt_integer(coefficient));
  for (std::size_t u : m) factors.push_back(smt_symbol(cs.unknowns[u].name));
  if (factors.size() == 1) return factors.front();
  std::string out = "(*";
  for (const auto& f : factors) out += " " + f;
  return out + ")";
}

std::string smt_sum(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  if (terms.size() == 1) return terms.front();
  std::string out = "(+";
  for (const auto& t : terms) out += " " + t;
  return out + ")";
}

std::string sanitize_comment(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

}  // namespace

std::string emit_smtlib(const ConstraintSet& cs) {
  std::ostringstream out;
  out << "; shape " << cs.shape.name() << ", " << cs.unknowns.size() << " unknowns, " << cs.constraints.size()
      << " constraints\n";
  out << "(set-logic " << (cs.nonlinear ? "QF_NIA" : "QF_LIA") << ")\n";
  for (const Unknown& u : cs.unknowns) out << "(declare-const " << smt_symbol(u.name) << " Int)\n";
  for (const Unknown& u : cs.unknowns) {
    const std::string s = smt_symbol(u.name);
    out << "(assert (and (<= 0 " << s << ") (<= " << s << " " << u.upper.str() << ")))\n";
  }
  std::string last_origin;
  for (const Constraint& c : cs.constraints) {
    if (c.origin != last_origin) {
      out << "; " << sanitize_comment(c.origin) << "\n";
      last_origin = c.origin;
    }
    // Move negative monomials and the bound to opposite sides.
    std::vector<std::string> lhs, rhs;
    Integer constant = -c.lower;
    for (const auto& [m, k] : c.expression.terms()) {
      if (m.empty()) {
        constant += k;
      } else if (k > 0) {
        lhs.push_back(smt_monomial(cs, m, k));
      } else {
        rhs.push_back(smt_monomial(cs, m, Integer(-k)));
      }
    }
    if (constant > 0) lhs.push_back(constant.str());
    if (constant < 0) rhs.push_back(Integer(-constant).str());
    out << "(assert (>= " << smt_sum(lhs) << " " << smt_sum(rhs) << "))\n";
  }
  out << "(check-sat)\n(get-model)\n";
  return out.str();
}

namespace {

Integer evaluate(const UnknownPoly& p, const std::vector<Integer>& values) {
  Integer total = 0;
  for (const auto& [m, k] : p.terms()) {
    Integer product = k;
    for (std::size_t u : m) product *= values[u];
    total += product;
  }
  return total;
}

std::vector<Integer> model_values(const ConstraintSet& cs, const Assignment& assignment) {
  std::vector<Integer> values;
  values.reserve(cs.unknowns.size());
  for (const Unknown& u : cs.unknowns) {
    auto it = assignment.find(u.name);
    if (it == assignment.end()) throw Error(ErrorCode::IncompleteModel, "model lacks a value for '" + u.name + "'");
    if (it->second < 0 || it->second > u.upper)
      throw Error(ErrorCode::IncompleteModel,
                  "value " + it->second.str() + " of '" + u.name + "' is outside 0.." + u.upper.str());
    values.push_back(it->second);
  }
  return values;
}

}  // namespace

bool satisfies(const ConstraintSet& cs, const Assignment& assignment) {
  std::vector<Integer> values;
  try {
    values = model_values(cs, assignment);
  } catch (const Error&) {
    return false;
  }
  return std::all_of(cs.constraints.begin(), cs.constraints.end(),
                     [&](const Constraint& c) { return evaluate(c.expression, values) >= c.lower; });
}

const char* to_string(SolverResult::Status s) {
  switch (s) {
    case SolverResult::Status::Sat: return "sat";
    case SolverResult::Status::Unsat: return "unsat";
    case SolverResult::Status::Unknown: return "unknown";
    case SolverResult::Status::Error: return "solver-error";
  }
  return "?";
}

namespace {

struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view s) : s_(s) {}

  std::optional<SExpr> next() {
    skip();
    if (pos_ >= s_.size()) return std::nullopt;
    return read();
  }

 private:
  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip();
    if (pos_ >= s_.size()) throw Error(ErrorCode::SolverError, "unexpected end of solver output");
    SExpr e;
    if (s_[pos_] == '(') {
      ++pos_;
      e.is_list = true;
      while (true) {
        skip();
        if (pos_ >= s_.size()) throw Error(ErrorCode::SolverError, "unbalanced parentheses in solver output");
        if (s_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.list.push_back(read());
      }
    }
    if (s_[pos_] == ')') throw Error(ErrorCode::SolverError, "unbalanced parentheses in solver output");
    if (s_[pos_] == '|') {
      std::size_t end = s_.find('|', pos_ + 1);
      if (end == std::string_view::npos) throw Error(ErrorCode::SolverError, "unterminated quoted symbol");
      e.atom = std::string(s_.substr(pos_, end - pos_ + 1));
      pos_ = end + 1;
      return e;
    }
    if (s_[pos_] == '"') {
      std::size_t end = pos_ + 1;
      while (end < s_.size() && s_[end] != '"') ++end;
      e.atom = std::string(s_.substr(pos_, end - pos_ + 1));
      pos_ = std::min(end + 1, s_.size());
      return e;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' && s_[pos_] != ')')
      ++pos_;
    e.atom = std::string(s_.substr(start, pos_ - start));
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

Rational value_of(const SExpr& e) {
  if (!e.is_list) return parse_rational(e.atom);
  if (e.list.size() == 2 && !e.list[0].is_list && e.list[0].atom == "-") return -value_of(e.list[1]);
  if (e.list.size() == 3 && !e.list[0].is_list && e.list[0].atom == "/") return value_of(e.list[1]) / value_of(e.list[2]);
  throw Error(ErrorCode::SolverError, "unsupported value in model");
}

std::string unquote(const std::string& symbol) {
  if (symbol.size() >= 2 && symbol.front() == '|' && symbol.back() == '|') return symbol.substr(1, symbol.size() - 2);
  return symbol;
}

void collect_definitions(const SExpr& e, Assignment& out) {
  if (!e.is_list) return;
  if (e.list.size() == 5 && !e.list[0].is_list && e.list[0].atom == "define-fun") {
    Rational v = value_of(e.list[4]);
    if (denominator(v) != 1) throw Error(ErrorCode::SolverError, "non-integer model value for " + e.list[1].atom);
    out[unquote(e.list[1].atom)] = numerator(v);
    return;
  }
  for (const SExpr& child : e.list) collect_definitions(child, out);
}

}  // namespace

SolverResult parse_solver_output(std::string_view output) {
  SolverResult result;
  std::istringstream in{std::string(output)};
  std::string line;
  std::size_t consumed = 0;
  while (std::getline(in, line)) {
    consumed += line.size() + 1;
    std::string t = line;
    t.erase(0, t.find_first_not_of(" \t\r"));
    t.erase(t.find_last_not_of(" \t\r") + 1);
    if (t.empty()) continue;
    if (t == "sat") {
      result.status = SolverResult::Status::Sat;
    } else if (t == "unsat") {
      result.status = SolverResult::Status::Unsat;
      return result;
    } else if (t == "unknown") {
      result.status = SolverResult::Status::Unknown;
      return result;
    } else {
      result.status = SolverResult::Status::Error;
      result.diagnostic = "unexpected solver output: " + t;
      return result;
    }
    break;
  }
  if (result.status != SolverResult::Status::Sat) {
    result.status = SolverResult::Status::Error;
    result.diagnostic = "solver produced no answer";
    return result;
  }
  try {
    SExprReader reader(output.substr(std::min(consumed, output.size())));
    while (auto e = reader.next()) {
      if (e->is_list && !e->list.empty() && !e->list[0].is_list && e->list[0].atom == "error") {
        throw Error(ErrorCode::SolverError, "solver reported an error after sat");
      }
      collect_definitions(*e, result.model.assignment);
    }
  } catch (const Error& e) {
    result.status = SolverResult::Status::Error;
    result.diagnostic = e.what();
  }
  return result;
}

Interpretation decode(const ConstraintSet& cs, const SolverModel& model) {
  const std::vector<Integer> values = model_values(cs, model.assignment);
  auto value = [&](const UnknownPoly& p) { return Rational(evaluate(p, values)); };
  if (const auto* poly = std::get_if<PolyInterpretation<UnknownPoly>>(&cs.interpretation)) {
    PolyInterpretation<Rational> out;
    for (const auto& [f, sym] : poly->symbols) {
      PolySymbol<Rational> concrete;
      concrete.arity = sym.arity;
      for (const auto& [subset, u] : sym.coefficients) {
        Rational v = value(u);
        if (v != 0) concrete.coefficients.emplace(subset, v);
      }
      out.symbols.emplace(f, std::move(concrete));
    }
    return out;
  }
  const auto& mat = std::get<MatrixInterpretation<UnknownPoly>>(cs.interpretation);
  MatrixInterpretation<Rational> out;
  out.dimension = mat.dimension;
  for (const auto& [f, sym] : mat.symbols) {
    MatrixSymbol<Rational> concrete;
    for (const auto& c : sym.arguments) {
      Matrix<Rational> m = zero_matrix<Rational>(mat.dimension);
      for (std::size_t r = 0; r < mat.dimension; ++r)
        for (std::size_t col = 0; col < mat.dimension; ++col) m[r][col] = value(c[r][col]);
      concrete.arguments.push_back(std::move(m));
    }
    for (const auto& u : sym.constant) concrete.constant.push_back(value(u));
    out.symbols.emplace(f, std::move(concrete));
  }
  return out;
}

}  // namespace ptrs
