#include "ptrs/interpretation.hpp"

#include <algorithm>

#include "ptrs/error.hpp"

namespace ptrs {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

const PolySymbol<Rational>& lookup(const PolyInterpretation<Rational>& interp, const Term& t) {
  auto it = interp.symbols.find(t.name());
  if (it == interp.symbols.end() || it->second.arity != t.arity())
    throw Error(ErrorCode::NotOriented, "no interpretation for symbol '" + t.name() + "'/" + std::to_string(t.arity()));
  return it->second;
}

std::string monomial_text(const std::vector<std::string>& m) {
  if (m.empty()) return "constant part";
  std::string out = "coefficient of ";
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "*" : "") + m[i];
  return out;
}

}  // namespace

Rational eval_term(const PolyInterpretation<Rational>& interp, const Term& t,
                   const std::map<std::string, Rational>& alpha) {
  if (t.is_variable()) {
    auto it = alpha.find(t.name());
    return it == alpha.end() ? Rational(0) : it->second;
  }
  const PolySymbol<Rational>& f = lookup(interp, t);
  std::vector<Rational> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(eval_term(interp, a, alpha));
  Rational value = 0;
  for (const auto& [subset, c] : f.coefficients) {
    Rational product = c;
    for (std::size_t i : subset) product *= args[i - 1];
    value += product;
  }
  return value;
}

std::vector<Rational> eval_term(const MatrixInterpretation<Rational>& interp, const Term& t,
                                const std::map<std::string, std::vector<Rational>>& alpha) {
  if (t.is_variable()) {
    auto it = alpha.find(t.name());
    return it == alpha.end() ? std::vector<Rational>(interp.dimension, Rational(0)) : it->second;
  }
  auto it = interp.symbols.find(t.name());
  if (it == interp.symbols.end() || it->second.arguments.size() != t.arity())
    throw Error(ErrorCode::NotOriented, "no interpretation for symbol '" + t.name() + "'/" + std::to_string(t.arity()));
  std::vector<Rational> value = it->second.constant;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    add_into(value, it->second.arguments[i] * eval_term(interp, t.arg(i), alpha), Rational(1));
  }
  return value;
}

TermPoly<Rational> orientation_difference(const PolyInterpretation<Rational>& interp, const ProbRule& rule) {
  TermPoly<Rational> d = symbolic_eval(interp, rule.lhs);
  for (const auto& [r, p] : rule.rhs) d -= symbolic_eval(interp, r).scaled(p);
  return d;
}

VectorForm<Rational> orientation_difference(const MatrixInterpretation<Rational>& interp, const ProbRule& rule) {
  VectorForm<Rational> d = symbolic_eval(interp, rule.lhs);
  for (const auto& [r, p] : rule.rhs) d.accumulate(symbolic_eval(interp, r), Rational(-p));
  return d;
}

Orientation orientation_margin(const Interpretation& interp, const ProbRule& rule) {
  return std::visit(
      Overloaded{
          [&](const PolyInterpretation<Rational>& poly) {
            Orientation o;
            const TermPoly<Rational> d = orientation_difference(poly, rule);
            o.margin = d.constant_term();
            for (const auto& [m, c] : d.terms()) {
              if (!m.empty() && c < 0) {
                o.problem = monomial_text(m) + " is " + to_string(c);
                return o;
              }
            }
            if (o.margin <= 0) {
              o.problem = "constant part is " + to_string(o.margin) + ", not strictly positive";
              return o;
            }
            o.oriented = true;
            return o;
          },
          [&](const MatrixInterpretation<Rational>& mat) {
            Orientation o;
            const VectorForm<Rational> d = orientation_difference(mat, rule);
            o.margin = d.constant.at(0);
            for (const auto& [x, m] : d.linear) {
              for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = 0; j < m.size(); ++j)
                  if (m[i][j] < 0) {
                    o.problem = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                ") of the matrix for " + x + " is " + to_string(m[i][j]);
                    return o;
                  }
            }
            for (std::size_t i = 1; i < d.constant.size(); ++i) {
              if (d.constant[i] < 0) {
                o.problem = "constant component " + std::to_string(i + 1) + " is " + to_string(d.constant[i]);
                return o;
              }
            }
            if (o.margin <= 0) {
              o.problem = "first constant component is " + to_string(o.margin) + ", not strictly positive";
              return o;
            }
            o.oriented = true;
            return o;
          }},
      interp);
}

std::vector<std::string> check_monotonicity(const Interpretation& interp, const Signature& signature) {
  std::vector<std::string> problems;
  std::visit(
      Overloaded{
          [&](const PolyInterpretation<Rational>& poly) {
            for (const auto& [name, arity] : signature.symbols()) {
              auto it = poly.symbols.find(name);
              if (it == poly.symbols.end() || it->second.arity != arity) {
                problems.push_back("no interpretation for symbol '" + name + "'/" + std::to_string(arity));
                continue;
              }
              for (const auto& [subset, c] : it->second.coefficients) {
                if (c < 0) problems.push_back("[" + name + "] has a negative coefficient");
                if (!subset.empty() && (subset.back() > arity || std::adjacent_find(subset.begin(), subset.end()) != subset.end()))
                  problems.push_back("[" + name + "] has a malformed monomial");
              }
              for (std::size_t i = 1; i <= arity; ++i) {
                if (it->second.coefficient({i}) < 1)
                  problems.push_back("[" + name + "] coefficient of argument " + std::to_string(i) + " is below 1");
              }
            }
          },
          [&](const MatrixInterpretation<Rational>& mat) {
            const std::size_t m = mat.dimension;
            for (const auto& [name, arity] : signature.symbols()) {
              auto it = mat.symbols.find(name);
              if (it == mat.symbols.end() || it->second.arguments.size() != arity) {
                problems.push_back("no interpretation for symbol '" + name + "'/" + std::to_string(arity));
                continue;
              }
              const MatrixSymbol<Rational>& f = it->second;
              bool shape_ok = f.constant.size() == m;
              for (const auto& c : f.arguments) {
                shape_ok = shape_ok && c.size() == m &&
                           std::all_of(c.begin(), c.end(), [&](const auto& row) { return row.size() == m; });
              }
              if (!shape_ok) {
                problems.push_back("[" + name + "] does not have dimension " + std::to_string(m));
                continue;
              }
              bool negative = std::any_of(f.constant.begin(), f.constant.end(), [](const Rational& v) { return v < 0; });
              for (std::size_t i = 0; i < f.arguments.size(); ++i) {
                for (const auto& row : f.arguments[i])
                  for (const auto& v : row) negative = negative || v < 0;
                if (f.arguments[i][0][0] < 1)
                  problems.push_back("[" + name + "] entry (1,1) of the matrix for argument " + std::to_string(i + 1) +
                                     " is below 1");
              }
              if (negative) problems.push_back("[" + name + "] has a negative entry");
            }
          }},
      interp);
  return problems;
}

CertificateCheck check_certificate(const Interpretation& interp, const Ptrs& system) {
  CertificateCheck check;
  check.problems = check_monotonicity(interp, system.signature());
  if (!check.problems.empty()) return check;

  Certificate cert{interp, {}, 0};
  bool first = true;
  for (const ProbRule& rule : system.rules()) {
    const Orientation o = orientation_margin(interp, rule);
    if (!o.oriented) {
      check.problems.push_back("rule " + to_string(rule) + " not oriented: " + o.problem);
      continue;
    }
    cert.margins.push_back({to_string(rule), o.margin});
    if (first || o.margin < cert.epsilon) cert.epsilon = o.margin;
    first = false;
  }
  if (!check.problems.empty()) return check;
  check.accepted = true;
  check.certificate = std::move(cert);
  return check;
}

Ranking ranking_from_certificate(const Certificate& cert) {
  Ranking r;
  r.epsilon = cert.epsilon;
  r.value = std::visit(
      Overloaded{[](const PolyInterpretation<Rational>& poly) -> std::function<Rational(const Term&)> {
                   return [poly](const Term& t) { return eval_term(poly, t); };
                 },
                 [](const MatrixInterpretation<Rational>& mat) -> std::function<Rational(const Term&)> {
                   return [mat](const Term& t) { return eval_term(mat, t).at(0); };
                 }},
      cert.interpretation);
  return r;
}

std::string shape_name(const Interpretation& interp) {
  return std::visit(Overloaded{[](const PolyInterpretation<Rational>&) { return std::string("polynomial"); },
                               [](const MatrixInterpretation<Rational>& m) {
                                 return "matrix-" + std::to_string(m.dimension);
                               }},
                    interp);
}

}  // namespace ptrs
