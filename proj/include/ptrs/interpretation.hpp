#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ptrs/poly.hpp"
#include "ptrs/rewriting.hpp"
#include "ptrs/term.hpp"

namespace ptrs {

/// Argument subset of a multilinear monomial, 1-based and sorted; the
/// empty subset is the constant coefficient.
using ArgumentSet = std::vector<std::size_t>;

template <class C>
struct PolySymbol {
  std::size_t arity = 0;
  std::map<ArgumentSet, C> coefficients;

  C coefficient(const ArgumentSet& v) const {
    auto it = coefficients.find(v);
    return it == coefficients.end() ? C(0) : it->second;
  }
};

/// f(a1..an) = sum over V of c_V * prod_{i in V} a_i.
template <class C>
struct PolyInterpretation {
  std::map<std::string, PolySymbol<C>> symbols;
};

template <class C>
struct MatrixSymbol {
  std::vector<Matrix<C>> arguments;
  std::vector<C> constant;
};

/// f(x1..xn) = sum_i C_i * x_i + c over vectors of length `dimension`.
template <class C>
struct MatrixInterpretation {
  std::size_t dimension = 1;
  std::map<std::string, MatrixSymbol<C>> symbols;
};

using Interpretation = std::variant<PolyInterpretation<Rational>, MatrixInterpretation<Rational>>;

/// Direct evaluation [t]^alpha; unassigned variables read as zero.
Rational eval_term(const PolyInterpretation<Rational>& interp, const Term& t,
                   const std::map<std::string, Rational>& alpha = {});
std::vector<Rational> eval_term(const MatrixInterpretation<Rational>& interp, const Term& t,
                                const std::map<std::string, std::vector<Rational>>& alpha = {});

/// Symbolic value of `t` as a polynomial in the term's variables. Throws
/// Error(DegreeOverflow) when composition yields a repeated variable, and
/// Error(NotOriented) when a symbol has no interpretation.
template <class C>
TermPoly<C> symbolic_eval(const PolyInterpretation<C>& interp, const Term& t) {
  if (t.is_variable()) return TermPoly<C>::variable(t.name());
  auto it = interp.symbols.find(t.name());
  if (it == interp.symbols.end() || it->second.arity != t.arity())
    throw Error(ErrorCode::NotOriented, "no interpretation for symbol '" + t.name() + "'/" + std::to_string(t.arity()));
  std::vector<TermPoly<C>> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(symbolic_eval(interp, a));
  TermPoly<C> out;
  for (const auto& [subset, c] : it->second.coefficients) {
    TermPoly<C> product{c};
    for (std::size_t i : subset) product = TermPoly<C>::multiply(product, args[i - 1], true);
    out += product;
  }
  return out;
}

template <class C>
VectorForm<C> symbolic_eval(const MatrixInterpretation<C>& interp, const Term& t) {
  const std::size_t m = interp.dimension;
  if (t.is_variable()) {
    VectorForm<C> v = VectorForm<C>::zero(m);
    v.linear.emplace(t.name(), identity_matrix<C>(m));
    return v;
  }
  auto it = interp.symbols.find(t.name());
  if (it == interp.symbols.end() || it->second.arguments.size() != t.arity())
    throw Error(ErrorCode::NotOriented, "no interpretation for symbol '" + t.name() + "'/" + std::to_string(t.arity()));
  VectorForm<C> out = VectorForm<C>::zero(m);
  out.constant = it->second.constant;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    out.accumulate(symbolic_eval(interp, t.arg(i)).transformed(it->second.arguments[i]), C(1));
  }
  return out;
}

/// [l] - sum_j p_j [r_j] as a symbolic form.
TermPoly<Rational> orientation_difference(const PolyInterpretation<Rational>& interp, const ProbRule& rule);
VectorForm<Rational> orientation_difference(const MatrixInterpretation<Rational>& interp, const ProbRule& rule);

struct Orientation {
  bool oriented = false;
  /// Constant part (first component) of the difference: the rule's margin.
  Rational margin;
  /// Offending coefficient when not oriented.
  std::string problem;
};

/// Absolute positiveness of the orientation difference: every coefficient
/// is non-negative (entrywise for matrices) and the constant part (its
/// first component) is strictly positive.
Orientation orientation_margin(const Interpretation& interp, const ProbRule& rule);

struct RuleMargin {
  std::string rule;
  Rational margin;
};

struct Certificate {
  Interpretation interpretation;
  std::vector<RuleMargin> margins;
  Rational epsilon;
};

struct CertificateCheck {
  bool accepted = false;
  std::vector<std::string> problems;
  std::optional<Certificate> certificate;
};

/// Verifies coverage of the signature, non-negativity, the monotonicity
/// witnesses (c_{i} >= 1, resp. (C_i)_{1,1} >= 1) and the orientation of
/// every rule; epsilon is the least rule margin.
CertificateCheck check_certificate(const Interpretation& interp, const Ptrs& system);

/// Problems with coverage, non-negativity or monotonicity witnesses.
std::vector<std::string> check_monotonicity(const Interpretation& interp, const Signature& signature);

struct Ranking {
  std::function<Rational(const Term&)> value;
  Rational epsilon;
};

/// The collapsed interpretation of ground terms (identity for polynomials,
/// first component for matrices), with the certificate's epsilon.
Ranking ranking_from_certificate(const Certificate& cert);

std::string shape_name(const Interpretation& interp);

}  // namespace ptrs
