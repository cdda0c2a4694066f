#include "ptrs/rational.hpp"

#include <cctype>

#include "ptrs/error.hpp"

namespace ptrs {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPosition: return "invalid-position";
    case ErrorCode::InvalidWeights: return "invalid-weights";
    case ErrorCode::Syntax: return "syntax-error";
    case ErrorCode::ArityInconsistency: return "arity-inconsistency";
    case ErrorCode::UnknownToken: return "unknown-token";
    case ErrorCode::FreeVariableOnRhs: return "free-variable-on-rhs";
    case ErrorCode::VariableLhs: return "variable-lhs";
    case ErrorCode::EmptyRule: return "empty-rule";
    case ErrorCode::DegreeOverflow: return "degree-overflow";
    case ErrorCode::NotOriented: return "not-oriented";
    case ErrorCode::MonotonicityViolation: return "monotonicity-violation";
    case ErrorCode::IncompleteModel: return "incomplete-model";
    case ErrorCode::SolverError: return "solver-error";
    case ErrorCode::CertificateParse: return "certificate-parse-error";
    case ErrorCode::NodeBudgetExceeded: return "node-budget-exceeded";
    case ErrorCode::Usage: return "usage-error";
  }
  return "error";
}

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw Error(ErrorCode::Syntax, "malformed number '" + std::string(whole) + "'");
  Integer value = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(ErrorCode::Syntax, "malformed number '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), whole);
    Integer den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw Error(ErrorCode::Syntax, "zero denominator in '" + std::string(whole) + "'");
    value = Rational(num, den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    Integer ipart = dot == 0 ? Integer(0) : parse_integer(text.substr(0, dot), whole);
    Integer fpart = frac.empty() ? Integer(0) : parse_integer(frac, whole);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rational(ipart) + Rational(fpart, scale);
  } else {
    value = Rational(parse_integer(text, whole));
  }
  return negative ? Rational(-value) : value;
}

}  // namespace ptrs
