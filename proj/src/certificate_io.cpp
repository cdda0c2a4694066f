#include "ptrs/certificate_io.hpp"

#include <cctype>
#include <sstream>

#include "ptrs/error.hpp"

namespace ptrs {

namespace {

std::vector<std::string> argument_names(std::size_t arity) {
  if (arity == 1) return {"x"};
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= arity; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

std::string header(const std::string& symbol, const std::vector<std::string>& names) {
  std::string out = "[" + symbol + "]";
  if (names.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  return out + ")";
}

std::string render_poly_symbol(const std::string& symbol, const PolySymbol<Rational>& f) {
  const auto names = argument_names(f.arity);
  std::string out = header(symbol, names) + " = ";
  // Highest degree first, constant last.
  std::vector<std::pair<ArgumentSet, Rational>> terms(f.coefficients.begin(), f.coefficients.end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  bool first = true;
  for (const auto& [subset, c] : terms) {
    if (c == 0) continue;
    Rational magnitude = c < 0 ? Rational(-c) : c;
    out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    first = false;
    if (subset.empty()) {
      out += to_string(magnitude);
      continue;
    }
    std::string vars;
    for (std::size_t i = 0; i < subset.size(); ++i) vars += (i ? "*" : "") + names[subset[i] - 1];
    if (magnitude == 1) {
      out += vars;
    } else if (subset.size() == 1 && denominator(magnitude) == 1) {
      out += to_string(magnitude) + vars;
    } else {
      out += to_string(magnitude) + "*" + vars;
    }
  }
  if (first) out += "0";
  return out;
}

std::string render_vector(const std::vector<Rational>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out + "]";
}

std::string render_matrix_symbol(const std::string& symbol, const MatrixSymbol<Rational>& f) {
  const auto names = argument_names(f.arguments.size());
  std::string out = header(symbol, names) + " = ";
  for (std::size_t i = 0; i < f.arguments.size(); ++i) {
    out += "[";
    for (std::size_t r = 0; r < f.arguments[i].size(); ++r) out += (r ? "," : "") + render_vector(f.arguments[i][r]);
    out += "]*" + names[i] + " + ";
  }
  return out + render_vector(f.constant);
}

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::CertificateParse, message); }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits at commas outside of brackets and parentheses.
std::vector<std::string> split_top_level(std::string_view line) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(line.substr(start)));
  return parts;
}

struct Definition {
  std::string symbol;
  std::vector<std::string> params;
  std::string body;
};

Definition split_definition(const std::string& text) {
  Definition d;
  // The symbol ends at the first ']' followed by '(' or '='.
  std::size_t close = std::string::npos;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i] != ']') continue;
    std::size_t j = i + 1;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j < text.size() && (text[j] == '(' || text[j] == '=')) {
      close = i;
      break;
    }
  }
  if (close == std::string::npos || close == 1) fail("malformed definition '" + text + "'");
  d.symbol = text.substr(1, close - 1);
  std::size_t pos = close + 1;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos < text.size() && text[pos] == '(') {
    std::size_t end = text.find(')', pos);
    if (end == std::string::npos) fail("unterminated argument list in '" + text + "'");
    for (const std::string& p : split_top_level(std::string_view(text).substr(pos + 1, end - pos - 1))) {
      if (p.empty()) fail("empty argument name in '" + text + "'");
      d.params.push_back(p);
    }
    pos = end + 1;
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos >= text.size() || text[pos] != '=') fail("expected '=' in '" + text + "'");
  d.body = trim(std::string_view(text).substr(pos + 1));
  if (d.body.empty()) fail("empty right-hand side in '" + text + "'");
  return d;
}

class ExprParser {
 public:
  ExprParser(std::string_view text, const Definition& def) : s_(text), def_(def) {}

  PolySymbol<Rational> parse_poly() {
    PolySymbol<Rational> f;
    f.arity = def_.params.size();
    bool negate = accept('-');
    while (true) {
      auto [subset, c] = poly_term();
      if (negate) c = -c;
      f.coefficients[subset] += c;
      if (accept('+')) {
        negate = false;
      } else if (accept('-')) {
        negate = true;
      } else {
        break;
      }
    }
    expect_end();
    return f;
  }

  MatrixSymbol<Rational> parse_matrix(std::size_t& dimension) {
    MatrixSymbol<Rational> f;
    f.arguments.resize(def_.params.size());
    std::vector<Rational> constant;
    while (true) {
      skip();
      if (!peek_is("[[")) {
        std::vector<Rational> v = vector();
        set_dimension(dimension, v.size());
        if (constant.empty()) constant.assign(v.size(), 0);
        add_into(constant, v, Rational(1));
      } else {
        Matrix<Rational> m = matrix();
        set_dimension(dimension, m.size());
        accept('*');
        std::size_t index = param_index(identifier());
        if (f.arguments[index].empty()) f.arguments[index] = zero_matrix<Rational>(m.size());
        add_into(f.arguments[index], m, Rational(1));
      }
      if (!accept('+')) break;
    }
    expect_end();
    if (dimension == 0) fail("cannot infer the dimension of [" + def_.symbol + "]");
    if (constant.empty()) constant.assign(dimension, 0);
    for (auto& m : f.arguments)
      if (m.empty()) m = zero_matrix<Rational>(dimension);
    f.constant = std::move(constant);
    return f;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "' in definition of [" + def_.symbol + "]");
  }
  bool peek_is(std::string_view t) {
    skip();
    return s_.substr(pos_, t.size()) == t;
  }
  void expect_end() {
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(s_.substr(pos_)) + "' in definition of [" + def_.symbol + "]");
  }

  bool at_number() {
    skip();
    return pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-');
  }

  Rational number() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/' || s_[pos_] == '.')) ++pos_;
    try {
      return parse_rational(s_.substr(start, pos_ - start));
    } catch (const Error&) {
      fail("malformed number in definition of [" + def_.symbol + "]");
    }
  }

  std::string identifier() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\'')) ++pos_;
    if (start == pos_) fail("expected a variable in definition of [" + def_.symbol + "]");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::size_t param_index(const std::string& name) {
    for (std::size_t i = 0; i < def_.params.size(); ++i)
      if (def_.params[i] == name) return i;
    fail("unknown variable '" + name + "' in definition of [" + def_.symbol + "]");
  }

  bool at_identifier() {
    skip();
    return pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_');
  }

  std::pair<ArgumentSet, Rational> poly_term() {
    Rational c = 1;
    ArgumentSet subset;
    bool any = false;
    if (at_number()) {
      c = number();
      any = true;
      if (!accept('*') && !at_identifier()) return {subset, c};
    }
    do {
      subset.push_back(param_index(identifier()) + 1);
      any = true;
    } while (accept('*'));
    if (!any) fail("empty term in definition of [" + def_.symbol + "]");
    std::sort(subset.begin(), subset.end());
    if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
      fail("[" + def_.symbol + "] is not multilinear");
    return {subset, c};
  }

  std::vector<Rational> vector() {
    expect('[');
    std::vector<Rational> v;
    do {
      v.push_back(number());
    } while (accept(','));
    expect(']');
    return v;
  }

  Matrix<Rational> matrix() {
    expect('[');
    Matrix<Rational> m;
    do {
      m.push_back(vector());
    } while (accept(','));
    expect(']');
    for (const auto& row : m)
      if (row.size() != m.size()) fail("matrix in [" + def_.symbol + "] is not square");
    return m;
  }

  void set_dimension(std::size_t& dimension, std::size_t seen) {
    if (dimension == 0) dimension = seen;
    if (seen != dimension) fail("inconsistent dimensions in [" + def_.symbol + "]");
  }

  std::string_view s_;
  const Definition& def_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string render_interpretation(const Interpretation& interp) {
  std::string out;
  if (const auto* poly = std::get_if<PolyInterpretation<Rational>>(&interp)) {
    for (const auto& [name, f] : poly->symbols) out += render_poly_symbol(name, f) + "\n";
  } else {
    const auto& mat = std::get<MatrixInterpretation<Rational>>(interp);
    for (const auto& [name, f] : mat.symbols) out += render_matrix_symbol(name, f) + "\n";
  }
  return out;
}

std::string render_certificate(const Certificate& cert) {
  std::string out = render_interpretation(cert.interpretation);
  for (const auto& m : cert.margins) out += "margin " + to_string(m.margin) + " : " + m.rule + "\n";
  return out + "epsilon = " + to_string(cert.epsilon) + "\n";
}

Interpretation parse_interpretation(std::string_view text) {
  std::vector<Definition> defs;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t.front() != '[') continue;
    for (const std::string& part : split_top_level(t)) {
      if (part.empty()) continue;
      if (part.front() != '[') fail("expected '[' at '" + part + "'");
      defs.push_back(split_definition(part));
    }
  }
  if (defs.empty()) fail("no interpretation definitions found");

  const bool matrix = defs.front().body.front() == '[';
  for (const Definition& d : defs) {
    if ((d.body.front() == '[') != matrix) fail("mixed polynomial and matrix definitions");
  }
  if (!matrix) {
    PolyInterpretation<Rational> poly;
    for (const Definition& d : defs) {
      if (poly.symbols.contains(d.symbol)) fail("duplicate definition of [" + d.symbol + "]");
      poly.symbols.emplace(d.symbol, ExprParser(d.body, d).parse_poly());
    }
    return poly;
  }
  MatrixInterpretation<Rational> mat;
  std::size_t dimension = 0;
  for (const Definition& d : defs) {
    if (mat.symbols.contains(d.symbol)) fail("duplicate definition of [" + d.symbol + "]");
    mat.symbols.emplace(d.symbol, ExprParser(d.body, d).parse_matrix(dimension));
  }
  mat.dimension = dimension;
  return mat;
}

}  // namespace ptrs
