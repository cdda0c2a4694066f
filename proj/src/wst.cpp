#include "ptrs/wst.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "ptrs/error.hpp"

namespace ptrs {

namespace {

enum class Tok { LParen, RParen, Comma, Arrow, Bars, Colon, Ident, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLocation loc;
};

std::string where(const SourceLocation& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": ";
}

bool ident_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' &&
         c != ':' && c != '|';
}

class Lexer {
 public:
  explicit Lexer(std::string_view input) : in_(input) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      SourceLocation loc{line_, col_};
      if (pos_ >= in_.size()) {
        out.push_back({Tok::End, "", loc});
        return out;
      }
      char c = in_[pos_];
      if (c == '(') { advance(1); out.push_back({Tok::LParen, "(", loc}); continue; }
      if (c == ')') { advance(1); out.push_back({Tok::RParen, ")", loc}); continue; }
      if (c == ',') { advance(1); out.push_back({Tok::Comma, ",", loc}); continue; }
      if (c == ':') { advance(1); out.push_back({Tok::Colon, ":", loc}); continue; }
      if (c == '|') {
        if (pos_ + 1 < in_.size() && in_[pos_ + 1] == '|') {
          advance(2);
          out.push_back({Tok::Bars, "||", loc});
          continue;
        }
        throw Error(ErrorCode::UnknownToken, where(loc) + "unexpected '|' (alternatives are separated by '||')");
      }
      if (starts_arrow()) { advance(2); out.push_back({Tok::Arrow, "->", loc}); continue; }
      std::size_t start = pos_;
      while (pos_ < in_.size() && ident_char(in_[pos_]) && !starts_arrow()) advance(1);
      out.push_back({Tok::Ident, std::string(in_.substr(start, pos_ - start)), loc});
    }
  }

 private:
  bool starts_arrow() const { return pos_ + 1 < in_.size() && in_[pos_] == '-' && in_[pos_ + 1] == '>'; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (in_[pos_] == '\n') {
        ++line_;
        col_ = 1;
        line_start_ = true;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < in_.size()) {
      if (std::isspace(static_cast<unsigned char>(in_[pos_]))) {
        advance(1);
      } else if (in_[pos_] == ';' && line_start_) {
        while (pos_ < in_.size() && in_[pos_] != '\n') advance(1);
      } else {
        break;
      }
    }
    line_start_ = false;
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  bool line_start_ = true;
};

// Parse tree before identifiers are classified into variables and symbols.
struct RawTerm {
  std::string name;
  bool parenthesized = false;
  std::vector<RawTerm> args;
  SourceLocation loc;
};

struct RawAlt {
  std::uint64_t weight;
  RawTerm rhs;
};

struct SyntaxRule {
  RawTerm lhs;
  std::vector<RawAlt> alts;
  bool weighted;
  SourceLocation loc;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  void parse_problem(std::set<std::string>& vars, std::vector<SyntaxRule>& rules) {
    bool any_block = false;
    while (peek().kind != Tok::End) {
      expect(Tok::LParen, "'('");
      const Token& head = expect(Tok::Ident, "block name");
      if (head.text == "VAR") {
        while (peek().kind == Tok::Ident) vars.insert(next().text);
      } else if (head.text == "RULES") {
        while (peek().kind != Tok::RParen && peek().kind != Tok::End) rules.push_back(parse_rule());
      } else {
        throw Error(ErrorCode::UnknownToken, where(head.loc) + "unsupported block '" + head.text + "'");
      }
      expect(Tok::RParen, "')'");
      any_block = true;
    }
    if (!any_block) throw Error(ErrorCode::Syntax, "1:1: empty problem");
  }

  RawTerm parse_single_term() {
    RawTerm t = parse_term();
    if (peek().kind != Tok::End)
      throw Error(ErrorCode::Syntax, where(peek().loc) + "unexpected '" + peek().text + "' after term");
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  const Token& expect(Tok kind, const char* what) {
    const Token& t = peek();
    if (t.kind != kind) {
      const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
      throw Error(ErrorCode::Syntax, where(t.loc) + "expected " + what + ", found " + found);
    }
    return next();
  }

  SyntaxRule parse_rule() {
    SyntaxRule rule;
    rule.loc = peek().loc;
    rule.lhs = parse_term();
    expect(Tok::Arrow, "'->'");
    rule.weighted = peek().kind == Tok::Ident && peek(1).kind == Tok::Colon;
    if (!rule.weighted) {
      rule.alts.push_back({1, parse_term()});
      return rule;
    }
    while (true) {
      const Token& w = expect(Tok::Ident, "weight");
      std::uint64_t weight = parse_weight(w);
      expect(Tok::Colon, "':'");
      rule.alts.push_back({weight, parse_term()});
      if (peek().kind != Tok::Bars) break;
      next();
    }
    return rule;
  }

  static std::uint64_t parse_weight(const Token& w) {
    std::uint64_t value = 0;
    for (char c : w.text) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error(ErrorCode::Syntax, where(w.loc) + "weight '" + w.text + "' is not a positive integer");
      if (value > (std::numeric_limits<std::uint64_t>::max() - 9) / 10)
        throw Error(ErrorCode::Syntax, where(w.loc) + "weight '" + w.text + "' is too large");
      value = value * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (value == 0) throw Error(ErrorCode::Syntax, where(w.loc) + "weights must be positive");
    return value;
  }

  RawTerm parse_term() {
    const Token& head = expect(Tok::Ident, "term");
    RawTerm t{head.text, false, {}, head.loc};
    if (peek().kind != Tok::LParen) return t;
    next();
    t.parenthesized = true;
    if (peek().kind == Tok::RParen) {
      next();
      return t;
    }
    while (true) {
      t.args.push_back(parse_term());
      if (peek().kind == Tok::Comma) {
        next();
        continue;
      }
      expect(Tok::RParen, "',' or ')'");
      return t;
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

Term classify(const RawTerm& raw, const std::set<std::string>& vars, Signature* signature) {
  if (vars.contains(raw.name)) {
    if (raw.parenthesized)
      throw Error(ErrorCode::Syntax, where(raw.loc) + "variable '" + raw.name + "' applied to arguments");
    return Term::variable(raw.name);
  }
  std::vector<Term> args;
  args.reserve(raw.args.size());
  for (const RawTerm& a : raw.args) args.push_back(classify(a, vars, signature));
  if (signature) {
    try {
      signature->declare(raw.name, args.size());
    } catch (const Error& e) {
      throw Error(e.code(), where(raw.loc) + e.what());
    }
  }
  return Term::apply(raw.name, std::move(args));
}

}  // namespace

ProblemFile parse_problem(std::string_view input) {
  Parser parser(Lexer(input).run());
  ProblemFile problem;
  std::vector<SyntaxRule> rules;
  parser.parse_problem(problem.variables, rules);
  if (rules.empty()) throw Error(ErrorCode::EmptyRule, "1:1: problem has no rules");
  for (const SyntaxRule& r : rules) {
    RawRule rule{classify(r.lhs, problem.variables, &problem.signature), {}, r.weighted, r.loc};
    for (const RawAlt& a : r.alts)
      rule.alternatives.push_back({a.weight, classify(a.rhs, problem.variables, &problem.signature)});
    problem.rules.push_back(std::move(rule));
  }
  return problem;
}

ProblemFile read_problem_file(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Usage, "cannot open '" + path + "'");
    buffer << in.rdbuf();
  }
  return parse_problem(buffer.str());
}

std::string render_problem(const ProblemFile& problem) {
  std::string out = "(VAR";
  for (const auto& v : problem.variables) out += " " + v;
  out += ")\n(RULES\n";
  for (const RawRule& rule : problem.rules) {
    out += "  " + to_string(rule.lhs) + " ->";
    if (!rule.weighted) {
      out += " " + to_string(rule.alternatives.front().rhs) + "\n";
      continue;
    }
    for (std::size_t j = 0; j < rule.alternatives.size(); ++j) {
      if (j) out += " ||";
      out += " " + std::to_string(rule.alternatives[j].weight) + " : " + to_string(rule.alternatives[j].rhs);
    }
    out += "\n";
  }
  return out + ")\n";
}

Ptrs elaborate(const ProblemFile& problem) {
  std::vector<ProbRule> rules;
  rules.reserve(problem.rules.size());
  for (const RawRule& raw : problem.rules) {
    const std::string at = where(raw.location);
    if (raw.alternatives.empty())
      throw Error(ErrorCode::EmptyRule, at + "rule for '" + to_string(raw.lhs) + "' has no alternatives");
    Integer total = 0;
    for (const auto& alt : raw.alternatives) total += alt.weight;
    std::vector<FiniteDistribution<Term>::Entry> entries;
    for (const auto& alt : raw.alternatives) entries.emplace_back(alt.rhs, Rational(Integer(alt.weight), total));
    try {
      ProbRule rule{raw.lhs, FiniteDistribution<Term>::from_entries(std::move(entries))};
      // Validate each rule on its own so the error carries its location.
      Ptrs single({rule});
      rules.push_back(std::move(rule));
    } catch (const Error& e) {
      throw Error(e.code(), at + e.what());
    }
  }
  return Ptrs(std::move(rules));
}

Term parse_term(std::string_view text, const std::set<std::string>& variables) {
  Parser parser(Lexer(text).run());
  RawTerm raw = parser.parse_single_term();
  return classify(raw, variables, nullptr);
}

}  // namespace ptrs
