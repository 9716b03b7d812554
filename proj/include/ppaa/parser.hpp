#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "ppaa/errors.hpp"
#include "ppaa/program.hpp"

namespace ppaa {

// Grammar (Datalog subset of ProbLog):
//
//   program  ::= { clause }
//   clause   ::= [ prob "::" ] atom [ ":-" literal { "," literal } ] "."
//   literal  ::= [ "\+" | "not" ] atom
//   atom     ::= ident [ "(" term { "," term } ")" ]
//   term     ::= ident [ "(" term { "," term } ")" ] | variable | integer
//   prob     ::= [ "-" ] decimal | integer "/" integer
//
// "%" starts a comment running to end of line.

namespace detail {

struct Token {
  enum class Kind { Ident, Variable, Number, LParen, RParen, Comma, Period, Neck, DoubleColon,
                    NotOp, Slash, Minus, End };
  Kind kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourceSpan at{line_, col_, 0};
      if (pos_ >= src_.size()) {
        out.push_back({Token::Kind::End, "", at});
        return out;
      }
      char c = src_[pos_];
      auto single = [&](Token::Kind k) {
        advance(1);
        at.length = 1;
        out.push_back({k, std::string(1, c), at});
      };
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_'))
          advance(1);
        std::string word(src_.substr(start, pos_ - start));
        at.length = word.size();
        if (word == kChiSymbol)
          throw InputError(InputError::Kind::ReservedSymbol,
                           "'" + word + "' is reserved and cannot appear in programs", at);
        bool var = std::isupper(static_cast<unsigned char>(c)) || c == '_';
        out.push_back({var ? Token::Kind::Variable : Token::Kind::Ident, word, at});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
        if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
            std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
          advance(1);
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
        }
        std::string num(src_.substr(start, pos_ - start));
        at.length = num.size();
        out.push_back({Token::Kind::Number, num, at});
      } else if (c == ':' && peek(1) == '-') {
        advance(2);
        at.length = 2;
        out.push_back({Token::Kind::Neck, ":-", at});
      } else if (c == ':' && peek(1) == ':') {
        advance(2);
        at.length = 2;
        out.push_back({Token::Kind::DoubleColon, "::", at});
      } else if (c == '\\' && peek(1) == '+') {
        advance(2);
        at.length = 2;
        out.push_back({Token::Kind::NotOp, "\\+", at});
      } else if (c == '(') {
        single(Token::Kind::LParen);
      } else if (c == ')') {
        single(Token::Kind::RParen);
      } else if (c == ',') {
        single(Token::Kind::Comma);
      } else if (c == '.') {
        single(Token::Kind::Period);
      } else if (c == '/') {
        single(Token::Kind::Slash);
      } else if (c == '-') {
        single(Token::Kind::Minus);
      } else {
        at.length = 1;
        throw InputError(InputError::Kind::Syntax, std::string("unexpected character '") + c + "'", at);
      }
    }
  }

 private:
  char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    while (!at(Token::Kind::End)) clause(p);
    return p;
  }

  Atom query() {
    if (at(Token::Kind::NotOp) || (at(Token::Kind::Ident) && cur().text == "not" &&
                                   next_is_atom_start()))
      throw InputError(InputError::Kind::Query, "a query is an atom, not a negated literal",
                       cur().span);
    Atom a = atom();
    if (at(Token::Kind::Period)) ++pos_;
    if (!at(Token::Kind::End)) fail("trailing input after query");
    return a;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool at(Token::Kind k) const { return cur().kind == k; }
  bool next_is_atom_start() const {
    if (pos_ + 1 >= toks_.size()) return false;
    auto k = toks_[pos_ + 1].kind;
    return k == Token::Kind::Ident || k == Token::Kind::LParen;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(InputError::Kind::Syntax,
                     msg + (at(Token::Kind::End) ? " at end of input" : " near '" + cur().text + "'"),
                     cur().span);
  }

  const Token& expect(Token::Kind k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return toks_[pos_++];
  }

  void clause(Program& p) {
    SourceSpan start = cur().span;
    if (at(Token::Kind::Number) || at(Token::Kind::Minus)) {
      Rational prob = probability();
      expect(Token::Kind::DoubleColon, "'::'");
      Atom a = atom();
      if (at(Token::Kind::Neck)) fail("probabilistic facts cannot have a body");
      expect(Token::Kind::Period, "'.'");
      p.pfacts.push_back({prob, std::move(a), start});
      return;
    }
    Rule r;
    r.span = start;
    r.head = atom();
    if (at(Token::Kind::Neck)) {
      ++pos_;
      r.body.push_back(literal());
      while (at(Token::Kind::Comma)) {
        ++pos_;
        r.body.push_back(literal());
      }
    }
    expect(Token::Kind::Period, "'.'");
    p.rules.push_back(std::move(r));
  }

  Rational probability() {
    bool negative = false;
    if (at(Token::Kind::Minus)) {
      negative = true;
      ++pos_;
    }
    std::string text = expect(Token::Kind::Number, "probability").text;
    if (at(Token::Kind::Slash)) {
      ++pos_;
      text += "/" + expect(Token::Kind::Number, "denominator").text;
    }
    auto r = Rational::parse(text);
    if (!r) fail("malformed probability '" + text + "'");
    return negative ? -*r : *r;
  }

  Literal literal() {
    if (at(Token::Kind::NotOp)) {
      ++pos_;
      return {atom(), true};
    }
    if (at(Token::Kind::Ident) && cur().text == "not" && next_is_atom_start()) {
      ++pos_;
      if (at(Token::Kind::LParen)) {
        ++pos_;
        Atom a = atom();
        expect(Token::Kind::RParen, "')'");
        return {std::move(a), true};
      }
      return {atom(), true};
    }
    return {atom(), false};
  }

  Atom atom() {
    if (at(Token::Kind::Variable)) fail("expected an atom, found variable");
    std::string pred = expect(Token::Kind::Ident, "predicate name").text;
    return Atom(std::move(pred), arguments());
  }

  std::vector<Term> arguments() {
    std::vector<Term> args;
    if (!at(Token::Kind::LParen)) return args;
    ++pos_;
    args.push_back(term());
    while (at(Token::Kind::Comma)) {
      ++pos_;
      args.push_back(term());
    }
    expect(Token::Kind::RParen, "')'");
    return args;
  }

  Term term() {
    if (at(Token::Kind::Variable)) {
      std::string name = toks_[pos_++].text;
      if (name == "_") name = "_G" + std::to_string(++anon_);
      return Term::variable(std::move(name));
    }
    if (at(Token::Kind::Number)) {
      const Token& t = toks_[pos_++];
      if (t.text.find('.') != std::string::npos)
        throw InputError(InputError::Kind::Syntax, "non-integer numeric constant", t.span);
      return Term::constant(t.text);
    }
    std::string name = expect(Token::Kind::Ident, "term").text;
    if (at(Token::Kind::LParen)) return Term::compound(std::move(name), arguments());
    return Term::constant(std::move(name));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int anon_ = 0;
};

}  // namespace detail

/// Parses and validates program text. Throws InputError.
inline Program parse_program(std::string_view text) {
  Program p = detail::Parser(detail::Lexer(text).run()).program();
  auto violations = validate(p);
  if (!violations.empty()) {
    const auto& v = violations.front();
    auto kind = v.kind == Violation::Kind::ReservedSymbol ? InputError::Kind::ReservedSymbol
                                                          : InputError::Kind::Validation;
    std::string msg = v.message;
    if (violations.size() > 1) msg += " (and " + std::to_string(violations.size() - 1) + " more)";
    throw InputError(kind, msg, v.span);
  }
  return p;
}

/// Parses a single, possibly non-ground atom; an optional trailing "." is allowed.
inline Atom parse_query(std::string_view text) {
  return detail::Parser(detail::Lexer(text).run()).query();
}

}  // namespace ppaa
