#ifndef MATRING_TEXT_PARSE_HPP
#define MATRING_TEXT_PARSE_HPP

// Recursive-descent parser for the polynomial text format shared by the
// commutative (s, t / x) and noncommutative (x, y) polynomial types.
//
//   expr    := ['-'|'+'] term { ('+'|'-') term }
//   term    := power { ['*'] power }
//   power   := primary [ '^' integer ]
//   primary := number | variable | '(' expr ')'
//   number  := digits [ '/' digits ]
//
// Juxtaposition multiplies, so "2st^2" and "2*s*t^2" parse alike.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace matring {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Builder must provide: value_type, number(std::string_view),
/// variable(char) (throws ParseError for unknown names), and the value type
/// must support +, -, *, unary -, and builder.pow(value, unsigned).
template <class Builder>
class ExpressionParser {
 public:
  using value_type = typename Builder::value_type;

  ExpressionParser(std::string_view text, const Builder& builder) : text_(text), b_(builder) {}

  value_type parse() {
    value_type v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool at_primary_start() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c));
  }

  value_type expr() {
    bool negate = false;
    if (peek('-')) {
      ++pos_;
      negate = true;
    } else if (peek('+')) {
      ++pos_;
    }
    value_type acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  value_type term() {
    value_type acc = power();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * power();
      } else if (at_primary_start()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  value_type power() {
    value_type base = primary();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      return b_.pow(base, e);
    }
    return base;
  }

  value_type primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      value_type v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t den = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (den == pos_) fail("expected denominator");
      }
      return b_.number(text_.substr(start, pos_ - start));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      return b_.variable(c);
    }
    fail("unexpected character");
  }

  std::string_view text_;
  const Builder& b_;
  std::size_t pos_ = 0;
};

}  // namespace matring

#endif  // MATRING_TEXT_PARSE_HPP
