#include "ctlab/parser.hpp"

#include <algorithm>
#include <cctype>

#include "ctlab/errors.hpp"

namespace ctlab {

namespace {

constexpr unsigned kMaxExponent = 10000;

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '\'';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
public:
  Parser(std::string_view text, const Variables& variables)
      : text_(text), variables_(variables) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError("syntax error: " + msg, at);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  /// Consumes '+', '-' or U+2212 and returns the sign, or 0 if none.
  int take_sign() {
    skip_space();
    if (pos_ >= text_.size()) return 0;
    if (text_[pos_] == '+') {
      ++pos_;
      return 1;
    }
    if (text_[pos_] == '-') {
      ++pos_;
      return -1;
    }
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return -1;
    }
    return 0;
  }

  bool take(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      const std::size_t save = pos_;
      const int sign = take_sign();
      if (sign == 0) {
        pos_ = save;
        return acc;
      }
      Polynomial rhs = term();
      if (sign > 0) {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = power();
    while (take('*')) acc = acc * power();
    return acc;
  }

  Polynomial power() {
    const std::size_t save = pos_;
    const int sign = take_sign();
    if (sign != 0) {
      Polynomial inner = power();
      return sign < 0 ? -inner : inner;
    }
    pos_ = save;
    Polynomial base = atom();
    if (take('^')) {
      skip_space();
      const std::size_t start = pos_;
      if (pos_ >= text_.size() || !is_digit(text_[pos_])) fail("expected exponent", pos_);
      unsigned long e = 0;
      while (pos_ < text_.size() && is_digit(text_[pos_])) {
        e = e * 10 + static_cast<unsigned long>(text_[pos_] - '0');
        if (e > kMaxExponent) fail("exponent too large", start);
        ++pos_;
      }
      reject_juxtaposition();
      return pow(base, static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial atom() {
    const std::size_t before_space = pos_;
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input", before_space);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!take(')')) fail("expected ')'", pos_);
      reject_juxtaposition();
      return inner;
    }
    if (is_digit(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      std::string literal(text_.substr(start, pos_ - start));
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        const std::size_t den_start = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        if (den_start == pos_) fail("non-rational literal", start);
        literal += "/" + std::string(text_.substr(den_start, pos_ - den_start));
      }
      if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
        fail("non-rational literal", start);
      }
      Rational q;
      try {
        q = parse_rational(literal);
      } catch (const std::invalid_argument&) {
        fail("non-rational literal", start);
      }
      reject_juxtaposition();
      return Polynomial::constant(variables_, q);
    }
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(variables_.begin(), variables_.end(), name);
      if (it == variables_.end()) {
        throw ParseError("unknown variable '" + name + "'", start);
      }
      reject_juxtaposition();
      return Polynomial::variable(variables_, static_cast<std::size_t>(it - variables_.begin()));
    }
    fail("unexpected '" + std::string(1, c) + "'", pos_);
  }

  void reject_juxtaposition() {
    std::size_t p = pos_;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    if (p < text_.size() && (is_ident_start(text_[p]) || is_digit(text_[p]) || text_[p] == '(')) {
      fail("implicit multiplication is not allowed", p);
    }
  }

  std::string_view text_;
  const Variables& variables_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const Variables& variables) {
  return Parser(text, variables).parse();
}

std::vector<std::string> scan_identifiers(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_ident_start(text[i])) {
      const std::size_t start = i;
      while (i < text.size() && is_ident_char(text[i])) ++i;
      std::string name(text.substr(start, i - start));
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(std::move(name));
    } else if (is_digit(text[i])) {
      while (i < text.size() && is_digit(text[i])) ++i;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace ctlab
