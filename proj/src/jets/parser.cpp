#include <cctype>
#include <charconv>
#include <numbers>
#include <string>

#include "cottonlab/error.hpp"
#include "cottonlab/jets/expr.hpp"

namespace cottonlab::jets {
namespace {

// expr    := term (('+' | '-') term)*
// term    := unary (('*' | '/') unary)*
// unary   := ('-' | '+') unary | power
// power   := primary ('^' exponent)*
// exponent:= ['-' | '+'] INTEGER | '(' ['-' | '+'] INTEGER ')'
// primary := NUMBER | 'x1' | 'x2' | 'x3' | 'pi' | FUNC '(' expr ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) {
      throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) {
        throw SyntaxError(pos_, std::string("expected '") + c + "' before end of input");
      }
      throw SyntaxError(pos_, std::string("expected '") + c + "'");
    }
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + parse_term();
      } else if (accept('-')) {
        lhs = lhs - parse_term();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * parse_unary();
      } else if (accept('/')) {
        lhs = lhs / parse_unary();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    while (accept('^')) base = pow(base, parse_exponent());
    return base;
  }

  int parse_exponent() {
    const bool paren = accept('(');
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    skip_space();
    int value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || first == res.ptr) {
      throw SyntaxError(start, "exponent must be an integer literal");
    }
    pos_ += static_cast<std::size_t>(res.ptr - first);
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      throw SyntaxError(start, "exponent must be an integer literal");
    }
    if (paren) expect(')');
    return negative ? -value : value;
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || first == res.ptr) throw SyntaxError(start, "malformed number");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return Expr::constant(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x1") return Expr::variable(0);
    if (name == "x2") return Expr::variable(1);
    if (name == "x3") return Expr::variable(2);
    if (name == "pi") return Expr::constant(std::numbers::pi);
    static constexpr Function kFunctions[] = {Function::Sin,  Function::Cos,  Function::Tan,
                                              Function::Exp,  Function::Log,  Function::Sqrt,
                                              Function::Sinh, Function::Cosh, Function::Tanh};
    for (const Function f : kFunctions) {
      if (name == function_name(f)) {
        expect('(');
        Expr arg = parse_expr();
        expect(')');
        return Expr::apply(f, std::move(arg));
      }
    }
    throw UnknownSymbol(start, std::string(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace cottonlab::jets
