#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "cottonlab/jets/jet3.hpp"

namespace cottonlab::jets {

enum class NodeKind { Constant, Variable, Negate, Add, Subtract, Multiply, Divide, Power, Function };

enum class Function { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh };

std::string_view function_name(Function f);

/// Immutable expression tree over the chart coordinates x1, x2, x3.
///
/// Nodes are shared, so copying an Expr is cheap and the same tree can be
/// evaluated from many threads. Negation of a literal folds into a negative
/// constant, which keeps print/parse round trips structurally exact.
class Expr {
 public:
  /// The constant 0.
  Expr();

  static Expr constant(double value);
  /// axis is 0, 1 or 2 for x1, x2, x3.
  static Expr variable(int axis);
  static Expr apply(Function f, Expr arg);
  static Expr power(Expr base, int exponent);

  friend Expr operator-(Expr a);
  friend Expr operator+(Expr a, Expr b);
  friend Expr operator-(Expr a, Expr b);
  friend Expr operator*(Expr a, Expr b);
  friend Expr operator/(Expr a, Expr b);

  NodeKind kind() const;
  double constant_value() const;
  int variable_axis() const;
  int exponent() const;
  Function function() const;
  /// Operand of unary nodes, left operand of binary nodes.
  const Expr& lhs() const;
  const Expr& rhs() const;

  bool is_constant(double value) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  static Expr make(NodeKind kind, Expr a, Expr b);
  // Null means the constant 0.
  std::shared_ptr<const Node> node_;
};

Expr sin(Expr a);
Expr cos(Expr a);
Expr tan(Expr a);
Expr exp(Expr a);
Expr log(Expr a);
Expr sqrt(Expr a);
Expr sinh(Expr a);
Expr cosh(Expr a);
Expr tanh(Expr a);
Expr pow(Expr a, int n);

/// Parses the infix grammar documented in docs/expression-grammar.md.
/// Throws SyntaxError or UnknownSymbol.
Expr parse(std::string_view text);

/// Fully parenthesized text that parses back to a structurally equal tree.
std::string to_string(const Expr& e);

/// IEEE double evaluation; throws DomainError on log/sqrt of negative
/// values, division by zero, or non-finite intermediate results.
double eval(const Expr& e, const std::array<double, 3>& point);

/// Exact order-3 Taylor jet of the expression at `point`.
Jet3 eval_jet(const Expr& e, const std::array<double, 3>& point);

}  // namespace cottonlab::jets
