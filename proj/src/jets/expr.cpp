#include "cottonlab/jets/expr.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "cottonlab/error.hpp"

namespace cottonlab::jets {

struct Expr::Node {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;
  int axis = 0;
  int exponent = 0;
  Function func = Function::Sin;
  Expr a;
  Expr b;
};

std::string_view function_name(Function f) {
  switch (f) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Tan: return "tan";
    case Function::Exp: return "exp";
    case Function::Log: return "log";
    case Function::Sqrt: return "sqrt";
    case Function::Sinh: return "sinh";
    case Function::Cosh: return "cosh";
    case Function::Tanh: return "tanh";
  }
  return "?";
}

Expr::Expr() = default;

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::make(NodeKind kind, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return Expr(std::move(n));
}

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(int axis) {
  if (axis < 0 || axis > 2) throw std::out_of_range("variable axis must be 0, 1 or 2");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Variable;
  n->axis = axis;
  return Expr(std::move(n));
}

Expr Expr::apply(Function f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Function;
  n->func = f;
  n->a = std::move(arg);
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Power;
  n->exponent = exponent;
  n->a = std::move(base);
  return Expr(std::move(n));
}

Expr operator-(Expr a) {
  if (a.kind() == NodeKind::Constant) return Expr::constant(-a.constant_value());
  return Expr::make(NodeKind::Negate, std::move(a), Expr());
}

Expr operator+(Expr a, Expr b) { return Expr::make(NodeKind::Add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) {
  return Expr::make(NodeKind::Subtract, std::move(a), std::move(b));
}
Expr operator*(Expr a, Expr b) {
  return Expr::make(NodeKind::Multiply, std::move(a), std::move(b));
}
Expr operator/(Expr a, Expr b) { return Expr::make(NodeKind::Divide, std::move(a), std::move(b)); }

NodeKind Expr::kind() const { return node_ ? node_->kind : NodeKind::Constant; }
double Expr::constant_value() const { return node_ ? node_->value : 0.0; }
int Expr::variable_axis() const { return node_ ? node_->axis : 0; }
int Expr::exponent() const { return node_ ? node_->exponent : 0; }
Function Expr::function() const { return node_ ? node_->func : Function::Sin; }

const Expr& Expr::lhs() const {
  static const Expr zero;
  return node_ ? node_->a : zero;
}

const Expr& Expr::rhs() const {
  static const Expr zero;
  return node_ ? node_->b : zero;
}

bool Expr::is_constant(double value) const {
  return kind() == NodeKind::Constant && constant_value() == value;
}

bool operator==(const Expr& x, const Expr& y) {
  if (x.node_ == y.node_) return true;
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case NodeKind::Constant: return x.constant_value() == y.constant_value();
    case NodeKind::Variable: return x.variable_axis() == y.variable_axis();
    case NodeKind::Negate: return x.lhs() == y.lhs();
    case NodeKind::Power: return x.exponent() == y.exponent() && x.lhs() == y.lhs();
    case NodeKind::Function: return x.function() == y.function() && x.lhs() == y.lhs();
    case NodeKind::Add:
    case NodeKind::Subtract:
    case NodeKind::Multiply:
    case NodeKind::Divide: return x.lhs() == y.lhs() && x.rhs() == y.rhs();
  }
  return false;
}

Expr sin(Expr a) { return Expr::apply(Function::Sin, std::move(a)); }
Expr cos(Expr a) { return Expr::apply(Function::Cos, std::move(a)); }
Expr tan(Expr a) { return Expr::apply(Function::Tan, std::move(a)); }
Expr exp(Expr a) { return Expr::apply(Function::Exp, std::move(a)); }
Expr log(Expr a) { return Expr::apply(Function::Log, std::move(a)); }
Expr sqrt(Expr a) { return Expr::apply(Function::Sqrt, std::move(a)); }
Expr sinh(Expr a) { return Expr::apply(Function::Sinh, std::move(a)); }
Expr cosh(Expr a) { return Expr::apply(Function::Cosh, std::move(a)); }
Expr tanh(Expr a) { return Expr::apply(Function::Tanh, std::move(a)); }
Expr pow(Expr a, int n) { return Expr::power(std::move(a), n); }

namespace {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case NodeKind::Constant: {
      const double v = e.constant_value();
      if (std::signbit(v)) {
        out += "(-";
        out += format_number(-v);
        out += ')';
      } else {
        out += format_number(v);
      }
      return;
    }
    case NodeKind::Variable:
      out += 'x';
      out += static_cast<char>('1' + e.variable_axis());
      return;
    case NodeKind::Negate:
      out += "(-";
      print(e.lhs(), out);
      out += ')';
      return;
    case NodeKind::Power:
      out += '(';
      print(e.lhs(), out);
      out += '^';
      if (e.exponent() < 0) {
        out += "(" + std::to_string(e.exponent()) + ")";
      } else {
        out += std::to_string(e.exponent());
      }
      out += ')';
      return;
    case NodeKind::Function:
      out += function_name(e.function());
      out += '(';
      print(e.lhs(), out);
      out += ')';
      return;
    case NodeKind::Add:
    case NodeKind::Subtract:
    case NodeKind::Multiply:
    case NodeKind::Divide: {
      const char op = e.kind() == NodeKind::Add        ? '+'
                      : e.kind() == NodeKind::Subtract ? '-'
                      : e.kind() == NodeKind::Multiply ? '*'
                                                       : '/';
      out += '(';
      print(e.lhs(), out);
      out += ' ';
      out += op;
      out += ' ';
      print(e.rhs(), out);
      out += ')';
      return;
    }
  }
}

double checked(double v, std::string_view what) {
  if (!std::isfinite(v)) throw DomainError("non-finite result in " + std::string(what));
  return v;
}

double apply_function(Function f, double x) {
  switch (f) {
    case Function::Sin: return std::sin(x);
    case Function::Cos: return std::cos(x);
    case Function::Tan: return std::tan(x);
    case Function::Exp: return std::exp(x);
    case Function::Log:
      if (!(x > 0.0)) throw DomainError("log of non-positive value");
      return std::log(x);
    case Function::Sqrt:
      if (x < 0.0) throw DomainError("sqrt of negative value");
      return std::sqrt(x);
    case Function::Sinh: return std::sinh(x);
    case Function::Cosh: return std::cosh(x);
    case Function::Tanh: return std::tanh(x);
  }
  return x;
}

Jet3 apply_function(Function f, const Jet3& x) {
  switch (f) {
    case Function::Sin: return sin(x);
    case Function::Cos: return cos(x);
    case Function::Tan: return tan(x);
    case Function::Exp: return exp(x);
    case Function::Log: return log(x);
    case Function::Sqrt: return sqrt(x);
    case Function::Sinh: return sinh(x);
    case Function::Cosh: return cosh(x);
    case Function::Tanh: return tanh(x);
  }
  return x;
}

Jet3 checked(const Jet3& j, std::string_view what) {
  for (const double c : j.coefficients()) {
    if (!std::isfinite(c)) throw DomainError("non-finite jet in " + std::string(what));
  }
  return j;
}

template <class T>
T evaluate(const Expr& e, const std::array<T, 3>& vars) {
  switch (e.kind()) {
    case NodeKind::Constant: return T(e.constant_value());
    case NodeKind::Variable: return vars[static_cast<std::size_t>(e.variable_axis())];
    case NodeKind::Negate: return -evaluate(e.lhs(), vars);
    case NodeKind::Add: return checked(evaluate(e.lhs(), vars) + evaluate(e.rhs(), vars), "+");
    case NodeKind::Subtract:
      return checked(evaluate(e.lhs(), vars) - evaluate(e.rhs(), vars), "-");
    case NodeKind::Multiply:
      return checked(evaluate(e.lhs(), vars) * evaluate(e.rhs(), vars), "*");
    case NodeKind::Divide: {
      const T den = evaluate(e.rhs(), vars);
      if (jets::value_of(den) == 0.0) throw DomainError("division by zero");
      return checked(evaluate(e.lhs(), vars) / den, "/");
    }
    case NodeKind::Power: {
      const T base = evaluate(e.lhs(), vars);
      if (e.exponent() < 0 && jets::value_of(base) == 0.0) {
        throw DomainError("negative power of zero");
      }
      if constexpr (std::is_same_v<T, double>) {
        return checked(std::pow(base, e.exponent()), "^");
      } else {
        return checked(pow(base, e.exponent()), "^");
      }
    }
    case NodeKind::Function:
      return checked(apply_function(e.function(), evaluate(e.lhs(), vars)),
                     function_name(e.function()));
  }
  return T(0.0);
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

double eval(const Expr& e, const std::array<double, 3>& point) { return evaluate(e, point); }

Jet3 eval_jet(const Expr& e, const std::array<double, 3>& point) {
  const std::array<Jet3, 3> vars = {Jet3::variable(0, point[0]), Jet3::variable(1, point[1]),
                                    Jet3::variable(2, point[2])};
  return evaluate(e, vars);
}

}  // namespace cottonlab::jets
