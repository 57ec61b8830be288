#include "pnspace/exprlang.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <vector>

namespace pnspace::expr {

namespace {

enum class Op { add, sub, mul, div, pow };

enum class Fn { abs, ln, exp, sin, cos, pow, min, max, spow };

struct FnInfo {
  Fn fn;
  int arity;
};

const std::map<std::string, FnInfo, std::less<>>& function_table() {
  static const std::map<std::string, FnInfo, std::less<>> table = {
      {"abs", {Fn::abs, 1}}, {"ln", {Fn::ln, 1}},   {"exp", {Fn::exp, 1}},
      {"sin", {Fn::sin, 1}}, {"cos", {Fn::cos, 1}}, {"pow", {Fn::pow, 2}},
      {"min", {Fn::min, 2}}, {"max", {Fn::max, 2}}, {"spow", {Fn::spow, 2}},
  };
  return table;
}

} // namespace

struct Node {
  enum class Kind { number, var, neg, binary, call } kind;
  double value = 0.0;                       // number
  int axis = 0;                             // var
  Op op = Op::add;                          // binary
  Fn fn = Fn::abs;                          // call
  std::string fn_name;                      // call
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::number;
  n->value = v;
  return n;
}

NodePtr make_var(int axis) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::var;
  n->axis = axis;
  return n;
}

NodePtr make_neg(NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::neg;
  n->args = {std::move(a)};
  return n;
}

NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::binary;
  n->op = op;
  n->args = {std::move(a), std::move(b)};
  return n;
}

NodePtr make_call(const std::string& name, FnInfo info,
                  std::vector<NodePtr> args) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::call;
  n->fn = info.fn;
  n->fn_name = name;
  n->args = std::move(args);
  return n;
}

// --- recursive-descent parser ------------------------------------------------

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(std::size_t at, const std::string& expected) {
    throw ParseError(at, expected,
                     "parse error at offset " + std::to_string(at) +
                         ": expected " + expected);
  }

  void skip_ws() {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
            text[pos] == '\r'))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  NodePtr parse_expression() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip_ws();
      if (eat('+')) lhs = make_binary(Op::add, lhs, parse_term());
      else if (eat('-')) lhs = make_binary(Op::sub, lhs, parse_term());
      else return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      skip_ws();
      if (eat('*')) lhs = make_binary(Op::mul, lhs, parse_unary());
      else if (eat('/')) lhs = make_binary(Op::div, lhs, parse_unary());
      else return lhs;
    }
  }

  NodePtr parse_unary() {
    if (eat('-')) return make_neg(parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    skip_ws();
    if (eat('^')) {
      // right associative; the exponent may start with a unary minus
      return make_binary(Op::pow, base, parse_unary());
    }
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail(pos, "number, variable, function or '('");
    const char c = text[pos];
    if (c == '(') {
      ++pos;
      NodePtr inner = parse_expression();
      if (!eat(')')) fail(pos, "')'");
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return parse_number();
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return parse_name();
    fail(pos, "number, variable, function or '('");
  }

  NodePtr parse_number() {
    const std::size_t start = pos;
    while (pos < text.size() &&
           ((text[pos] >= '0' && text[pos] <= '9') || text[pos] == '.'))
      ++pos;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      std::size_t e = pos + 1;
      if (e < text.size() && (text[e] == '+' || text[e] == '-')) ++e;
      if (e < text.size() && text[e] >= '0' && text[e] <= '9') {
        pos = e;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      }
    }
    const std::string token(text.substr(start, pos - start));
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) fail(start, "number");
      return make_number(v);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      fail(start, "number");
    }
  }

  NodePtr parse_name() {
    const std::size_t start = pos;
    while (pos < text.size() &&
           ((text[pos] >= 'a' && text[pos] <= 'z') ||
            (text[pos] >= 'A' && text[pos] <= 'Z') ||
            (text[pos] >= '0' && text[pos] <= '9') || text[pos] == '_'))
      ++pos;
    const std::string name(text.substr(start, pos - start));
    if (name == "x") return make_var(0);
    if (name == "y") return make_var(1);
    const auto it = function_table().find(name);
    if (it == function_table().end())
      fail(start, "one of x, y, abs, ln, exp, sin, cos, pow, min, max, spow");
    if (!eat('(')) fail(pos, "'(' after function name");
    std::vector<NodePtr> args;
    args.push_back(parse_expression());
    while (eat(',')) args.push_back(parse_expression());
    if (!eat(')')) fail(pos, "')'");
    if (static_cast<int>(args.size()) != it->second.arity)
      fail(start, name + " takes " + std::to_string(it->second.arity) +
                      " argument(s)");
    return make_call(name, it->second, std::move(args));
  }
};

// --- evaluation ---------------------------------------------------------------

[[noreturn]] void eval_fail(const std::string& what) {
  throw Error(errc::eval_error, what);
}

double check_finite(double v, const char* what) {
  if (!std::isfinite(v)) eval_fail(std::string("non-finite result from ") + what);
  return v;
}

double eval_node(const Node& n, double x, double y) {
  switch (n.kind) {
    case Node::Kind::number:
      return n.value;
    case Node::Kind::var:
      return n.axis == 0 ? x : y;
    case Node::Kind::neg:
      return -eval_node(*n.args[0], x, y);
    case Node::Kind::binary: {
      const double a = eval_node(*n.args[0], x, y);
      const double b = eval_node(*n.args[1], x, y);
      switch (n.op) {
        case Op::add: return check_finite(a + b, "+");
        case Op::sub: return check_finite(a - b, "-");
        case Op::mul: return check_finite(a * b, "*");
        case Op::div:
          if (b == 0.0) eval_fail("division by zero");
          return check_finite(a / b, "/");
        case Op::pow: {
          if (a < 0.0 && b != std::floor(b))
            eval_fail("negative base with non-integer exponent; use spow");
          const double r = std::pow(a, b);
          return check_finite(r, "^");
        }
      }
      eval_fail("bad operator");
    }
    case Node::Kind::call: {
      const double a = eval_node(*n.args[0], x, y);
      switch (n.fn) {
        case Fn::abs: return std::abs(a);
        case Fn::ln:
          if (a <= 0.0) eval_fail("ln of non-positive value");
          return check_finite(std::log(a), "ln");
        case Fn::exp: return check_finite(std::exp(a), "exp");
        case Fn::sin: return std::sin(a);
        case Fn::cos: return std::cos(a);
        case Fn::pow: {
          const double b = eval_node(*n.args[1], x, y);
          if (a < 0.0 && b != std::floor(b))
            eval_fail("negative base with non-integer exponent; use spow");
          return check_finite(std::pow(a, b), "pow");
        }
        case Fn::min: return std::min(a, eval_node(*n.args[1], x, y));
        case Fn::max: return std::max(a, eval_node(*n.args[1], x, y));
        case Fn::spow: {
          const double b = eval_node(*n.args[1], x, y);
          if (a == 0.0) return 0.0;
          const double r = std::pow(std::abs(a), b);
          return check_finite(a > 0.0 ? r : -r, "spow");
        }
      }
      eval_fail("bad function");
    }
  }
  eval_fail("bad node");
}

// --- printing -----------------------------------------------------------------

// precedence levels: 0 add/sub, 1 mul/div, 2 unary minus, 3 pow, 4 atoms
int node_prec(const Node& n) {
  switch (n.kind) {
    case Node::Kind::binary:
      switch (n.op) {
        case Op::add:
        case Op::sub: return 0;
        case Op::mul:
        case Op::div: return 1;
        case Op::pow: return 3;
      }
      return 0;
    case Node::Kind::neg: return 2;
    default: return 4;
  }
}

std::string print_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& child, int min_prec, bool strict, std::string& out) {
  const bool parens = strict ? node_prec(child) <= min_prec
                             : node_prec(child) < min_prec;
  if (parens) out += '(';
  print_node(child, out);
  if (parens) out += ')';
}

void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case Node::Kind::number: {
      if (n.value < 0.0 || (n.value == 0.0 && std::signbit(n.value))) {
        out += '(';
        out += print_number(n.value);
        out += ')';
      } else {
        out += print_number(n.value);
      }
      return;
    }
    case Node::Kind::var:
      out += (n.axis == 0 ? 'x' : 'y');
      return;
    case Node::Kind::neg:
      out += '-';
      print_child(*n.args[0], 2, false, out);
      return;
    case Node::Kind::binary: {
      const int prec = node_prec(n);
      switch (n.op) {
        case Op::add:
          print_child(*n.args[0], prec, false, out);
          out += " + ";
          print_child(*n.args[1], prec, true, out);
          return;
        case Op::sub:
          print_child(*n.args[0], prec, false, out);
          out += " - ";
          print_child(*n.args[1], prec, true, out);
          return;
        case Op::mul:
          print_child(*n.args[0], prec, false, out);
          out += "*";
          print_child(*n.args[1], prec, true, out);
          return;
        case Op::div:
          print_child(*n.args[0], prec, false, out);
          out += "/";
          print_child(*n.args[1], prec, true, out);
          return;
        case Op::pow:
          print_child(*n.args[0], prec, true, out);
          out += "^";
          print_child(*n.args[1], prec - 1, false, out);
          return;
      }
      return;
    }
    case Node::Kind::call: {
      out += n.fn_name;
      out += '(';
      for (std::size_t k = 0; k < n.args.size(); ++k) {
        if (k) out += ", ";
        print_node(*n.args[k], out);
      }
      out += ')';
      return;
    }
  }
}

int node_arity(const Node& n) {
  switch (n.kind) {
    case Node::Kind::number: return 0;
    case Node::Kind::var: return n.axis + 1;
    default: {
      int a = 0;
      for (const auto& c : n.args) a = std::max(a, node_arity(*c));
      return a;
    }
  }
}

bool node_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Node::Kind::number:
      return a.value == b.value ||
             (std::isnan(a.value) && std::isnan(b.value));
    case Node::Kind::var: return a.axis == b.axis;
    case Node::Kind::neg: return node_equal(*a.args[0], *b.args[0]);
    case Node::Kind::binary:
      if (a.op != b.op) return false;
      break;
    case Node::Kind::call:
      if (a.fn != b.fn) return false;
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t k = 0; k < a.args.size(); ++k)
    if (!node_equal(*a.args[k], *b.args[k])) return false;
  return true;
}

} // namespace

Expr Expr::parse(std::string_view text) {
  Parser p{text};
  p.skip_ws();
  if (p.pos >= text.size())
    throw ParseError(0, "expression", "parse error: empty expression");
  NodePtr root = p.parse_expression();
  p.skip_ws();
  if (p.pos != text.size())
    p.fail(p.pos, "end of input or operator");
  return Expr(std::move(root));
}

Expr Expr::number(double v) { return Expr(make_number(v)); }

Expr Expr::variable(int axis) {
  if (axis != 0 && axis != 1)
    throw Error(errc::invalid_argument, "variable axis must be 0 or 1");
  return Expr(make_var(axis));
}

std::string Expr::str() const {
  std::string out;
  print_node(*root_, out);
  return out;
}

int Expr::arity() const { return node_arity(*root_); }

double Expr::eval(double x) const { return eval_node(*root_, x, 0.0); }

double Expr::eval(double x, double y) const { return eval_node(*root_, x, y); }

GridFunction Expr::sample(const Grid& g) const {
  if (arity() > g.dim())
    throw Error(errc::eval_error, "expression uses y on a 1d grid");
  return make_grid_function(
      g, [&](double x, double y) { return eval_node(*root_, x, y); });
}

bool Expr::same_tree(const Expr& other) const {
  return node_equal(*root_, *other.root_);
}

} // namespace pnspace::expr
