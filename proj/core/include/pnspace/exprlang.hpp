#ifndef PNSPACE_EXPRLANG_HPP
#define PNSPACE_EXPRLANG_HPP

#include <memory>
#include <string>
#include <string_view>

#include "pnspace/grid.hpp"

namespace pnspace::expr {

struct Node;

//! Immutable closed-form expression over the variables x, y.
//!
//! Grammar: literals, + - * / ^ (right-assoc), unary -, and the calls
//! abs, ln, exp, sin, cos, pow, min, max, spow. `spow(t, a)` is the signed
//! power |t|^a * sign(t); plain `^` on a negative base with a non-integer
//! exponent is an evaluation error.
class Expr {
public:
  static Expr parse(std::string_view text);
  static Expr number(double v);
  static Expr variable(int axis); // 0 -> x, 1 -> y

  std::string str() const;
  //! Highest variable used: 0 none, 1 x only, 2 x and y.
  int arity() const;
  double eval(double x) const;
  double eval(double x, double y) const;
  GridFunction sample(const Grid& g) const;

  bool same_tree(const Expr& other) const;

private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

} // namespace pnspace::expr

#endif
