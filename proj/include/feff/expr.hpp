#pragma once

#include <memory>
#include <string>
#include <vector>

#include "feff/jets.hpp"

namespace feff {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t offset, std::string expected)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)),
        offset(offset),
        expected(std::move(expected)) {}
  size_t offset;
  std::string expected;  // expected-token summary
};

struct EvalError : std::runtime_error {
  EvalError(const std::string& msg, size_t offset)
      : std::runtime_error(msg + " (subexpression at offset " + std::to_string(offset) + ")"),
        offset(offset) {}
  size_t offset;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

enum class ExprKind { Number, ImagUnit, Pi, Coord, Neg, Add, Sub, Mul, Div, PowInt, Call };
enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Conj };

struct ExprNode {
  ExprKind kind;
  double number = 0.0;      // Number
  int coord = 0;            // Coord: 0=x 1=y 2=u 3=phi
  int exponent = 0;         // PowInt
  Func fn = Func::Sin;      // Call
  ExprPtr a, b;             // operands
  size_t offset = 0;        // source byte offset (0 for built exprs)
};

// Parsed complex-valued scalar-field expression over the chart coordinates.
class ScalarFieldExpr {
 public:
  ScalarFieldExpr() = default;
  explicit ScalarFieldExpr(ExprPtr root) : root_(std::move(root)) {}

  static ScalarFieldExpr parse(const std::string& source);

  const ExprPtr& root() const { return root_; }
  bool empty() const { return root_ == nullptr; }

  std::string pretty_print() const;
  bool depends_on(int coord) const;

  Jet eval_jet(const std::array<double, 4>& point, int order) const;
  cplx eval(const std::array<double, 4>& point) const;

 private:
  ExprPtr root_;
};

// Expression builders (used by scenario construction and test oracles).
ScalarFieldExpr expr_num(double v);
ScalarFieldExpr expr_i();
ScalarFieldExpr expr_coord(int coord);
ScalarFieldExpr expr_neg(const ScalarFieldExpr& a);
ScalarFieldExpr expr_add(const ScalarFieldExpr& a, const ScalarFieldExpr& b);
ScalarFieldExpr expr_sub(const ScalarFieldExpr& a, const ScalarFieldExpr& b);
ScalarFieldExpr expr_mul(const ScalarFieldExpr& a, const ScalarFieldExpr& b);
ScalarFieldExpr expr_div(const ScalarFieldExpr& a, const ScalarFieldExpr& b);
ScalarFieldExpr expr_pow(const ScalarFieldExpr& a, int n);
ScalarFieldExpr expr_call(Func fn, const ScalarFieldExpr& a);
ScalarFieldExpr expr_scaled(cplx c, const ScalarFieldExpr& a);
ScalarFieldExpr expr_const(cplx c);

// Constant folding and trivial-identity elimination; exact rewrites only.
ScalarFieldExpr simplify(const ScalarFieldExpr& e);

// Syntactic partial derivative with respect to a chart coordinate.  Exact on
// the full operator set except conj of non-analytic arguments is handled by
// splitting into real chart dependence.
ScalarFieldExpr syntactic_derivative(const ScalarFieldExpr& e, int coord);

}  // namespace feff
