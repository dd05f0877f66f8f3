#include "feff/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace feff {

namespace {

const char* kCoordNames[4] = {"x", "y", "u", "phi"};

ExprPtr node(ExprKind kind) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  return n;
}

ExprPtr binary(ExprKind kind, ExprPtr a, ExprPtr b, size_t off) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  n->offset = off;
  return n;
}

struct Parser {
  const std::string& src;
  size_t pos = 0;

  explicit Parser(const std::string& s) : src(s) {}

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& expected) {
    skip_ws();
    if (pos >= src.size() || src[pos] != c)
      throw ParseError("syntax error", pos, expected);
    ++pos;
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (true) {
      skip_ws();
      size_t off = pos;
      if (accept('+'))
        lhs = binary(ExprKind::Add, lhs, parse_term(), off);
      else if (accept('-'))
        lhs = binary(ExprKind::Sub, lhs, parse_term(), off);
      else
        return lhs;
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    while (true) {
      skip_ws();
      size_t off = pos;
      if (accept('*'))
        lhs = binary(ExprKind::Mul, lhs, parse_factor(), off);
      else if (accept('/'))
        lhs = binary(ExprKind::Div, lhs, parse_factor(), off);
      else
        return lhs;
    }
  }

  ExprPtr parse_factor() {
    ExprPtr base = parse_atom();
    skip_ws();
    if (accept('^')) {
      size_t off = pos;
      bool neg = accept('-');
      skip_ws();
      if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
        throw ParseError("syntax error", pos, "integer exponent");
      long v = 0;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        v = v * 10 + (src[pos] - '0');
        ++pos;
      }
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprKind::PowInt;
      n->a = base;
      n->exponent = static_cast<int>(neg ? -v : v);
      n->offset = off;
      return n;
    }
    return base;
  }

  ExprPtr parse_atom() {
    skip_ws();
    size_t off = pos;
    if (pos >= src.size())
      throw ParseError("syntax error", pos, "number, identifier, '(' or '-'");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      ExprPtr inner = parse_expr();
      expect(')', "')'");
      return inner;
    }
    if (c == '-') {
      ++pos;
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprKind::Neg;
      n->a = parse_atom();
      n->offset = off;
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    throw ParseError("syntax error", pos, "number, identifier, '(' or '-'");
  }

  ExprPtr parse_number() {
    size_t off = pos;
    size_t end = pos;
    while (end < src.size() &&
           (std::isdigit(static_cast<unsigned char>(src[end])) || src[end] == '.'))
      ++end;
    if (end < src.size() && (src[end] == 'e' || src[end] == 'E')) {
      size_t e = end + 1;
      if (e < src.size() && (src[e] == '+' || src[e] == '-')) ++e;
      if (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) {
        ++e;
        while (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) ++e;
        end = e;
      }
    }
    double v = 0.0;
    try {
      v = std::stod(src.substr(off, end - off));
    } catch (...) {
      throw ParseError("malformed number", off, "decimal number");
    }
    pos = end;
    auto n = node(ExprKind::Number);
    const_cast<ExprNode*>(n.get())->number = v;
    const_cast<ExprNode*>(n.get())->offset = off;
    return n;
  }

  ExprPtr parse_ident() {
    size_t off = pos;
    size_t end = pos;
    while (end < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_'))
      ++end;
    std::string name = src.substr(off, end - off);
    pos = end;

    auto mk = [&](ExprKind k) {
      auto n = node(k);
      const_cast<ExprNode*>(n.get())->offset = off;
      return n;
    };
    if (name == "i") return mk(ExprKind::ImagUnit);
    if (name == "pi") return mk(ExprKind::Pi);
    for (int c = 0; c < 4; ++c)
      if (name == kCoordNames[c]) {
        auto n = mk(ExprKind::Coord);
        const_cast<ExprNode*>(n.get())->coord = c;
        return n;
      }

    Func fn;
    if (name == "sin") fn = Func::Sin;
    else if (name == "cos") fn = Func::Cos;
    else if (name == "tan") fn = Func::Tan;
    else if (name == "exp") fn = Func::Exp;
    else if (name == "log") fn = Func::Log;
    else if (name == "sqrt") fn = Func::Sqrt;
    else if (name == "conj") fn = Func::Conj;
    else
      throw ParseError("unknown identifier '" + name + "'", off,
                       "coordinate, 'i', 'pi' or function name");

    expect('(', "'(' after function name");
    ExprPtr arg = parse_expr();
    expect(')', "')'");
    auto n = mk(ExprKind::Call);
    const_cast<ExprNode*>(n.get())->fn = fn;
    const_cast<ExprNode*>(n.get())->a = arg;
    return n;
  }
};

int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::Add:
    case ExprKind::Sub: return 1;
    case ExprKind::Mul:
    case ExprKind::Div: return 2;
    case ExprKind::Neg: return 3;
    case ExprKind::PowInt: return 4;
    default: return 5;
  }
}

void print_node(const ExprPtr& n, std::ostream& os, int parent_prec) {
  int prec = precedence(n->kind);
  bool parens = prec < parent_prec;
  if (parens) os << '(';
  switch (n->kind) {
    case ExprKind::Number: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << n->number;
      os << tmp.str();
      break;
    }
    case ExprKind::ImagUnit: os << 'i'; break;
    case ExprKind::Pi: os << "pi"; break;
    case ExprKind::Coord: os << kCoordNames[n->coord]; break;
    case ExprKind::Neg:
      os << '-';
      print_node(n->a, os, prec + 1);
      break;
    case ExprKind::Add:
      print_node(n->a, os, prec);
      os << " + ";
      print_node(n->b, os, prec + 1);
      break;
    case ExprKind::Sub:
      print_node(n->a, os, prec);
      os << " - ";
      print_node(n->b, os, prec + 1);
      break;
    case ExprKind::Mul:
      print_node(n->a, os, prec);
      os << "*";
      print_node(n->b, os, prec + 1);
      break;
    case ExprKind::Div:
      print_node(n->a, os, prec);
      os << "/";
      print_node(n->b, os, prec + 1);
      break;
    case ExprKind::PowInt:
      print_node(n->a, os, prec + 1);
      os << '^';
      if (n->exponent < 0) os << '-';
      os << std::abs(n->exponent);
      break;
    case ExprKind::Call: {
      const char* names[] = {"sin", "cos", "tan", "exp", "log", "sqrt", "conj"};
      os << names[static_cast<int>(n->fn)] << '(';
      print_node(n->a, os, 0);
      os << ')';
      break;
    }
  }
  if (parens) os << ')';
}

Jet eval_node(const ExprPtr& n, const std::array<double, 4>& point, int order) {
  switch (n->kind) {
    case ExprKind::Number: return Jet::constant(n->number, order);
    case ExprKind::ImagUnit: return Jet::constant(cplx(0.0, 1.0), order);
    case ExprKind::Pi: return Jet::constant(M_PI, order);
    case ExprKind::Coord: return Jet::coordinate(point[static_cast<size_t>(n->coord)], n->coord, order);
    case ExprKind::Neg: return -eval_node(n->a, point, order);
    case ExprKind::Add: return eval_node(n->a, point, order) + eval_node(n->b, point, order);
    case ExprKind::Sub: return eval_node(n->a, point, order) - eval_node(n->b, point, order);
    case ExprKind::Mul: return eval_node(n->a, point, order) * eval_node(n->b, point, order);
    case ExprKind::Div: {
      Jet denom = eval_node(n->b, point, order);
      try {
        return eval_node(n->a, point, order) * recip(denom);
      } catch (const SingularInputError& e) {
        throw EvalError(e.what(), n->offset);
      }
    }
    case ExprKind::PowInt: {
      Jet base = eval_node(n->a, point, order);
      try {
        return base.pow_int(n->exponent);
      } catch (const SingularInputError& e) {
        throw EvalError(e.what(), n->offset);
      }
    }
    case ExprKind::Call: {
      Jet arg = eval_node(n->a, point, order);
      try {
        switch (n->fn) {
          case Func::Sin: return sin(arg);
          case Func::Cos: return cos(arg);
          case Func::Tan: return tan(arg);
          case Func::Exp: return exp(arg);
          case Func::Log: return log(arg);
          case Func::Sqrt: return sqrt(arg);
          case Func::Conj: return arg.conj();
        }
      } catch (const SingularInputError& e) {
        throw EvalError(e.what(), n->offset);
      }
      break;
    }
  }
  throw EvalError("invalid expression node", n->offset);
}

bool node_depends(const ExprPtr& n, int coord) {
  if (!n) return false;
  if (n->kind == ExprKind::Coord) return n->coord == coord;
  return node_depends(n->a, coord) || node_depends(n->b, coord);
}

bool is_const(const ExprPtr& n, double v) {
  return n->kind == ExprKind::Number && n->number == v;
}

}  // namespace

ScalarFieldExpr ScalarFieldExpr::parse(const std::string& source) {
  Parser p(source);
  ExprPtr root = p.parse_expr();
  p.skip_ws();
  if (p.pos != source.size())
    throw ParseError("syntax error", p.pos, "operator or end of input");
  return ScalarFieldExpr(root);
}

std::string ScalarFieldExpr::pretty_print() const {
  std::ostringstream os;
  print_node(root_, os, 0);
  return os.str();
}

bool ScalarFieldExpr::depends_on(int coord) const { return node_depends(root_, coord); }

Jet ScalarFieldExpr::eval_jet(const std::array<double, 4>& point, int order) const {
  return eval_node(root_, point, order);
}

cplx ScalarFieldExpr::eval(const std::array<double, 4>& point) const {
  return eval_node(root_, point, 0).value();
}

ScalarFieldExpr expr_num(double v) {
  if (v < 0) return expr_neg(expr_num(-v));
  auto n = node(ExprKind::Number);
  const_cast<ExprNode*>(n.get())->number = v;
  return ScalarFieldExpr(n);
}

ScalarFieldExpr expr_i() { return ScalarFieldExpr(node(ExprKind::ImagUnit)); }

ScalarFieldExpr expr_coord(int coord) {
  auto n = node(ExprKind::Coord);
  const_cast<ExprNode*>(n.get())->coord = coord;
  return ScalarFieldExpr(n);
}

ScalarFieldExpr expr_neg(const ScalarFieldExpr& a) {
  auto n = node(ExprKind::Neg);
  const_cast<ExprNode*>(n.get())->a = a.root();
  return ScalarFieldExpr(n);
}

ScalarFieldExpr expr_add(const ScalarFieldExpr& a, const ScalarFieldExpr& b) {
  return ScalarFieldExpr(binary(ExprKind::Add, a.root(), b.root(), 0));
}

ScalarFieldExpr expr_sub(const ScalarFieldExpr& a, const ScalarFieldExpr& b) {
  return ScalarFieldExpr(binary(ExprKind::Sub, a.root(), b.root(), 0));
}

ScalarFieldExpr expr_mul(const ScalarFieldExpr& a, const ScalarFieldExpr& b) {
  return ScalarFieldExpr(binary(ExprKind::Mul, a.root(), b.root(), 0));
}

ScalarFieldExpr expr_div(const ScalarFieldExpr& a, const ScalarFieldExpr& b) {
  return ScalarFieldExpr(binary(ExprKind::Div, a.root(), b.root(), 0));
}

ScalarFieldExpr expr_pow(const ScalarFieldExpr& a, int nexp) {
  auto n = node(ExprKind::PowInt);
  const_cast<ExprNode*>(n.get())->a = a.root();
  const_cast<ExprNode*>(n.get())->exponent = nexp;
  return ScalarFieldExpr(n);
}

ScalarFieldExpr expr_call(Func fn, const ScalarFieldExpr& a) {
  auto n = node(ExprKind::Call);
  const_cast<ExprNode*>(n.get())->fn = fn;
  const_cast<ExprNode*>(n.get())->a = a.root();
  return ScalarFieldExpr(n);
}

ScalarFieldExpr expr_const(cplx c) {
  if (c.imag() == 0.0) return expr_num(c.real());
  ScalarFieldExpr im = expr_mul(expr_num(std::abs(c.imag())), expr_i());
  if (c.imag() < 0) im = expr_neg(im);
  if (c.real() == 0.0) return im;
  return expr_add(expr_num(c.real()), im);
}

ScalarFieldExpr expr_scaled(cplx c, const ScalarFieldExpr& a) {
  if (c == cplx(0.0)) return expr_num(0.0);
  if (c == cplx(1.0)) return a;
  return expr_mul(expr_const(c), a);
}

namespace {

ExprPtr simplify_node(const ExprPtr& n) {
  if (!n) return n;
  if (!n->a && !n->b) return n;
  auto m = std::make_shared<ExprNode>(*n);
  m->a = simplify_node(n->a);
  m->b = simplify_node(n->b);

  auto num = [](const ExprPtr& p, double v) { return is_const(p, v); };
  auto both_num = [&](double& x, double& y) {
    if (m->a && m->b && m->a->kind == ExprKind::Number && m->b->kind == ExprKind::Number) {
      x = m->a->number;
      y = m->b->number;
      return true;
    }
    return false;
  };

  double x, y;
  switch (m->kind) {
    case ExprKind::Add:
      if (num(m->a, 0.0)) return m->b;
      if (num(m->b, 0.0)) return m->a;
      if (both_num(x, y)) return expr_num(x + y).root();
      break;
    case ExprKind::Sub:
      if (num(m->b, 0.0)) return m->a;
      if (both_num(x, y) && x >= y) return expr_num(x - y).root();
      break;
    case ExprKind::Mul:
      if (num(m->a, 0.0) || num(m->b, 0.0)) return expr_num(0.0).root();
      if (num(m->a, 1.0)) return m->b;
      if (num(m->b, 1.0)) return m->a;
      if (both_num(x, y)) return expr_num(x * y).root();
      break;
    case ExprKind::Div:
      if (num(m->a, 0.0)) return expr_num(0.0).root();
      if (num(m->b, 1.0)) return m->a;
      break;
    case ExprKind::Neg:
      if (m->a->kind == ExprKind::Neg) return m->a->a;
      if (num(m->a, 0.0)) return m->a;
      break;
    case ExprKind::PowInt:
      if (m->exponent == 1) return m->a;
      if (m->exponent == 0) return expr_num(1.0).root();
      break;
    default: break;
  }
  return m;
}

ExprPtr derive(const ExprPtr& n, int coord);

ExprPtr d_call(const ExprPtr& n, int coord) {
  ExprPtr da = derive(n->a, coord);
  ScalarFieldExpr arg(n->a), darg(da);
  switch (n->fn) {
    case Func::Sin: return expr_mul(expr_call(Func::Cos, arg), darg).root();
    case Func::Cos: return expr_neg(expr_mul(expr_call(Func::Sin, arg), darg)).root();
    case Func::Tan: {
      ScalarFieldExpr sec2 = expr_div(expr_num(1.0), expr_pow(expr_call(Func::Cos, arg), 2));
      return expr_mul(sec2, darg).root();
    }
    case Func::Exp: return expr_mul(expr_call(Func::Exp, arg), darg).root();
    case Func::Log: return expr_div(darg, arg).root();
    case Func::Sqrt: {
      ScalarFieldExpr half = expr_num(0.5);
      return expr_mul(half, expr_div(darg, expr_call(Func::Sqrt, arg))).root();
    }
    case Func::Conj: return expr_call(Func::Conj, darg).root();
  }
  return expr_num(0.0).root();
}

ExprPtr derive(const ExprPtr& n, int coord) {
  switch (n->kind) {
    case ExprKind::Number:
    case ExprKind::ImagUnit:
    case ExprKind::Pi: return expr_num(0.0).root();
    case ExprKind::Coord: return expr_num(n->coord == coord ? 1.0 : 0.0).root();
    case ExprKind::Neg: return expr_neg(ScalarFieldExpr(derive(n->a, coord))).root();
    case ExprKind::Add:
      return expr_add(ScalarFieldExpr(derive(n->a, coord)), ScalarFieldExpr(derive(n->b, coord)))
          .root();
    case ExprKind::Sub:
      return expr_sub(ScalarFieldExpr(derive(n->a, coord)), ScalarFieldExpr(derive(n->b, coord)))
          .root();
    case ExprKind::Mul: {
      ScalarFieldExpr a(n->a), b(n->b);
      return expr_add(expr_mul(ScalarFieldExpr(derive(n->a, coord)), b),
                      expr_mul(a, ScalarFieldExpr(derive(n->b, coord))))
          .root();
    }
    case ExprKind::Div: {
      ScalarFieldExpr a(n->a), b(n->b);
      ScalarFieldExpr da(derive(n->a, coord)), db(derive(n->b, coord));
      return expr_div(expr_sub(expr_mul(da, b), expr_mul(a, db)), expr_pow(b, 2)).root();
    }
    case ExprKind::PowInt: {
      ScalarFieldExpr a(n->a), da(derive(n->a, coord));
      return expr_mul(expr_mul(expr_num(n->exponent), expr_pow(a, n->exponent - 1)), da).root();
    }
    case ExprKind::Call: return d_call(n, coord);
  }
  return expr_num(0.0).root();
}

}  // namespace

ScalarFieldExpr simplify(const ScalarFieldExpr& e) {
  return ScalarFieldExpr(simplify_node(e.root()));
}

ScalarFieldExpr syntactic_derivative(const ScalarFieldExpr& e, int coord) {
  return simplify(ScalarFieldExpr(derive(e.root(), coord)));
}

}  // namespace feff
