#include <cmath>
#include <random>

#include "doctest.h"
#include "feff/expr.hpp"

using namespace feff;

namespace {

// Plain complex evaluator used as the order-0 oracle.
cplx eval_plain(const ExprPtr& n, const std::array<double, 4>& p) {
  switch (n->kind) {
    case ExprKind::Number: return n->number;
    case ExprKind::ImagUnit: return cplx(0, 1);
    case ExprKind::Pi: return M_PI;
    case ExprKind::Coord: return p[static_cast<size_t>(n->coord)];
    case ExprKind::Neg: return -eval_plain(n->a, p);
    case ExprKind::Add: return eval_plain(n->a, p) + eval_plain(n->b, p);
    case ExprKind::Sub: return eval_plain(n->a, p) - eval_plain(n->b, p);
    case ExprKind::Mul: return eval_plain(n->a, p) * eval_plain(n->b, p);
    case ExprKind::Div: return eval_plain(n->a, p) / eval_plain(n->b, p);
    case ExprKind::PowInt: return std::pow(eval_plain(n->a, p), n->exponent);
    case ExprKind::Call: {
      cplx a = eval_plain(n->a, p);
      switch (n->fn) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Tan: return std::tan(a);
        case Func::Exp: return std::exp(a);
        case Func::Log: return std::log(a);
        case Func::Sqrt: return std::sqrt(a);
        case Func::Conj: return std::conj(a);
      }
    }
  }
  return 0.0;
}

ScalarFieldExpr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 8);
  std::uniform_real_distribution<double> num(0.1, 2.5);
  std::uniform_int_distribution<int> coord(0, 3);
  switch (pick(rng)) {
    case 0: return expr_num(num(rng));
    case 1: return expr_i();
    case 2:
    case 3: return expr_coord(coord(rng));
    case 4: return expr_add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: return expr_mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 6: return expr_call(Func::Sin, random_expr(rng, depth - 1));
    case 7: return expr_call(Func::Cos, random_expr(rng, depth - 1));
    default: return expr_call(Func::Exp, random_expr(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("expr: grammar basics") {
  auto e = ScalarFieldExpr::parse("cos(phi)^2");
  CHECK(e.root()->kind == ExprKind::PowInt);
  CHECK(e.root()->a->kind == ExprKind::Call);

  std::array<double, 4> p{0, 0, 0, 1.1};
  CHECK(std::abs(e.eval(p) - cplx(std::cos(1.1) * std::cos(1.1))) < 1e-15);

  // per the grammar, unary minus is part of the atom: -x^2 == (-x)^2
  auto f = ScalarFieldExpr::parse("-x^2 + 2*x/4");
  std::array<double, 4> q{3, 0, 0, 0};
  CHECK(std::abs(f.eval(q) - cplx(9.0 + 1.5)) < 1e-15);
  auto f2 = ScalarFieldExpr::parse("-x^3");
  CHECK(std::abs(f2.eval(q) - cplx(-27.0)) < 1e-15);

  auto g = ScalarFieldExpr::parse("2^-2");
  CHECK(std::abs(g.eval(q) - cplx(0.25)) < 1e-15);
}

TEST_CASE("expr: syntax errors carry byte offsets") {
  try {
    ScalarFieldExpr::parse("x + * y");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset == 4);
    CHECK(!e.expected.empty());
  }

  CHECK_THROWS_AS(ScalarFieldExpr::parse("bogus(x)"), ParseError);
  CHECK_THROWS_AS(ScalarFieldExpr::parse("sin x"), ParseError);
  CHECK_THROWS_AS(ScalarFieldExpr::parse("(x"), ParseError);
  CHECK_THROWS_AS(ScalarFieldExpr::parse("x y"), ParseError);
  CHECK_THROWS_AS(ScalarFieldExpr::parse("x^y"), ParseError);
}

TEST_CASE("expr: modulus identity via conj") {
  auto e = ScalarFieldExpr::parse("(x+i*y)*conj(x+i*y)");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-2, 2);
  for (int t = 0; t < 50; ++t) {
    std::array<double, 4> p{dist(rng), dist(rng), dist(rng), dist(rng)};
    cplx v = e.eval(p);
    CHECK(std::abs(v - cplx(p[0] * p[0] + p[1] * p[1])) < 1e-13);
  }
}

TEST_CASE("expr: eval_jet coordinate and series behaviour") {
  auto e = ScalarFieldExpr::parse("u");
  std::array<double, 4> p{0, 0, 5, 0};
  Jet j = e.eval_jet(p, 2);
  CHECK(j.value() == cplx(5.0));
  CHECK(jet_extract(j, {0, 0, 1, 0}) == cplx(1.0));

  auto f = ScalarFieldExpr::parse("exp(x*y)");
  std::array<double, 4> q{0, 0, 0.3, 0.7};
  Jet jf = f.eval_jet(q, 3);
  // series: exp(xy) = 1 + xy + ... so the mixed second partial at x=y=0 is 1
  CHECK(std::abs(jet_extract(jf, {1, 1, 0, 0}) - cplx(1.0)) < 1e-14);

  auto s = ScalarFieldExpr::parse("sqrt(x)");
  std::array<double, 4> z{0, 1, 1, 1};
  CHECK_THROWS_AS(s.eval_jet(z, 2), EvalError);
}

TEST_CASE("expr: pretty-print / parse round trip is idempotent") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    ScalarFieldExpr e = random_expr(rng, 4);
    std::string p1 = e.pretty_print();
    ScalarFieldExpr r = ScalarFieldExpr::parse(p1);
    std::string p2 = r.pretty_print();
    CHECK(p1 == p2);
    std::array<double, 4> pt{0.3, -0.2, 0.9, 0.4};
    CHECK(std::abs(e.eval(pt) - r.eval(pt)) < 1e-12 * (1 + std::abs(e.eval(pt))));
  }
}

TEST_CASE("expr: order-0 evaluation matches plain complex arithmetic") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  for (int t = 0; t < 1000; ++t) {
    ScalarFieldExpr e = random_expr(rng, 3);
    std::array<double, 4> p{dist(rng), dist(rng), dist(rng), dist(rng)};
    cplx a = e.eval(p);
    cplx b = eval_plain(e.root(), p);
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)));
  }
}

TEST_CASE("expr: syntactic derivative matches first-order jet coefficient") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 120; ++t) {
    ScalarFieldExpr e = random_expr(rng, 3);
    std::array<double, 4> p{dist(rng), dist(rng), dist(rng), dist(rng)};
    for (int v = 0; v < 4; ++v) {
      ScalarFieldExpr de = syntactic_derivative(e, v);
      cplx dv = de.eval(p);
      Jet j = e.eval_jet(p, 1);
      MultiIndex mi{0, 0, 0, 0};
      mi[v] = 1;
      cplx jv = jet_extract(j, mi);
      CHECK(std::abs(dv - jv) <= 1e-10 * (1.0 + std::abs(jv)));
      ++checked;
    }
  }
  CHECK(checked >= 120);
}
