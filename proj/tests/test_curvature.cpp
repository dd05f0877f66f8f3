#include <cmath>
#include <random>

#include "doctest.h"
#include "feff/curvature.hpp"

using namespace feff;

namespace {

// A curved Riemannian test metric: round four-sphere of radius 1 in
// stereographic coordinates, g = Omega^2 delta with Omega = 2/(1+|x|^2).
MetricField round_sphere() {
  ScalarFieldExpr om = ScalarFieldExpr::parse("2/(1 + x^2 + y^2 + u^2 + phi^2)");
  ScalarField omega = ScalarField::from_expr(om);
  return [omega](const Pt& p, int order) {
    MetricJets g;
    Jet o2 = omega.eval(p, order);
    o2 = o2 * o2;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        g[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            (i == j) ? o2 : Jet::constant(0.0, order);
    return g;
  };
}

// A generic curved Lorentzian metric without symmetry, used for identity and
// oracle checks.
MetricField bumpy_metric() {
  ScalarField x = ScalarField::coordinate(0), y = ScalarField::coordinate(1),
              u = ScalarField::coordinate(2), t = ScalarField::coordinate(3);
  ScalarField a = ScalarField::from_expr(ScalarFieldExpr::parse("1 + 0.1*sin(x)*cos(y)"));
  ScalarField b = ScalarField::from_expr(ScalarFieldExpr::parse("1 + 0.08*u^2"));
  ScalarField c = ScalarField::from_expr(ScalarFieldExpr::parse("0.05*x*u"));
  ScalarField d = ScalarField::from_expr(ScalarFieldExpr::parse("1 + 0.06*exp(0.3*y)"));
  ScalarField e = ScalarField::from_expr(ScalarFieldExpr::parse("0.04*sin(phi + x)"));
  return [=](const Pt& p, int order) {
    MetricJets g;
    for (auto& row : g)
      for (auto& el : row) el = Jet::constant(0.0, order);
    g[0][0] = a.eval(p, order);
    g[1][1] = b.eval(p, order);
    g[2][2] = d.eval(p, order);
    g[3][3] = -1.0 * (ScalarField::constant(1.0) + 0.07 * x * x).eval(p, order);
    Jet off = c.eval(p, order);
    g[0][1] = off;
    g[1][0] = off;
    Jet off2 = e.eval(p, order);
    g[2][3] = off2;
    g[3][2] = off2;
    (void)y;
    (void)u;
    (void)t;
    return g;
  };
}

std::vector<Pt> sample_points(int n, unsigned seed, double box = 0.7) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-box, box);
  std::vector<Pt> pts;
  for (int i = 0; i < n; ++i) pts.push_back(Pt{dist(rng), dist(rng), dist(rng), dist(rng)});
  return pts;
}

}  // namespace

TEST_CASE("curvature: flat Lorentzian metric has vanishing pack") {
  MetricField g = constant_metric({1, 1, 1, -1});
  Pt p{0.3, -0.2, 0.5, 0.1};
  CurvaturePack pk = curvature_at(g, p, 4);
  double worst = 0.0;
  for (auto& r3 : pk.riemann)
    for (auto& r2 : r3)
      for (auto& r1 : r2)
        for (auto& e : r1) worst = std::max(worst, std::abs(e.value()));
  CHECK(worst < 1e-14);
  CHECK(std::abs(pk.scalar.value()) < 1e-14);
  CHECK(pk.has_bach);
  for (auto& row : pk.bach)
    for (auto& e : row) CHECK(std::abs(e.value()) < 1e-14);
  CHECK(is_lorentzian(pk.g));
}

TEST_CASE("curvature: round sphere pins the sign conventions") {
  MetricField g = round_sphere();
  for (const Pt& p : sample_points(5, 3, 0.5)) {
    CurvaturePack pk = curvature_at(g, p, 4);
    // unit S^4: Sc = 12, Ric = 3 g, Weyl = 0, Cotton = 0, Bach = 0
    CHECK(std::abs(pk.scalar.value() - cplx(12.0)) < 1e-9);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        cplx ric = pk.ricci[static_cast<size_t>(a)][static_cast<size_t>(b)].value();
        cplx gv = pk.g[static_cast<size_t>(a)][static_cast<size_t>(b)].value();
        CHECK(std::abs(ric - 3.0 * gv) < 1e-9);
      }
    for (auto& r3 : pk.weyl)
      for (auto& r2 : r3)
        for (auto& r1 : r2)
          for (auto& e : r1) CHECK(std::abs(e.value()) < 1e-8);
    for (auto& r2 : pk.cotton)
      for (auto& r1 : r2)
        for (auto& e : r1) CHECK(std::abs(e.value()) < 1e-8);
    for (auto& row : pk.bach)
      for (auto& e : row) CHECK(std::abs(e.value()) < 1e-7);
  }
}

TEST_CASE("curvature: conformally flat metric has zero Weyl and Cotton") {
  ScalarField f = ScalarField::from_expr(ScalarFieldExpr::parse("exp(x)"));
  MetricField g = conformal_metric(constant_metric({1, 1, 1, -1}), f * f);
  for (const Pt& p : sample_points(4, 11, 0.4)) {
    CurvaturePack pk = curvature_at(g, p, 3);
    for (auto& r3 : pk.weyl)
      for (auto& r2 : r3)
        for (auto& r1 : r2)
          for (auto& e : r1) CHECK(std::abs(e.value()) < 1e-10);
    for (auto& r2 : pk.cotton)
      for (auto& r1 : r2)
        for (auto& e : r1) CHECK(std::abs(e.value()) < 1e-9);
  }
}

TEST_CASE("curvature: pack invariants hold on a generic metric") {
  MetricField g = bumpy_metric();
  for (const Pt& p : sample_points(6, 17, 0.6)) {
    CurvaturePack pk = curvature_at(g, p, 4);
    PackInvariants inv = pack_invariants(pk);
    CHECK(inv.riemann_symmetry < 1e-9);
    CHECK(inv.first_bianchi < 1e-9);
    CHECK(inv.weyl_trace < 1e-9);
    CHECK(inv.ricci_schouten < 1e-10);
    CHECK(inv.bach_symmetry < 1e-8);
    CHECK(inv.bach_trace < 1e-8);
    CHECK(is_lorentzian(pk.g));
  }
}

TEST_CASE("curvature: contracted Bianchi identity") {
  MetricField g = bumpy_metric();
  for (const Pt& p : sample_points(4, 23, 0.5)) {
    CHECK(bianchi_contracted_check(g, p) < 1e-7);
  }
  CHECK(bianchi_contracted_check(constant_metric({1, 1, 1, -1}), Pt{0, 0, 0, 0}) < 1e-14);
}

TEST_CASE("curvature: jets agree with the finite-difference oracle") {
  MetricField g = bumpy_metric();
  for (const Pt& p : sample_points(20, 29, 0.6)) {
    CurvaturePack pk = curvature_at(g, p, 2);
    FDCurvature fd = curvature_fd(g, p, 1e-3);
    double scale = 0.0, diff = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            double jet =
                pk.riemann[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)]
                          [static_cast<size_t>(d)]
                    .value()
                    .real();
            double ref = fd.riemann[static_cast<size_t>(a)][static_cast<size_t>(b)]
                                   [static_cast<size_t>(c)][static_cast<size_t>(d)];
            scale = std::max(scale, std::abs(ref));
            diff = std::max(diff, std::abs(jet - ref));
          }
    CHECK(diff < 1e-5 * (1.0 + scale));
    CHECK(std::abs(pk.scalar.value().real() - fd.scalar) < 1e-5 * (1.0 + std::abs(fd.scalar)));
  }
}

TEST_CASE("curvature: conformal transformation laws") {
  MetricField g = bumpy_metric();
  ScalarField zero = ScalarField::constant(0.0);
  Pt p{0.2, -0.3, 0.4, 0.1};
  ConformalCheck c0 = conformal_transform_check(g, zero, p);
  CHECK(c0.schouten_law < 1e-12);
  CHECK(c0.cotton_law < 1e-12);
  CHECK(c0.weyl_scaling < 1e-12);
  CHECK(c0.bach_invariance < 1e-12);

  ScalarField f = ScalarField::from_expr(ScalarFieldExpr::parse("0.1*x"));
  for (const Pt& q : sample_points(3, 31, 0.5)) {
    ConformalCheck c = conformal_transform_check(g, f, q);
    CHECK(c.schouten_law < 1e-7);
    CHECK(c.schouten_scalar_law < 1e-7);
    CHECK(c.cotton_law < 1e-7);
    CHECK(c.weyl_scaling < 1e-7);
    CHECK(c.bach_invariance < 1e-7);
  }
}

TEST_CASE("curvature: insufficient order raises") {
  MetricField g = constant_metric({1, 1, 1, -1});
  CHECK_THROWS_AS(curvature_at(g, Pt{0, 0, 0, 0}, 1), CurvatureError);
  CurvaturePack pk = curvature_at(g, Pt{0, 0, 0, 0}, 3);
  CHECK(pk.has_cotton);
  CHECK(!pk.has_bach);
}
