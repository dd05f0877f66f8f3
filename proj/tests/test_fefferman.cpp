#include <cmath>
#include <random>

#include "doctest.h"
#include "feff/chart.hpp"

using namespace feff;

namespace {

BaseCoframe heisenberg() {
  BaseCoframe cf;
  cf.theta[0] = ScalarField::from_expr(ScalarFieldExpr::parse("-y"));
  cf.theta[1] = ScalarField::from_expr(ScalarFieldExpr::parse("x"));
  cf.theta[2] = ScalarField::constant(1.0);
  cf.theta1[0] = ScalarField::constant(1.0);
  cf.theta1[1] = ScalarField::constant(cplx(0, 1));
  cf.theta1[2] = ScalarField::constant(0.0);
  return cf;
}

std::vector<Pt> sample_points(int n, unsigned seed, double box = 0.8) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-box, box);
  std::uniform_real_distribution<double> ph(-3.0, 3.0);
  std::vector<Pt> pts;
  for (int i = 0; i < n; ++i) pts.push_back(Pt{dist(rng), dist(rng), dist(rng), ph(rng)});
  return pts;
}

PerturbationData small_pert() {
  PerturbationData pd;
  pd.xi_alpha[0] = ScalarField::from_expr(ScalarFieldExpr::parse("0.05 + 0.02*i*x"));
  pd.xi_alpha[-2] = ScalarField::from_expr(ScalarFieldExpr::parse("0.03*y + 0.01*i"));
  pd.xi_zero[0] = ScalarField::from_expr(ScalarFieldExpr::parse("0.04 + 0.02*x*y"));
  pd.xi_zero[2] = ScalarField::from_expr(ScalarFieldExpr::parse("0.05*i + 0.01*u"));
  pd.xi_zero[4] = ScalarField::from_expr(ScalarFieldExpr::parse("0.1 + 0.2*i"));
  return pd;
}

}  // namespace

TEST_CASE("fefferman: Heisenberg metric shape and flatness") {
  FeffermanChart chart(heisenberg(), PerturbationData{});
  auto pts = sample_points(12, 3);
  for (const Pt& p : pts) {
    MetricJets g = chart.metric_jets(p, 0);
    // g(dphi-leg, dphi-leg) = 0 and g(k, .) = 2 theta
    CHECK(std::abs(g[3][3].value()) < 1e-13);
    CHECK(std::abs(g[3][0].value() - cplx(2.0 * (-p[1]))) < 1e-12);
    CHECK(std::abs(g[3][1].value() - cplx(2.0 * p[0])) < 1e-12);
    CHECK(std::abs(g[3][2].value() - cplx(2.0)) < 1e-12);
    CHECK(is_lorentzian(chart.metric_jets(p, 0)));
  }
  // Weyl vanishes identically for the flat CR structure
  MetricField mf = chart.metric_field();
  for (const Pt& p : sample_points(12, 7)) {
    CurvaturePack pk = curvature_at(mf, p, 2);
    double worst = 0.0;
    for (auto& r3 : pk.weyl)
      for (auto& r2 : r3)
        for (auto& r1 : r2)
          for (auto& e : r1) worst = std::max(worst, std::abs(e.value()));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("fefferman: perturbation assembles with conjugate symmetry") {
  PerturbationData pd = small_pert();
  ScalarField xi0 = assemble_zero(pd);
  ScalarField xia = assemble_alpha(pd);
  for (const Pt& p : sample_points(20, 11)) {
    CHECK(std::abs(xi0.value(p).imag()) < 1e-12);  // real one-form component
    // expansion shape: xi_alpha carries only modes {0,-2}
    cplx direct = pd.xi_alpha_mode(0).value(p) +
                  pd.xi_alpha_mode(-2).value(p) * std::exp(cplx(0, -2 * p[3]));
    CHECK(std::abs(xia.value(p) - direct) < 1e-13);
  }
  // all-zero data gives the zero form
  PerturbationData none;
  ScalarField z = assemble_zero(none);
  CHECK(std::abs(z.value(Pt{0.1, 0.2, 0.3, 0.4})) < 1e-15);
}

TEST_CASE("fefferman: null frame pairings and congruence invariants") {
  FeffermanChart chart(heisenberg(), small_pert());
  for (const Pt& p : sample_points(8, 17, 0.6)) {
    auto chk = chart.frame_check(p);
    CHECK(chk.pairing < 1e-10);
    CHECK(chk.geodesic < 1e-8);
    CHECK(chk.shear < 1e-8);
    CHECK(chk.twist > 0.1);  // contact structure upstairs
  }
}

TEST_CASE("fefferman: metric is 2 pi periodic in the fiber") {
  FeffermanChart chart(heisenberg(), small_pert());
  for (const Pt& p : sample_points(6, 23, 0.6)) {
    Pt q = p;
    q[3] += 2 * M_PI;
    MetricJets a = chart.metric_jets(p, 0);
    MetricJets b = chart.metric_jets(q, 0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(std::abs(a[static_cast<size_t>(i)][static_cast<size_t>(j)].value() -
                       b[static_cast<size_t>(i)][static_cast<size_t>(j)].value()) < 1e-12);
  }
}

TEST_CASE("fefferman: signature survives small perturbations") {
  FeffermanChart chart(heisenberg(), small_pert());
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(-0.9, 0.9);
  std::uniform_real_distribution<double> ph(-M_PI, M_PI);
  for (int t = 0; t < 100; ++t) {
    Pt p{dist(rng), dist(rng), dist(rng), ph(rng)};
    MetricJets g = chart.metric_jets(p, 0);
    CHECK(is_lorentzian(g));
    // det < 0 for Lorentzian signature
    double det = 0.0;
    {
      std::array<std::array<double, 4>, 4> m = metric_values(g);
      // direct 4x4 determinant
      auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return m[static_cast<size_t>(r0)][static_cast<size_t>(c0)] *
                   (m[static_cast<size_t>(r1)][static_cast<size_t>(c1)] * m[static_cast<size_t>(r2)][static_cast<size_t>(c2)] -
                    m[static_cast<size_t>(r1)][static_cast<size_t>(c2)] * m[static_cast<size_t>(r2)][static_cast<size_t>(c1)]) -
               m[static_cast<size_t>(r0)][static_cast<size_t>(c1)] *
                   (m[static_cast<size_t>(r1)][static_cast<size_t>(c0)] * m[static_cast<size_t>(r2)][static_cast<size_t>(c2)] -
                    m[static_cast<size_t>(r1)][static_cast<size_t>(c2)] * m[static_cast<size_t>(r2)][static_cast<size_t>(c0)]) +
               m[static_cast<size_t>(r0)][static_cast<size_t>(c2)] *
                   (m[static_cast<size_t>(r1)][static_cast<size_t>(c0)] * m[static_cast<size_t>(r2)][static_cast<size_t>(c1)] -
                    m[static_cast<size_t>(r1)][static_cast<size_t>(c1)] * m[static_cast<size_t>(r2)][static_cast<size_t>(c0)]);
      };
      det = m[0][0] * det3(1, 2, 3, 1, 2, 3) - m[0][1] * det3(1, 2, 3, 0, 2, 3) +
            m[0][2] * det3(1, 2, 3, 0, 1, 3) - m[0][3] * det3(1, 2, 3, 0, 1, 2);
    }
    CHECK(det < 0.0);
  }
}

TEST_CASE("fefferman: lambda mode relation to the connection") {
  // lambda_alpha^{(0)} = i sigma^{-1} nabla_1 sigma + xi_1^{(0)} = (i/3) Gamma_1 + xi
  PerturbationData pd = small_pert();
  FeffermanChart chart(heisenberg(), pd);
  for (const Pt& p : sample_points(10, 41)) {
    cplx expect = pd.xi_alpha_mode(0).value(p) +
                  pd.xi_alpha_mode(-2).value(p) * std::exp(cplx(0, -2 * p[3]));
    CHECK(std::abs(chart.lambda_alpha().value(p) - expect) < 1e-12);  // Gamma = 0 flat
  }
}
