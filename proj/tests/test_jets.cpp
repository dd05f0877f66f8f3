#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "feff/jets.hpp"

using namespace feff;

namespace {

// Independent derivative oracle: central finite differences with a step sweep,
// keeping the step whose neighbours agree best.
double fd_second_derivative(const std::function<double(double)>& f, double x) {
  double best = 0.0, best_err = 1e300;
  for (double h : {1e-2, 3e-3, 1e-3, 3e-4, 1e-4}) {
    double d1 = (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    double h2 = h / 2;
    double d2 = (f(x + h2) - 2 * f(x) + f(x - h2)) / (h2 * h2);
    double err = std::abs(d1 - d2);
    if (err < best_err) {
      best_err = err;
      best = d2;
    }
  }
  return best;
}

Jet random_jet(std::mt19937_64& rng, int order) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Jet j(order, cplx(dist(rng), dist(rng)));
  // fill with random coefficients through a polynomial in the seeds
  std::array<double, 4> pt{dist(rng), dist(rng), dist(rng), dist(rng)};
  Jet acc = Jet::constant(cplx(dist(rng), dist(rng)), order);
  for (int v = 0; v < 4; ++v) {
    Jet s = Jet::coordinate(pt[static_cast<size_t>(v)], v, order);
    acc = acc + Jet::constant(cplx(dist(rng), dist(rng)), order) * s +
          Jet::constant(cplx(dist(rng), dist(rng)), order) * s * s;
    acc = acc * (s + Jet::constant(cplx(dist(rng), 0.5 + std::abs(dist(rng))), order));
  }
  return acc + j;
}

}  // namespace

TEST_CASE("jets: coordinate seeds") {
  std::array<double, 4> pt{1, 2, 3, 0};
  Jet x = jet_coordinate(pt, 0, 3);
  CHECK(x.value() == cplx(1.0));
  CHECK(jet_extract(x, {1, 0, 0, 0}) == cplx(1.0));
  CHECK(jet_extract(x, {0, 1, 0, 0}) == cplx(0.0));
  CHECK(jet_extract(x, {2, 0, 0, 0}) == cplx(0.0));

  Jet y = jet_coordinate(pt, 1, 3);
  Jet xy = x * y;
  CHECK(jet_extract(xy, {1, 1, 0, 0}) == cplx(1.0));
  CHECK(xy.value() == cplx(2.0));

  Jet x3 = x.pow_int(3);
  std::array<double, 4> pt2{2, 0, 0, 0};
  Jet x2 = jet_coordinate(pt2, 0, 3);
  Jet cube = x2 * x2 * x2;
  CHECK(cube.value() == cplx(8.0));
  CHECK(jet_extract(cube, {1, 0, 0, 0}) == cplx(12.0));
  CHECK(cube.coeff({2, 0, 0, 0}) == cplx(6.0));
  CHECK(cube.coeff({3, 0, 0, 0}) == cplx(1.0));
  (void)x3;
}

TEST_CASE("jets: coefficient count and invalid input") {
  CHECK(jet_coeff_count(4) == 70);
  CHECK(jet_coeff_count(0) == 1);
  CHECK(jet_coeff_count(1) == 5);
  std::array<double, 4> pt{0, 0, 0, 0};
  CHECK_THROWS_AS(jet_coordinate(pt, 7, 3), JetError);
  CHECK_THROWS_AS(jet_coordinate(pt, 0, 0), JetError);
  Jet j(2, 1.0);
  CHECK_THROWS_AS(j.coeff({1, 1, 1, 0}), JetError);
}

TEST_CASE("jets: sine Taylor coefficients at zero") {
  std::array<double, 4> pt{0, 0, 0, 0};
  Jet s = sin(jet_coordinate(pt, 0, 3));
  CHECK(std::abs(s.coeff({0, 0, 0, 0})) < 1e-15);
  CHECK(std::abs(s.coeff({1, 0, 0, 0}) - 1.0) < 1e-15);
  CHECK(std::abs(s.coeff({2, 0, 0, 0})) < 1e-15);
  CHECK(std::abs(s.coeff({3, 0, 0, 0}) + 1.0 / 6.0) < 1e-15);
}

TEST_CASE("jets: exp(2x) second derivative against finite differences") {
  std::array<double, 4> pt{0.3, 0, 0, 0};
  Jet e = exp(jet_coordinate(pt, 0, 4) * cplx(2.0));
  double expected_coeff = 2.0 * std::exp(0.6);  // f''/2! = 4 e^{0.6} / 2
  CHECK(std::abs(e.coeff({2, 0, 0, 0}).real() - expected_coeff) < 1e-12);
  double fd = fd_second_derivative([](double x) { return std::exp(2 * x); }, 0.3);
  CHECK(std::abs(e.deriv({2, 0, 0, 0}).real() - fd) < 1e-5 * std::abs(fd));
}

TEST_CASE("jets: singular inputs") {
  Jet zero(3, 0.0);
  CHECK_THROWS_AS(recip(zero), SingularInputError);
  CHECK_THROWS_AS(log(zero), SingularInputError);
  CHECK_THROWS_AS(sqrt(zero), SingularInputError);
}

TEST_CASE("jets: Leibniz rule on random jets") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Jet a = random_jet(rng, 3);
    Jet b = random_jet(rng, 3);
    Jet ab = a * b;
    for (int v = 0; v < 4; ++v) {
      MultiIndex mi{0, 0, 0, 0};
      mi[v] = 1;
      cplx lhs = ab.deriv(mi);
      cplx rhs = a.deriv(mi) * b.value() + a.value() * b.deriv(mi);
      CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("jets: chain consistency with finite differences and exact expansion") {
  // f(p(x)) with p(x) = 0.3 + 0.25 x + 0.1 x^2
  auto p = [](double x) { return 0.3 + 0.25 * x + 0.1 * x * x; };
  std::array<double, 4> pt{0.4, 0, 0, 0};
  Jet x = jet_coordinate(pt, 0, 4);
  Jet pj = Jet::constant(0.3, 4) + 0.25 * x + 0.1 * x * x;

  for (auto fn : {Elementary::Sin, Elementary::Exp, Elementary::Cos}) {
    Jet comp = pj.apply(fn);
    auto scalar = [&](double xv) {
      double pv = p(xv);
      switch (fn) {
        case Elementary::Sin: return std::sin(pv);
        case Elementary::Cos: return std::cos(pv);
        default: return std::exp(pv);
      }
    };
    double fd = fd_second_derivative(scalar, 0.4);
    double jet_d2 = comp.deriv({2, 0, 0, 0}).real();
    CHECK(std::abs(jet_d2 - fd) < 1e-6 * (1.0 + std::abs(fd)));
  }

  // exact on polynomial composites of degree <= order
  Jet poly = (pj * pj) + 2.0 * pj + cplx(1.0);
  double pv = p(0.4);
  double exact = pv * pv + 2 * pv + 1;
  double d1_exact = (2 * pv + 2) * (0.25 + 0.2 * 0.4);
  CHECK(std::abs(poly.value().real() - exact) < 1e-12);
  CHECK(std::abs(poly.deriv({1, 0, 0, 0}).real() - d1_exact) < 1e-12);
}

TEST_CASE("jets: mixed partials agree with iterated syntactic differentiation") {
  // d2/dxdy of sin(x*y) + x^2 y at (0.7, -0.4): symbolic value
  double x0 = 0.7, y0 = -0.4;
  std::array<double, 4> pt{x0, y0, 0, 0};
  Jet x = jet_coordinate(pt, 0, 2);
  Jet y = jet_coordinate(pt, 1, 2);
  Jet f = sin(x * y) + x * x * y;
  // d/dx: y cos(xy) + 2xy ; d/dy of that: cos(xy) - xy sin(xy) + 2x
  double expected = std::cos(x0 * y0) - x0 * y0 * std::sin(x0 * y0) + 2 * x0;
  CHECK(std::abs(f.deriv({1, 1, 0, 0}).real() - expected) < 1e-12);
}

TEST_CASE("jets: division and reciprocal") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    Jet a = random_jet(rng, 4);
    Jet b = random_jet(rng, 4) + cplx(3.0);  // keep away from zero
    Jet q = a / b;
    Jet back = q * b;
    Jet diff = back - a;
    CHECK(diff.max_abs_coeff() < 1e-10 * (1.0 + a.max_abs_coeff()));
  }
}

TEST_CASE("jets: conj flips imaginary coefficients") {
  std::array<double, 4> pt{0.2, 0.5, 0, 0};
  Jet z = jet_coordinate(pt, 0, 3) + cplx(0, 1) * jet_coordinate(pt, 1, 3);
  Jet m = z * z.conj();
  CHECK(std::abs(m.value() - cplx(0.2 * 0.2 + 0.5 * 0.5)) < 1e-15);
  CHECK(m.imag_part().max_abs_coeff() < 1e-15);
}
