#include "feff/webster.hpp"

#include <cmath>

namespace feff {

namespace {

Jet contract2(const std::array<std::array<Jet, 3>, 3>& two_form, const std::array<Jet, 3>& a,
              const std::array<Jet, 3>& b, int order) {
  Jet out(order, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      out += two_form[static_cast<size_t>(i)][static_cast<size_t>(j)] *
             a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    }
  return out;
}

Pt base_point(const Pt& p) { return Pt{p[0], p[1], p[2], 0.0}; }

}  // namespace

struct BaseGeom::Cache {
  std::mutex mu;
  std::unordered_map<PtOrderKey, CoframeJets, PtOrderKeyHash> frames;
  std::unordered_map<PtOrderKey, WebsterJets, PtOrderKeyHash> webster;
};

BaseGeom::BaseGeom(BaseCoframe unitary_cf)
    : cf_(std::move(unitary_cf)), cache_(std::make_shared<Cache>()) {}

CoframeJets BaseGeom::frames(const Pt& p, int order) const {
  Pt q = base_point(p);
  PtOrderKey key{q, order};
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->frames.find(key);
    if (it != cache_->frames.end()) return it->second;
  }
  CoframeJets cj = coframe_jets(cf_, q, order);
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->frames.emplace(key, std::move(cj)).first->second;
}

BaseGeom::WebsterJets BaseGeom::webster_raw(const Pt& p, int order) const {
  Pt q = base_point(p);
  PtOrderKey key{q, order};
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->webster.find(key);
    if (it != cache_->webster.end()) return it->second;
  }
  CoframeJets cj = frames(q, order + 1);
  auto dth1 = exterior_d(cj.th1);
  auto dth = exterior_d(cj.th);
  WebsterJets w;
  Jet c01 = contract2(dth1, cj.e0, cj.e1, order);
  Jet c01b = contract2(dth1, cj.e0, cj.e1b, order);
  Jet c11b = contract2(dth1, cj.e1, cj.e1b, order);
  w.gamma0 = -c01;
  w.gamma1b = c11b;
  w.gamma1 = -c11b.conj();
  w.torsion = c01b.conj();
  w.h = contract2(dth, cj.e1, cj.e1b, order) * cplx(0.0, -1.0);
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->webster.emplace(key, std::move(w)).first->second;
}

Jet BaseGeom::gamma(Dir d, const Pt& p, int order) const {
  WebsterJets w = webster_raw(p, order);
  switch (d) {
    case D0: return w.gamma0;
    case D1: return w.gamma1;
    default: return w.gamma1b;
  }
}

Jet BaseGeom::gamma_conj(Dir d, const Pt& p, int order) const {
  // components of the conjugate one-form; equals -Gamma for a unitary coframe
  WebsterJets w = webster_raw(p, order);
  switch (d) {
    case D0: return w.gamma0.conj();
    case D1: return w.gamma1b.conj();
    default: return w.gamma1.conj();
  }
}

Jet BaseGeom::torsion(const Pt& p, int order) const { return webster_raw(p, order).torsion; }

Jet BaseGeom::schouten(const Pt& p, int order) const {
  // P from the commutator identity on the canonical density:
  //   P = 1/4 (e1(Gamma_1b) - e1b(Gamma_1)) + 1/2 Gamma_1 Gamma_1b + i/4 Gamma_0
  CoframeJets cj = frames(p, order);
  WebsterJets lo = webster_raw(p, order);
  WebsterJets hi = webster_raw(p, order + 1);
  Jet d_g1b(order, 0.0), d_g1(order, 0.0);
  for (int i = 0; i < 3; ++i) {
    d_g1b += cj.e1[static_cast<size_t>(i)] * hi.gamma1b.d(i);
    d_g1 += cj.e1b[static_cast<size_t>(i)] * hi.gamma1.d(i);
  }
  return 0.25 * (d_g1b - d_g1) + 0.5 * lo.gamma1 * lo.gamma1b + cplx(0, 0.25) * lo.gamma0;
}

Jet BaseGeom::dir_deriv(Dir d, const ScalarField& f, const Pt& p, int order) const {
  Pt q = base_point(p);
  CoframeJets cj = frames(q, order);
  Jet fj = f.eval(q, order + 1);
  const std::array<Jet, 3>& e = (d == D0) ? cj.e0 : (d == D1 ? cj.e1 : cj.e1b);
  Jet out(order, 0.0);
  for (int i = 0; i < 3; ++i) out += e[static_cast<size_t>(i)] * fj.d(i);
  return out;
}

ScalarField BaseGeom::dir_deriv_field(Dir d, const ScalarField& f) const {
  BaseGeom self = *this;
  return ScalarField([self, d, f](const Pt& p, int n) { return self.dir_deriv(d, f, p, n); });
}

ScalarField BaseGeom::gamma_field(Dir d) const {
  BaseGeom self = *this;
  return ScalarField([self, d](const Pt& p, int n) { return self.gamma(d, p, n); });
}

ScalarField BaseGeom::torsion_field() const {
  BaseGeom self = *this;
  return ScalarField([self](const Pt& p, int n) { return self.torsion(p, n); });
}

ScalarField BaseGeom::schouten_field() const {
  BaseGeom self = *this;
  return ScalarField([self](const Pt& p, int n) { return self.schouten(p, n); });
}

Jet BaseGeom::cartan_t(const Pt& p, int order) const {
  // T_1 = 1/3 (nabla_1 P - i nabla^g A_{g1}) with nabla^g A = nabla_1b A raised
  ScalarField pf = schouten_field();
  ScalarField af = torsion_field();
  Jet d1P = dir_deriv(D1, pf, p, order);
  Jet d1bA = dir_deriv(D1b, af, p, order);
  WebsterJets w = webster_raw(p, order);
  Jet nabla1bA = d1bA - 2.0 * w.gamma1b * w.torsion;  // g = -2 for A_{11}
  return (1.0 / 3.0) * (d1P - cplx(0, 1) * nabla1bA);
}

Jet BaseGeom::cartan_q(const Pt& p, int order) const {
  // Q_{11} = i nabla_0 A - 2 i nabla_1 T + 2 P A
  BaseGeom self = *this;
  ScalarField af = torsion_field();
  ScalarField tf =
      ScalarField([self](const Pt& q, int n) { return self.cartan_t(q, n); });
  WebsterJets w = webster_raw(p, order);
  Jet n0A = dir_deriv(D0, af, p, order) - 2.0 * w.gamma0 * w.torsion;
  Jet n1T = dir_deriv(D1, tf, p, order) - w.gamma1 * cartan_t(p, order);
  Jet P = schouten(p, order);
  return cplx(0, 1) * n0A - cplx(0, 2) * n1T + 2.0 * P * w.torsion;
}

ScalarField BaseGeom::cartan_q_field() const {
  BaseGeom self = *this;
  return ScalarField([self](const Pt& p, int n) { return self.cartan_q(p, n); });
}

double BaseGeom::structure_roundtrip_residual(const Pt& p) const {
  CoframeJets cj = frames(p, 1);
  auto dth1 = exterior_d(cj.th1);
  WebsterJets w = webster_raw(p, 0);
  // reassembled d(theta1) = -Gamma_0 th^th1 + Gamma_1b th1^th1b + conj(A) th^th1b
  double max_res = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      auto wedge = [&](const std::array<Jet, 3>& a, const std::array<Jet, 3>& b) {
        return a[static_cast<size_t>(i)].value() * b[static_cast<size_t>(j)].value() -
               a[static_cast<size_t>(j)].value() * b[static_cast<size_t>(i)].value();
      };
      cplx rebuilt = -w.gamma0.value() * wedge(cj.th, cj.th1) +
                     w.gamma1b.value() * wedge(cj.th1, cj.th1b) +
                     std::conj(w.torsion.value()) * wedge(cj.th, cj.th1b);
      cplx direct = dth1[static_cast<size_t>(i)][static_cast<size_t>(j)].value();
      max_res = std::max(max_res, std::abs(rebuilt - direct));
    }
  return max_res;
}

double BaseGeom::antihermitian_residual(const Pt& p) const {
  WebsterJets w = webster_raw(p, 0);
  double r0 = std::abs(w.gamma0.value() + std::conj(w.gamma0.value()));
  double r1 = std::abs(w.gamma1.value() + std::conj(w.gamma1b.value()));
  return std::max(r0, r1);
}

CRField cr_conj(const CRField& a) { return CRField{a.fn.conj_field(), -a.dw, -a.g}; }

CRField cr_mul(const CRField& a, const CRField& b) {
  return CRField{a.fn * b.fn, a.dw + b.dw, a.g + b.g};
}

CRField cr_add(const CRField& a, const CRField& b) {
  if (a.dw != b.dw || a.g != b.g) throw CoframeError("adding incompatible weighted fields");
  return CRField{a.fn + b.fn, a.dw, a.g};
}

CRField cr_sub(const CRField& a, const CRField& b) {
  if (a.dw != b.dw || a.g != b.g) throw CoframeError("subtracting incompatible weighted fields");
  return CRField{a.fn - b.fn, a.dw, a.g};
}

CRField cr_scale(cplx s, const CRField& a) { return CRField{s * a.fn, a.dw, a.g}; }

CRField cov_deriv(const BaseGeom& geom, const CRField& f, Dir d) {
  double coeff = f.dw / 3.0 + f.g;
  ScalarField out = geom.dir_deriv_field(d, f.fn) + cplx(coeff, 0.0) * geom.gamma_field(d) * f.fn;
  int g = f.g + (d == D1 ? -1 : (d == D1b ? +1 : 0));
  return CRField{out, f.dw, g};
}

CRField cov_deriv_gauged(const BaseGeom& geom, const Gauge& gauge, const CRField& f, Dir d) {
  CRField base = cov_deriv(geom, f, d);
  if (f.dw == 0.0 || !gauge.valid()) return base;
  ScalarField xi;
  switch (d) {
    case D1: xi = gauge.xi1; break;
    case D1b: xi = gauge.xi1.conj_field(); break;
    case D0:
      if (!gauge.xi0.valid()) return base;
      xi = gauge.xi0;
      break;
  }
  base.fn = base.fn - cplx(0.0, f.dw) * xi * f.fn;
  return base;
}

ScalarField webster_weyl_residual(const BaseGeom& geom, const ScalarField& lam1) {
  CRField lam{lam1, 0.0, -1};
  CRField grad = cov_deriv(geom, lam, D1);
  return grad.fn - cplx(0, 1) * lam1 * lam1 - geom.torsion_field();
}

ScalarField gauged_second_order_residual(const BaseGeom& geom, const Gauge& gauge,
                                         const CRField& sigma) {
  CRField first = cov_deriv_gauged(geom, gauge, sigma, D1);
  CRField second = cov_deriv_gauged(geom, gauge, first, D1);
  return second.fn + cplx(0, 1) * geom.torsion_field() * sigma.fn;
}

ScalarField commutator1_residual(const BaseGeom& geom, const CRField& f) {
  CRField n1 = cov_deriv(geom, f, D1);
  CRField n1b = cov_deriv(geom, f, D1b);
  // raised second derivative: nabla_1 nabla^1 f = nabla_1 (raise nabla_1b f)
  // raising is trivial in the unitary trivialisation
  CRField a = cov_deriv(geom, n1b, D1);
  CRField b = cov_deriv(geom, n1, D1b);
  CRField n0 = cov_deriv(geom, f, D0);
  return a.fn - b.fn - (4.0 / 3.0) * cplx(f.dw, 0.0) * geom.schouten_field() * f.fn +
         cplx(0, 1) * n0.fn;
}

ScalarField commutator2_residual(const BaseGeom& geom, const CRField& f) {
  CRField n0 = cov_deriv(geom, f, D0);
  CRField n1 = cov_deriv(geom, f, D1);
  CRField a = cov_deriv(geom, n0, D1);
  CRField b = cov_deriv(geom, n1, D0);
  CRField n1b = cov_deriv(geom, f, D1b);
  ScalarField A = geom.torsion_field();
  ScalarField divA = geom.dir_deriv_field(D1b, A) - 2.0 * geom.gamma_field(D1b) * A;
  return a.fn - b.fn - (1.0 / 3.0) * cplx(f.dw, 0.0) * divA * f.fn - A * n1b.fn;
}

}  // namespace feff
