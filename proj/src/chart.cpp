#include "feff/chart.hpp"

#include <cmath>

namespace feff {

namespace {

ScalarField phase_mode(int k) {
  return ScalarField([k](const Pt& p, int order) {
    Jet phi = order == 0 ? Jet::constant(p[3], 0) : Jet::coordinate(p[3], 3, order);
    return exp(cplx(0, static_cast<double>(k)) * phi);
  });
}

}  // namespace

bool PerturbationData::alpha_support_in(std::initializer_list<int> ks) const {
  for (const auto& [k, f] : xi_alpha) {
    bool ok = false;
    for (int kk : ks)
      if (k == kk) ok = true;
    if (!ok) return false;
  }
  return true;
}

ScalarField PerturbationData::xi_alpha_mode(int k) const {
  auto it = xi_alpha.find(k);
  return it == xi_alpha.end() ? ScalarField::constant(0.0) : it->second;
}

ScalarField PerturbationData::xi_zero_mode(int k) const {
  auto it = xi_zero.find(std::abs(k));
  if (it == xi_zero.end()) return ScalarField::constant(0.0);
  return k >= 0 ? it->second : it->second.conj_field();
}

ScalarField assemble_alpha(const PerturbationData& pert) {
  ScalarField acc = ScalarField::constant(0.0);
  for (const auto& [k, f] : pert.xi_alpha) acc = acc + f * phase_mode(k);
  return acc;
}

ScalarField assemble_zero(const PerturbationData& pert) {
  ScalarField acc = ScalarField::constant(0.0);
  for (const auto& [k, f] : pert.xi_zero) {
    if (k == 0)
      acc = acc + f;
    else
      acc = acc + f * phase_mode(k) + f.conj_field() * phase_mode(-k);
  }
  return acc;
}

FeffermanChart::FeffermanChart(BaseCoframe unitary_cf, PerturbationData pert)
    : geom_(std::move(unitary_cf)), pert_(std::move(pert)) {
  lam1_ = cplx(0, 1.0 / 3.0) * geom_.gamma_field(D1) + assemble_alpha(pert_);
  lam0_ = cplx(0, 1.0 / 3.0) * geom_.gamma_field(D0) -
          cplx(1.0 / 3.0, 0) * geom_.schouten_field() + assemble_zero(pert_);
}

std::array<Jet, 4> FeffermanChart::theta4(const Pt& p, int order) const {
  CoframeJets cj = geom_.frames(p, order);
  return {cj.th[0], cj.th[1], cj.th[2], Jet::constant(0.0, order)};
}

std::array<Jet, 4> FeffermanChart::theta1_4(const Pt& p, int order) const {
  CoframeJets cj = geom_.frames(p, order);
  return {cj.th1[0], cj.th1[1], cj.th1[2], Jet::constant(0.0, order)};
}

std::array<Jet, 4> FeffermanChart::lambda4(const Pt& p, int order) const {
  CoframeJets cj = geom_.frames(p, order);
  Jet l1 = lam1_.eval(p, order);
  Jet l1b = l1.conj();  // chart coordinates are real, so jet conjugation is exact
  Jet l0 = lam0_.eval(p, order);
  std::array<Jet, 4> out;
  for (int i = 0; i < 3; ++i) {
    out[static_cast<size_t>(i)] = l1 * cj.th1[static_cast<size_t>(i)] +
                                  l1b * cj.th1b[static_cast<size_t>(i)] +
                                  l0 * cj.th[static_cast<size_t>(i)];
  }
  out[3] = Jet::constant(1.0, order);
  return out;
}

MetricJets FeffermanChart::metric_jets(const Pt& p, int order) const {
  std::array<Jet, 4> th = theta4(p, order);
  std::array<Jet, 4> t1 = theta1_4(p, order);
  std::array<Jet, 4> lam = lambda4(p, order);
  MetricJets g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      g[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          2.0 * (th[static_cast<size_t>(i)] * lam[static_cast<size_t>(j)] +
                 lam[static_cast<size_t>(i)] * th[static_cast<size_t>(j)]) +
          t1[static_cast<size_t>(i)] * t1[static_cast<size_t>(j)].conj() +
          t1[static_cast<size_t>(i)].conj() * t1[static_cast<size_t>(j)];
    }
  return g;
}

MetricField FeffermanChart::metric_field() const {
  auto self = *this;
  return [self](const Pt& p, int order) { return self.metric_jets(p, order); };
}

FeffermanChart::NullFrame FeffermanChart::null_frame(const Pt& p, int order) const {
  std::array<Jet, 4> th = theta4(p, order);
  std::array<Jet, 4> t1 = theta1_4(p, order);
  std::array<Jet, 4> lam = lambda4(p, order);

  // invert the 4x4 coframe matrix rows (theta, theta1, theta1b, lambda)
  std::array<std::array<Jet, 4>, 4> m;
  for (int i = 0; i < 4; ++i) {
    m[0][static_cast<size_t>(i)] = th[static_cast<size_t>(i)];
    m[1][static_cast<size_t>(i)] = t1[static_cast<size_t>(i)];
    m[2][static_cast<size_t>(i)] = t1[static_cast<size_t>(i)].conj();
    m[3][static_cast<size_t>(i)] = lam[static_cast<size_t>(i)];
  }
  auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
    auto e = [&](int r, int c) { return m[static_cast<size_t>(r)][static_cast<size_t>(c)]; };
    return e(r0, c0) * (e(r1, c1) * e(r2, c2) - e(r1, c2) * e(r2, c1)) -
           e(r0, c1) * (e(r1, c0) * e(r2, c2) - e(r1, c2) * e(r2, c0)) +
           e(r0, c2) * (e(r1, c0) * e(r2, c1) - e(r1, c1) * e(r2, c0));
  };
  Jet det = m[0][0] * det3(1, 2, 3, 1, 2, 3) - m[0][1] * det3(1, 2, 3, 0, 2, 3) +
            m[0][2] * det3(1, 2, 3, 0, 1, 3) - m[0][3] * det3(1, 2, 3, 0, 1, 2);
  Jet idet = recip(det);
  int rows[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  std::array<std::array<Jet, 4>, 4> inv;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Jet cof = det3(rows[j][0], rows[j][1], rows[j][2], rows[i][0], rows[i][1], rows[i][2]);
      double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      inv[static_cast<size_t>(i)][static_cast<size_t>(j)] = sign * cof * idet;
    }

  NullFrame out;
  for (int i = 0; i < 4; ++i) {
    Jet ell = inv[static_cast<size_t>(i)][0];
    out.l[static_cast<size_t>(i)] = 0.5 * ell;
    out.m[static_cast<size_t>(i)] = inv[static_cast<size_t>(i)][1];
    out.mbar[static_cast<size_t>(i)] = inv[static_cast<size_t>(i)][2];
    out.k[static_cast<size_t>(i)] = inv[static_cast<size_t>(i)][3];
  }
  return out;
}

Jet FeffermanChart::pair(const MetricJets& g, const std::array<Jet, 4>& a,
                         const std::array<Jet, 4>& b) {
  Jet out = Jet::constant(0.0, a[0].order());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out += g[static_cast<size_t>(i)][static_cast<size_t>(j)] * a[static_cast<size_t>(i)] *
             b[static_cast<size_t>(j)];
  return out;
}

FeffermanChart::FrameCheck FeffermanChart::frame_check(const Pt& p) const {
  FrameCheck out;
  MetricJets g = metric_jets(p, 2);
  NullFrame fr = null_frame(p, 2);

  auto val = [&](const Jet& j) { return j.value(); };
  auto chk = [&](const Jet& j, cplx expect) {
    out.pairing = std::max(out.pairing, std::abs(val(j) - expect));
  };
  chk(pair(g, fr.k, fr.k), 0.0);
  chk(pair(g, fr.l, fr.l), 0.0);
  chk(pair(g, fr.m, fr.m), 0.0);
  chk(pair(g, fr.k, fr.l), 1.0);
  chk(pair(g, fr.m, fr.mbar), 1.0);
  chk(pair(g, fr.k, fr.m), 0.0);
  chk(pair(g, fr.l, fr.m), 0.0);

  // k = d/dphi so nabla_k k^a = Gamma^a_{phi phi}
  CurvaturePack pk = curvature_at(metric_field(), p, 2);
  for (int a = 0; a < 4; ++a)
    out.geodesic =
        std::max(out.geodesic, std::abs(pk.christoffel[static_cast<size_t>(a)][3][3].value()));

  // kappa = g(k, .) = 2 theta; shear = trace-free symmetric screen part of
  // nabla_a kappa_b; the m-m component is the shear scalar
  std::array<std::array<cplx, 4>, 4> nk{};
  std::array<Jet, 4> th = theta4(p, 2);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      MultiIndex mi{0, 0, 0, 0};
      mi[static_cast<size_t>(a)] = 1;
      cplx v = 2.0 * th[static_cast<size_t>(b)].deriv(mi);
      for (int e = 0; e < 4; ++e)
        v -= pk.christoffel[static_cast<size_t>(e)][static_cast<size_t>(a)]
                           [static_cast<size_t>(b)]
                 .value() *
             2.0 * th[static_cast<size_t>(e)].value();
      nk[static_cast<size_t>(a)][static_cast<size_t>(b)] = v;
    }
  cplx shear = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      shear += nk[static_cast<size_t>(a)][static_cast<size_t>(b)] *
               fr.m[static_cast<size_t>(a)].value() * fr.m[static_cast<size_t>(b)].value();
  out.shear = std::abs(shear);

  // twist: d kappa (m, mbar) = 2 d theta (m, mbar) != 0
  cplx twist = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      MultiIndex mi{0, 0, 0, 0};
      mi[static_cast<size_t>(a)] = 1;
      MultiIndex mj{0, 0, 0, 0};
      mj[static_cast<size_t>(b)] = 1;
      cplx dk = 2.0 * (th[static_cast<size_t>(b)].deriv(mi) - th[static_cast<size_t>(a)].deriv(mj));
      twist += 0.5 * dk * fr.m[static_cast<size_t>(a)].value() * fr.mbar[static_cast<size_t>(b)].value();
    }
  out.twist = std::abs(twist);
  return out;
}

}  // namespace feff
