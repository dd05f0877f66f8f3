#include "feff/petrov.hpp"

#include <cmath>

namespace feff {

namespace {

Jet contract4(const CurvaturePack& pk, const std::array<Jet, 4>& a, const std::array<Jet, 4>& b,
              const std::array<Jet, 4>& c, const std::array<Jet, 4>& d, int order) {
  Jet out(order, 0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const Jet& w = pk.weyl[static_cast<size_t>(i)][static_cast<size_t>(j)]
                                [static_cast<size_t>(k)][static_cast<size_t>(l)];
          if (w.max_abs_coeff() < 1e-18) continue;
          out += w * a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)] *
                 c[static_cast<size_t>(k)] * d[static_cast<size_t>(l)];
        }
  return out;
}

}  // namespace

const char* petrov_name(PetrovType t) {
  switch (t) {
    case PetrovType::I: return "I";
    case PetrovType::II: return "II";
    case PetrovType::D: return "D";
    case PetrovType::III: return "III";
    case PetrovType::N: return "N";
    default: return "O";
  }
}

NPScalarJets np_scalar_jets(const FeffermanChart& chart, const Pt& p, int order) {
  CurvaturePack pk = curvature_at(chart.metric_field(), p, order + 2);
  auto fr = chart.null_frame(p, order);
  NPScalarJets out;
  out.psi0 = contract4(pk, fr.k, fr.m, fr.k, fr.m, order);
  out.psi1 = contract4(pk, fr.k, fr.m, fr.k, fr.l, order);
  out.psi2 = contract4(pk, fr.m, fr.l, fr.mbar, fr.k, order);
  out.psi3 = contract4(pk, fr.l, fr.m, fr.l, fr.k, order);
  out.psi4 = contract4(pk, fr.m, fr.l, fr.m, fr.l, order);
  return out;
}

NPScalars np_scalars(const FeffermanChart& chart, const Pt& p) {
  return np_scalar_jets(chart, p, 0).values();
}

PetrovType classify(const NPScalars& np, double tol) {
  double scale = std::max({std::abs(np.psi2), std::abs(np.psi3), std::abs(np.psi4)});
  double gate = std::max(std::abs(np.psi0), std::abs(np.psi1));
  if (gate > tol * std::max(scale, 1.0) && gate > tol)
    throw NotAlgebraicallySpecial("Psi0/Psi1 do not vanish at the stated tolerance");
  if (scale <= tol) return PetrovType::O;
  auto is_zero = [&](double v) { return v <= tol * scale; };
  if (is_zero(std::abs(np.psi2))) {
    if (is_zero(std::abs(np.psi3))) return PetrovType::N;
    return PetrovType::III;
  }
  cplx disc = 4.0 * np.psi3 * np.psi3 - 6.0 * np.psi2 * np.psi4;
  if (std::abs(disc) <= tol * scale * scale) return PetrovType::D;
  return PetrovType::II;
}

PndReport pnd_degeneracy(const FeffermanChart& chart, const Pt& p, int level, double tol) {
  CurvaturePack pk = curvature_at(chart.metric_field(), p, 2);
  auto fr = chart.null_frame(p, 0);

  // k-perp basis: k, m, mbar; generic fourth leg: l
  std::array<std::array<Jet, 4>, 3> perp{fr.k, fr.m, fr.mbar};
  std::array<std::array<Jet, 4>, 4> all{fr.k, fr.m, fr.mbar, fr.l};

  PndReport rep;
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& c : all)
        rep.weyl_scale = std::max(
            rep.weyl_scale, std::abs(contract4(pk, fr.k, a, b, c, 0).value()));
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& c : all)
        for (const auto& d : all)
          rep.weyl_scale = std::max(rep.weyl_scale,
                                    std::abs(contract4(pk, a, b, c, d, 0).value()));

  double r = 0.0;
  switch (level) {
    case 1:
      for (const auto& v : perp)
        for (const auto& w : perp)
          r = std::max(r, std::abs(contract4(pk, fr.k, v, fr.k, w, 0).value()));
      break;
    case 2:
      for (const auto& v : perp)
        for (const auto& c : all)
          r = std::max(r, std::abs(contract4(pk, fr.k, v, fr.k, c, 0).value()));
      break;
    case 3:
      for (const auto& v : perp)
        for (const auto& w : perp)
          for (const auto& c : all)
            r = std::max(r, std::abs(contract4(pk, fr.k, v, w, c, 0).value()));
      break;
    case 4:
      for (const auto& a : all)
        for (const auto& b : all)
          for (const auto& c : all)
            r = std::max(r, std::abs(contract4(pk, fr.k, a, b, c, 0).value()));
      break;
    default: throw std::invalid_argument("pnd level must be 1..4");
  }
  rep.residual = r;
  rep.holds = r <= tol * std::max(1.0, rep.weyl_scale);
  return rep;
}

BachPsi2Report bach_psi2_identity(const FeffermanChart& chart, const Pt& p) {
  BachPsi2Report rep;
  rep.pnd2_residual = pnd_degeneracy(chart, p, 2, 1e-8).residual;

  CurvaturePack pk = curvature_at(chart.metric_field(), p, 4);
  auto fr = chart.null_frame(p, 2);
  cplx bkk = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      bkk += pk.bach[static_cast<size_t>(i)][static_cast<size_t>(j)].value() *
             fr.k[static_cast<size_t>(i)].value() * fr.k[static_cast<size_t>(j)].value();

  Jet psi2 = contract4(pk, fr.m, fr.l, fr.mbar, fr.k, 2);
  cplx p2 = psi2.value();
  cplx dp2 = psi2.deriv({0, 0, 0, 1});
  cplx ddp2 = psi2.deriv({0, 0, 0, 2});
  cplx combo = (ddp2 + std::conj(ddp2)) + cplx(0, 6) * (dp2 - std::conj(dp2)) -
               8.0 * (p2 + std::conj(p2));
  rep.bkk = std::abs(bkk);
  rep.identity_residual = std::abs(bkk - combo);
  return rep;
}

FeffermanChart rescale_chart(const FeffermanChart& chart, const ScalarField& f) {
  const BaseCoframe& cf = chart.coframe();
  RescaledCoframe rc = rescale_contact(cf, f);
  BaseGeom geom(cf);

  ScalarField ups1 = geom.dir_deriv_field(D1, f);
  ScalarField ups1b = geom.dir_deriv_field(D1b, f);
  ScalarField ehalf_inv = ((-0.5) * f).exp_field();
  ScalarField einv = ((-1.0) * f).exp_field();

  PerturbationData pd;
  for (const auto& [k, xf] : chart.pert().xi_alpha) pd.xi_alpha[k] = ehalf_inv * xf;
  for (const auto& [k, zf] : chart.pert().xi_zero) {
    // weighted transformation of the zero coefficients:
    //   xi0-hat^{(k)} = xi0^{(k)} - i xi_a^{(k)} Ups^a + i xi_ab^{(k)} Ups^ab
    ScalarField xa = chart.pert().xi_alpha_mode(k);
    ScalarField xab = chart.pert().xi_alpha_mode(-k).conj_field();  // barred coefficient
    ScalarField shifted =
        zf - cplx(0, 1) * xa * ups1b + cplx(0, 1) * xab * ups1;
    pd.xi_zero[k] = einv * shifted;
  }
  return FeffermanChart(rc.coframe, pd);
}

PsiCovarianceReport psi_covariance_check(const FeffermanChart& chart, const ScalarField& f,
                                         const Pt& p) {
  FeffermanChart hat = rescale_chart(chart, f);
  NPScalars a = np_scalars(chart, p);
  NPScalars b = np_scalars(hat, p);

  BaseGeom geom(chart.coframe());
  cplx ups1 = geom.dir_deriv(D1, f, p, 0).value();
  double fv = f.value(p).real();
  double e_h = std::exp(-0.5 * fv), e_1 = std::exp(-fv);

  PsiCovarianceReport rep;
  cplx p2 = e_1 * a.psi2;
  cplx p3 = e_1 * e_h * (a.psi3 - cplx(0, 1.5) * ups1 * a.psi2);
  cplx p4 = e_1 * e_1 *
            (a.psi4 + cplx(0, 2) * ups1 * a.psi3 - 1.5 * ups1 * ups1 * a.psi2);
  double scale = std::max({std::abs(a.psi2), std::abs(a.psi3), std::abs(a.psi4), 1e-30});
  rep.psi2 = std::abs(b.psi2 - p2) / scale;
  rep.psi3 = std::abs(b.psi3 - p3) / scale;
  rep.psi4 = std::abs(b.psi4 - p4) / scale;
  return rep;
}

}  // namespace feff
