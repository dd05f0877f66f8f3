#include "feff/coframe.hpp"

#include <cmath>

#include "feff/webster.hpp"

namespace feff {

namespace {

// 3x3 inverse on jets via the adjugate.
void invert3(const std::array<std::array<Jet, 3>, 3>& m, std::array<std::array<Jet, 3>, 3>& inv,
             Jet& det) {
  auto minor2 = [&](int r0, int r1, int c0, int c1) {
    return m[static_cast<size_t>(r0)][static_cast<size_t>(c0)] *
               m[static_cast<size_t>(r1)][static_cast<size_t>(c1)] -
           m[static_cast<size_t>(r0)][static_cast<size_t>(c1)] *
               m[static_cast<size_t>(r1)][static_cast<size_t>(c0)];
  };
  det = m[0][0] * minor2(1, 2, 1, 2) - m[0][1] * minor2(1, 2, 0, 2) + m[0][2] * minor2(1, 2, 0, 1);
  Jet idet = recip(det);
  int rsel[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Jet cof = minor2(rsel[j][0], rsel[j][1], rsel[i][0], rsel[i][1]);
      double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      inv[static_cast<size_t>(i)][static_cast<size_t>(j)] = sign * cof * idet;
    }
}

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

}  // namespace

std::array<std::array<Jet, 3>, 3> exterior_d(const std::array<Jet, 3>& comp) {
  std::array<std::array<Jet, 3>, 3> d;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      d[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          comp[static_cast<size_t>(j)].d(i) - comp[static_cast<size_t>(i)].d(j);
  return d;
}

CoframeJets coframe_jets(const BaseCoframe& cf, const Pt& p, int order) {
  CoframeJets out;
  for (int i = 0; i < 3; ++i) {
    out.th[static_cast<size_t>(i)] = cf.theta[static_cast<size_t>(i)].eval(p, order);
    out.th1[static_cast<size_t>(i)] = cf.theta1[static_cast<size_t>(i)].eval(p, order);
    out.th1b[static_cast<size_t>(i)] = out.th1[static_cast<size_t>(i)].conj();
  }
  std::array<std::array<Jet, 3>, 3> m{out.th, out.th1, out.th1b};
  std::array<std::array<Jet, 3>, 3> inv;
  invert3(m, inv, out.det);
  for (int i = 0; i < 3; ++i) {
    out.e0[static_cast<size_t>(i)] = inv[static_cast<size_t>(i)][0];
    out.e1[static_cast<size_t>(i)] = inv[static_cast<size_t>(i)][1];
    out.e1b[static_cast<size_t>(i)] = inv[static_cast<size_t>(i)][2];
  }
  return out;
}

ScalarField levi_factor(const BaseCoframe& cf) {
  return ScalarField([cf](const Pt& p, int order) {
    CoframeJets cj = coframe_jets(cf, p, order + 1);
    std::array<std::array<Jet, 3>, 3> dth = exterior_d(cj.th);
    Jet h = contract2(dth, cj.e1, cj.e1b, order) * cplx(0.0, -1.0);  // divide by i
    return h;
  });
}

ValidationReport validate_adapted(const BaseCoframe& cf, const std::vector<Pt>& points,
                                  double tol) {
  ValidationReport rep;
  rep.min_abs_det = 1e300;
  rep.min_h_real = 1e300;
  for (int c = 0; c < 3; ++c) {
    if (cf.theta[static_cast<size_t>(c)].valid() == false ||
        cf.theta1[static_cast<size_t>(c)].valid() == false)
      throw CoframeError("coframe component missing");
  }
  for (const Pt& p : points) {
    CoframeJets cj = coframe_jets(cf, p, 1);
    std::array<std::array<Jet, 3>, 3> dth = exterior_d(cj.th);
    Jet r01 = contract2(dth, cj.e0, cj.e1, 0);
    Jet r01b = contract2(dth, cj.e0, cj.e1b, 0);
    Jet h = contract2(dth, cj.e1, cj.e1b, 0) * cplx(0.0, -1.0);
    rep.max_adapted_residual =
        std::max({rep.max_adapted_residual, std::abs(r01.value()), std::abs(r01b.value())});
    rep.min_abs_det = std::min(rep.min_abs_det, std::abs(cj.det.value()));
    rep.max_h_imag = std::max(rep.max_h_imag, std::abs(h.value().imag()));
    rep.min_h_real = std::min(rep.min_h_real, h.value().real());
    for (int i = 0; i < 3; ++i) {
      double im = std::abs(cj.th[static_cast<size_t>(i)].value().imag());
      rep.max_adapted_residual = std::max(rep.max_adapted_residual, im);
    }
  }
  rep.pass = rep.max_adapted_residual <= tol && rep.min_abs_det > 1e-8 &&
             rep.max_h_imag <= tol && rep.min_h_real > 0.0;
  if (!rep.pass) {
    if (rep.min_abs_det <= 1e-8)
      rep.message = "degenerate coframe";
    else if (rep.min_h_real <= 0.0)
      rep.message = "Levi factor not positive";
    else
      rep.message = "coframe not adapted (theta-terms in d theta)";
  }
  return rep;
}

BaseCoframe unitarize(const BaseCoframe& cf, const std::vector<Pt>& check_points) {
  ScalarField h = levi_factor(cf);
  for (const Pt& p : check_points) {
    cplx v = h.value(p);
    if (v.real() <= 0.0 || std::abs(v.imag()) > 1e-8 * (1.0 + std::abs(v)))
      throw CoframeError("Levi factor not positive at a sample point");
  }
  ScalarField scale = h.sqrt_field();
  BaseCoframe out;
  out.theta = cf.theta;
  for (int i = 0; i < 3; ++i)
    out.theta1[static_cast<size_t>(i)] = scale * cf.theta1[static_cast<size_t>(i)];
  return out;
}

RescaledCoframe rescale_contact(const BaseCoframe& unitary_cf, const ScalarField& f) {
  BaseGeom geom(unitary_cf);
  ScalarField ups1 = geom.dir_deriv_field(D1, f);          // Ups_1
  ScalarField ups1b = geom.dir_deriv_field(D1b, f);        // Ups_1b = Ups^1 (real f)
  ScalarField ef = f.exp_field();
  ScalarField ehalf = (0.5 * f).exp_field();

  RescaledCoframe out;
  for (int i = 0; i < 3; ++i) {
    out.coframe.theta[static_cast<size_t>(i)] = ef * unitary_cf.theta[static_cast<size_t>(i)];
    ScalarField pre = unitary_cf.theta1[static_cast<size_t>(i)] +
                      cplx(0, 1) * ups1b * unitary_cf.theta[static_cast<size_t>(i)];
    out.coframe.theta1[static_cast<size_t>(i)] = ehalf * pre;
  }
  out.conformal_factor = ef;

  // hat A_{11} in the new unitary frame: e^{-f} (A + i nabla_1 Ups_1 - i Ups_1 Ups_1)
  CRField upsf{ups1, 0.0, -1};
  ScalarField grad1 = cov_deriv(geom, upsf, D1).fn;
  ScalarField einv = (-1.0 * f).exp_field();
  out.expected_torsion =
      einv * (geom.torsion_field() + cplx(0, 1) * grad1 - cplx(0, 1) * ups1 * ups1);

  // hat P = e^{-f} (P - 1/2 (nabla^a Ups_a + nabla_a Ups^a) - 1/2 Ups^c Ups_c);
  // the frame factor realises the weight (-1,-1) of the Webster-Schouten
  // scalar in the rescaled trivialisation.
  ScalarField div_up = cov_deriv(geom, upsf, D1b).fn;           // nabla^a Ups_a (raised)
  CRField upsup{ups1b, 0.0, +1};                                // Ups^1
  ScalarField div_dn = cov_deriv(geom, upsup, D1).fn;           // nabla_a Ups^a
  out.expected_schouten =
      einv * (geom.schouten_field() - 0.5 * (div_up + div_dn) - 0.5 * (ups1 * ups1b));
  // the Cartan tensor components pick up e^{-2f}: e^{-f} for the density
  // weight against a fixed trivialisation and e^{-f} for the frame legs
  out.expected_cartan = einv * einv * BaseGeom(unitary_cf).cartan_q_field();
  return out;
}

BaseCoframe second_kind_to_first(const SecondKindCoframe& skc) {
  BaseCoframe out;
  out.theta = skc.omega;
  ScalarField gh_up = skc.gammaHat.conj_field();  // Gamma^1
  for (int i = 0; i < 3; ++i)
    out.theta1[static_cast<size_t>(i)] =
        skc.omega1[static_cast<size_t>(i)] -
        cplx(0, 1) * gh_up * skc.omega[static_cast<size_t>(i)];
  return out;
}

SecondKindCoframe first_kind_to_second(const BaseCoframe& unitary_cf) {
  BaseGeom geom(unitary_cf);
  SecondKindCoframe out;
  out.omega = unitary_cf.theta;
  ScalarField gammaHat = geom.gamma_field(D1b).conj_field();  // conj(Gamma_1b)
  out.gammaHat = gammaHat;
  ScalarField gh_up = gammaHat.conj_field();
  for (int i = 0; i < 3; ++i)
    out.omega1[static_cast<size_t>(i)] =
        unitary_cf.theta1[static_cast<size_t>(i)] +
        cplx(0, 1) * gh_up * unitary_cf.theta[static_cast<size_t>(i)];
  return out;
}

SecondKindCoframe second_kind_from_vector(const std::array<ScalarField, 3>& f1) {
  // f0 from [f1, f1bar] = -i f0
  std::array<ScalarField, 3> f1b;
  for (int i = 0; i < 3; ++i) f1b[static_cast<size_t>(i)] = f1[static_cast<size_t>(i)].conj_field();

  auto commutator_comp = [f1, f1b](int i) {
    ScalarField acc = ScalarField::constant(0.0);
    for (int j = 0; j < 3; ++j) {
      acc = acc + f1[static_cast<size_t>(j)] * f1b[static_cast<size_t>(i)].d(j) -
            f1b[static_cast<size_t>(j)] * f1[static_cast<size_t>(i)].d(j);
    }
    return acc;
  };

  std::array<ScalarField, 3> f0;
  for (int i = 0; i < 3; ++i) f0[static_cast<size_t>(i)] = cplx(0, 1) * commutator_comp(i);

  // dual coframe: rows of the inverse-transpose of the frame matrix
  SecondKindCoframe out;
  auto dual_row = [f0, f1, f1b](int row) {
    return [f0, f1, f1b, row](int comp) {
      return ScalarField([f0, f1, f1b, row, comp](const Pt& p, int order) {
        std::array<std::array<Jet, 3>, 3> F;
        for (int i = 0; i < 3; ++i) {
          F[0][static_cast<size_t>(i)] = f0[static_cast<size_t>(i)].eval(p, order);
          F[1][static_cast<size_t>(i)] = f1[static_cast<size_t>(i)].eval(p, order);
          F[2][static_cast<size_t>(i)] = f1b[static_cast<size_t>(i)].eval(p, order);
        }
        // coframe row r, component c solves sum_c W[r][c] F[s][c] = delta_{rs}
        // i.e. W = (F^T)^{-1} = (F^{-1})^T
        std::array<std::array<Jet, 3>, 3> inv;
        Jet det;
        invert3(F, inv, det);
        return inv[static_cast<size_t>(comp)][static_cast<size_t>(row)];
      });
    };
  };
  for (int c = 0; c < 3; ++c) {
    out.omega[static_cast<size_t>(c)] = dual_row(0)(c);
    out.omega1[static_cast<size_t>(c)] = dual_row(1)(c);
  }
  // gammaHat from d(omega)(f0, f1)
  auto omega = out.omega;
  out.gammaHat = ScalarField([omega, f0, f1](const Pt& p, int order) {
    std::array<Jet, 3> om, v0, v1;
    for (int i = 0; i < 3; ++i) {
      om[static_cast<size_t>(i)] = omega[static_cast<size_t>(i)].eval(p, order + 1);
      v0[static_cast<size_t>(i)] = f0[static_cast<size_t>(i)].eval(p, order);
      v1[static_cast<size_t>(i)] = f1[static_cast<size_t>(i)].eval(p, order);
    }
    auto dom = exterior_d(om);
    return contract2(dom, v0, v1, order);
  });
  return out;
}

SecondKindValidation validate_second_kind(const SecondKindCoframe& skc,
                                          const std::vector<Pt>& points, double tol) {
  SecondKindValidation rep;
  for (const Pt& p : points) {
    std::array<Jet, 3> om, om1, om1b;
    for (int i = 0; i < 3; ++i) {
      om[static_cast<size_t>(i)] = skc.omega[static_cast<size_t>(i)].eval(p, 1);
      om1[static_cast<size_t>(i)] = skc.omega1[static_cast<size_t>(i)].eval(p, 1);
      om1b[static_cast<size_t>(i)] = om1[static_cast<size_t>(i)].conj();
    }
    std::array<std::array<Jet, 3>, 3> m{om, om1, om1b};
    std::array<std::array<Jet, 3>, 3> inv;
    Jet det;
    invert3(m, inv, det);
    std::array<Jet, 3> v0, v1, v1b;
    for (int i = 0; i < 3; ++i) {
      v0[static_cast<size_t>(i)] = inv[static_cast<size_t>(i)][0];
      v1[static_cast<size_t>(i)] = inv[static_cast<size_t>(i)][1];
      v1b[static_cast<size_t>(i)] = inv[static_cast<size_t>(i)][2];
    }
    auto dom = exterior_d(om);
    auto dom1 = exterior_d(om1);
    double r1 = std::abs(contract2(dom1, v1, v1b, 0).value());
    double r2 = std::abs(contract2(dom, v1, v1b, 0).value() - cplx(0, 1));
    double r3 = std::abs(contract2(dom, v0, v1, 0).value() - skc.gammaHat.value(p));
    rep.max_structure_residual = std::max(rep.max_structure_residual, r1);
    rep.max_levi_residual = std::max(rep.max_levi_residual, r2);
    rep.max_gamma_residual = std::max(rep.max_gamma_residual, r3);
  }
  rep.pass = rep.max_structure_residual <= tol && rep.max_levi_residual <= tol &&
             rep.max_gamma_residual <= tol;
  return rep;
}

}  // namespace feff
