#include "feff/curvature.hpp"

#include <cmath>

namespace feff {

namespace {

// 4x4 inverse on jets via the adjugate (entries divided by the determinant).
void invert4(const MetricJets& m, MetricJets& inv) {
  auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
    auto e = [&](int r, int c) { return m[static_cast<size_t>(r)][static_cast<size_t>(c)]; };
    return e(r0, c0) * (e(r1, c1) * e(r2, c2) - e(r1, c2) * e(r2, c1)) -
           e(r0, c1) * (e(r1, c0) * e(r2, c2) - e(r1, c2) * e(r2, c0)) +
           e(r0, c2) * (e(r1, c0) * e(r2, c1) - e(r1, c1) * e(r2, c0));
  };
  int rows[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  Jet det = m[0][0] * det3(1, 2, 3, 1, 2, 3) - m[0][1] * det3(1, 2, 3, 0, 2, 3) +
            m[0][2] * det3(1, 2, 3, 0, 1, 3) - m[0][3] * det3(1, 2, 3, 0, 1, 2);
  if (std::abs(det.value()) < 1e-14) throw CurvatureError("singular metric");
  Jet idet = recip(det);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Jet cof = det3(rows[j][0], rows[j][1], rows[j][2], rows[i][0], rows[i][1], rows[i][2]);
      double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      inv[static_cast<size_t>(i)][static_cast<size_t>(j)] = sign * cof * idet;
    }
}

}  // namespace

MetricField constant_metric(const std::array<double, 4>& diag) {
  return [diag](const Pt&, int order) {
    MetricJets g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        g[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            Jet::constant(i == j ? diag[static_cast<size_t>(i)] : 0.0, order);
    return g;
  };
}

MetricField conformal_metric(const MetricField& g, const ScalarField& factor) {
  return [g, factor](const Pt& p, int order) {
    MetricJets out = g(p, order);
    Jet f = factor.eval(p, order);
    for (auto& row : out)
      for (auto& e : row) e = e * f;
    return out;
  };
}

CurvaturePack curvature_at(const MetricField& gf, const Pt& p, int order) {
  if (order < 2) throw CurvatureError("curvature needs metric jets of order >= 2");
  CurvaturePack pk;
  pk.order = order;
  pk.g = gf(p, order);
  invert4(pk.g, pk.ginv);

  auto& g = pk.g;
  auto& gi = pk.ginv;

  // Christoffel symbols of the second kind
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = b; c < 4; ++c) {
        Jet sum(order - 1, 0.0);
        for (int d = 0; d < 4; ++d) {
          Jet first =
              g[static_cast<size_t>(d)][static_cast<size_t>(c)].d(b) +
              g[static_cast<size_t>(d)][static_cast<size_t>(b)].d(c) -
              g[static_cast<size_t>(b)][static_cast<size_t>(c)].d(d);
          sum += gi[static_cast<size_t>(a)][static_cast<size_t>(d)] * first;
        }
        Jet ch = 0.5 * sum;
        pk.christoffel[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)] =
            ch;
        pk.christoffel[static_cast<size_t>(a)][static_cast<size_t>(c)][static_cast<size_t>(b)] =
            ch;
      }

  // mixed Riemann R_{ab}{}^{c}{}_{d} from [nabla_a, nabla_b] V^c = R_{ab}{}^c{}_d V^d
  std::array<std::array<std::array<std::array<Jet, 4>, 4>, 4>, 4> rmixed;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          Jet val =
              pk.christoffel[static_cast<size_t>(c)][static_cast<size_t>(b)]
                            [static_cast<size_t>(d)]
                  .d(a) -
              pk.christoffel[static_cast<size_t>(c)][static_cast<size_t>(a)]
                            [static_cast<size_t>(d)]
                  .d(b);
          for (int e = 0; e < 4; ++e) {
            val += pk.christoffel[static_cast<size_t>(c)][static_cast<size_t>(a)]
                                 [static_cast<size_t>(e)] *
                       pk.christoffel[static_cast<size_t>(e)][static_cast<size_t>(b)]
                                     [static_cast<size_t>(d)] -
                   pk.christoffel[static_cast<size_t>(c)][static_cast<size_t>(b)]
                                 [static_cast<size_t>(e)] *
                       pk.christoffel[static_cast<size_t>(e)][static_cast<size_t>(a)]
                                     [static_cast<size_t>(d)];
          }
          rmixed[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)]
                [static_cast<size_t>(d)] = val;
        }

  // fully lowered R_{abcd} = g_{ce} R_{ab}{}^{e}{}_{d}
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          Jet val(order - 2, 0.0);
          for (int e = 0; e < 4; ++e)
            val += g[static_cast<size_t>(c)][static_cast<size_t>(e)] *
                   rmixed[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(e)]
                         [static_cast<size_t>(d)];
          pk.riemann[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)]
                    [static_cast<size_t>(d)] = val;
        }

  // Ric_{ab} = R_{ca}{}^{c}{}_{b}
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Jet val(order - 2, 0.0);
      for (int c = 0; c < 4; ++c)
        val += rmixed[static_cast<size_t>(c)][static_cast<size_t>(a)][static_cast<size_t>(c)]
                     [static_cast<size_t>(b)];
      pk.ricci[static_cast<size_t>(a)][static_cast<size_t>(b)] = val;
    }

  pk.scalar = Jet(order - 2, 0.0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      pk.scalar += gi[static_cast<size_t>(a)][static_cast<size_t>(b)] *
                   pk.ricci[static_cast<size_t>(a)][static_cast<size_t>(b)];

  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      pk.schouten[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          0.5 * (pk.ricci[static_cast<size_t>(a)][static_cast<size_t>(b)] -
                 (1.0 / 6.0) * pk.scalar * g[static_cast<size_t>(a)][static_cast<size_t>(b)]);
  pk.schouten_scalar = (1.0 / 6.0) * pk.scalar;

  // Weyl from the decomposition
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          auto G = [&](int i, int j) -> const Jet& {
            return g[static_cast<size_t>(i)][static_cast<size_t>(j)];
          };
          auto P = [&](int i, int j) -> const Jet& {
            return pk.schouten[static_cast<size_t>(i)][static_cast<size_t>(j)];
          };
          Jet glue = G(a, c) * P(b, d) - G(b, c) * P(a, d) + G(b, d) * P(a, c) -
                     G(a, d) * P(b, c);
          pk.weyl[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)]
                 [static_cast<size_t>(d)] =
              pk.riemann[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)]
                        [static_cast<size_t>(d)] -
              glue;
        }

  if (order >= 3) {
    pk.has_cotton = true;
    // C_{abc} = nabla_b P_{ca} - nabla_c P_{ba}
    auto nablaP = [&](int b, int c, int a) {
      Jet val = pk.schouten[static_cast<size_t>(c)][static_cast<size_t>(a)].d(b);
      for (int e = 0; e < 4; ++e) {
        val -= pk.christoffel[static_cast<size_t>(e)][static_cast<size_t>(b)]
                             [static_cast<size_t>(c)] *
               pk.schouten[static_cast<size_t>(e)][static_cast<size_t>(a)];
        val -= pk.christoffel[static_cast<size_t>(e)][static_cast<size_t>(b)]
                             [static_cast<size_t>(a)] *
               pk.schouten[static_cast<size_t>(c)][static_cast<size_t>(e)];
      }
      return val;
    };
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          pk.cotton[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)] =
              nablaP(b, c, a) - nablaP(c, b, a);
  }

  if (order >= 4) {
    pk.has_bach = true;
    // Bach_{ab} = -nabla^c C_{abc} + P^{cd} W_{acbd}
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        Jet val(order - 4, 0.0);
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            // nabla_d C_{abc}
            Jet nc = pk.cotton[static_cast<size_t>(a)][static_cast<size_t>(b)]
                              [static_cast<size_t>(c)]
                         .d(d);
            for (int e = 0; e < 4; ++e) {
              nc -= pk.christoffel[static_cast<size_t>(e)][static_cast<size_t>(d)]
                                  [static_cast<size_t>(a)] *
                    pk.cotton[static_cast<size_t>(e)][static_cast<size_t>(b)]
                             [static_cast<size_t>(c)];
              nc -= pk.christoffel[static_cast<size_t>(e)][static_cast<size_t>(d)]
                                  [static_cast<size_t>(b)] *
                    pk.cotton[static_cast<size_t>(a)][static_cast<size_t>(e)]
                             [static_cast<size_t>(c)];
              nc -= pk.christoffel[static_cast<size_t>(e)][static_cast<size_t>(d)]
                                  [static_cast<size_t>(c)] *
                    pk.cotton[static_cast<size_t>(a)][static_cast<size_t>(b)]
                             [static_cast<size_t>(e)];
            }
            val -= gi[static_cast<size_t>(c)][static_cast<size_t>(d)] * nc;
          }
        // + P^{cd} W_{acbd}
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            Jet pcd(order - 2, 0.0);
            for (int e = 0; e < 4; ++e)
              for (int f = 0; f < 4; ++f)
                pcd += gi[static_cast<size_t>(c)][static_cast<size_t>(e)] *
                       gi[static_cast<size_t>(d)][static_cast<size_t>(f)] *
                       pk.schouten[static_cast<size_t>(e)][static_cast<size_t>(f)];
            val += pcd * pk.weyl[static_cast<size_t>(a)][static_cast<size_t>(c)]
                                [static_cast<size_t>(b)][static_cast<size_t>(d)];
          }
        pk.bach[static_cast<size_t>(a)][static_cast<size_t>(b)] = val;
      }
  }

  return pk;
}

PackInvariants pack_invariants(const CurvaturePack& pk) {
  PackInvariants out;
  auto R = [&](int a, int b, int c, int d) {
    return pk.riemann[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)]
                     [static_cast<size_t>(d)]
        .value();
  };
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          out.riemann_symmetry = std::max(out.riemann_symmetry, std::abs(R(a, b, c, d) + R(b, a, c, d)));
          out.riemann_symmetry = std::max(out.riemann_symmetry, std::abs(R(a, b, c, d) + R(a, b, d, c)));
          out.riemann_symmetry = std::max(out.riemann_symmetry, std::abs(R(a, b, c, d) - R(c, d, a, b)));
          out.first_bianchi = std::max(
              out.first_bianchi, std::abs(R(a, b, c, d) + R(b, c, a, d) + R(c, a, b, d)));
        }
  // Weyl traces
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      cplx tr = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
          tr += pk.ginv[static_cast<size_t>(a)][static_cast<size_t>(c)].value() *
                pk.weyl[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)]
                       [static_cast<size_t>(d)]
                    .value();
      out.weyl_trace = std::max(out.weyl_trace, std::abs(tr));
    }
  // Ric = 2 P + P_scalar g
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      cplx lhs = pk.ricci[static_cast<size_t>(a)][static_cast<size_t>(b)].value();
      cplx rhs = 2.0 * pk.schouten[static_cast<size_t>(a)][static_cast<size_t>(b)].value() +
                 pk.schouten_scalar.value() *
                     pk.g[static_cast<size_t>(a)][static_cast<size_t>(b)].value();
      out.ricci_schouten = std::max(out.ricci_schouten, std::abs(lhs - rhs));
    }
  if (pk.has_bach) {
    cplx tr = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        out.bach_symmetry = std::max(
            out.bach_symmetry,
            std::abs(pk.bach[static_cast<size_t>(a)][static_cast<size_t>(b)].value() -
                     pk.bach[static_cast<size_t>(b)][static_cast<size_t>(a)].value()));
        tr += pk.ginv[static_cast<size_t>(a)][static_cast<size_t>(b)].value() *
              pk.bach[static_cast<size_t>(a)][static_cast<size_t>(b)].value();
      }
    out.bach_trace = std::abs(tr);
  }
  return out;
}

double bianchi_contracted_check(const MetricField& gf, const Pt& p) {
  CurvaturePack pk = curvature_at(gf, p, 3);
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        cplx div = 0.0;
        for (int d = 0; d < 4; ++d)
          for (int e = 0; e < 4; ++e) {
            // nabla_e W_{dabc}
            Jet nw = pk.weyl[static_cast<size_t>(d)][static_cast<size_t>(a)]
                            [static_cast<size_t>(b)][static_cast<size_t>(c)]
                         .d(e);
            cplx val = nw.value();
            int idx[4] = {d, a, b, c};
            for (int slot = 0; slot < 4; ++slot) {
              for (int f = 0; f < 4; ++f) {
                int jdx[4] = {idx[0], idx[1], idx[2], idx[3]};
                jdx[slot] = f;
                val -= pk.christoffel[static_cast<size_t>(f)][static_cast<size_t>(e)]
                                     [static_cast<size_t>(idx[slot])]
                           .value() *
                       pk.weyl[static_cast<size_t>(jdx[0])][static_cast<size_t>(jdx[1])]
                              [static_cast<size_t>(jdx[2])][static_cast<size_t>(jdx[3])]
                           .value();
              }
            }
            div += pk.ginv[static_cast<size_t>(e)][static_cast<size_t>(d)].value() * val;
          }
        cplx cot = pk.cotton[static_cast<size_t>(a)][static_cast<size_t>(b)]
                            [static_cast<size_t>(c)]
                       .value();
        worst = std::max(worst, std::abs(cot - div));
      }
  return worst;
}

FDCurvature curvature_fd(const MetricField& gf, const Pt& p, double step) {
  auto gval = [&](const Pt& q) {
    MetricJets g = gf(q, 0);
    std::array<std::array<cplx, 4>, 4> v;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        v[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            g[static_cast<size_t>(i)][static_cast<size_t>(j)].value();
    return v;
  };
  auto inv4 = [](const std::array<std::array<cplx, 4>, 4>& m) {
    // complex Gauss-Jordan
    std::array<std::array<cplx, 8>, 4> aug{};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) aug[static_cast<size_t>(i)][static_cast<size_t>(j)] = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
      aug[static_cast<size_t>(i)][static_cast<size_t>(i + 4)] = 1.0;
    }
    for (int col = 0; col < 4; ++col) {
      int piv = col;
      for (int r = col + 1; r < 4; ++r)
        if (std::abs(aug[static_cast<size_t>(r)][static_cast<size_t>(col)]) >
            std::abs(aug[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
          piv = r;
      std::swap(aug[static_cast<size_t>(piv)], aug[static_cast<size_t>(col)]);
      cplx d = aug[static_cast<size_t>(col)][static_cast<size_t>(col)];
      for (int j = 0; j < 8; ++j) aug[static_cast<size_t>(col)][static_cast<size_t>(j)] /= d;
      for (int r = 0; r < 4; ++r) {
        if (r == col) continue;
        cplx f = aug[static_cast<size_t>(r)][static_cast<size_t>(col)];
        for (int j = 0; j < 8; ++j)
          aug[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
              f * aug[static_cast<size_t>(col)][static_cast<size_t>(j)];
      }
    }
    std::array<std::array<cplx, 4>, 4> out;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        out[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            aug[static_cast<size_t>(i)][static_cast<size_t>(j + 4)];
    return out;
  };
  auto christoffel_at = [&](const Pt& q) {
    std::array<std::array<std::array<cplx, 4>, 4>, 4> ch{};
    auto gq = gval(q);
    auto gi = inv4(gq);
    std::array<std::array<std::array<cplx, 4>, 4>, 4> dg{};
    for (int k = 0; k < 4; ++k) {
      Pt qp = q, qm = q;
      qp[static_cast<size_t>(k)] += step;
      qm[static_cast<size_t>(k)] -= step;
      auto gp = gval(qp), gm = gval(qm);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          dg[static_cast<size_t>(k)][static_cast<size_t>(i)][static_cast<size_t>(j)] =
              (gp[static_cast<size_t>(i)][static_cast<size_t>(j)] -
               gm[static_cast<size_t>(i)][static_cast<size_t>(j)]) /
              (2 * step);
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) {
          cplx sum = 0.0;
          for (int d = 0; d < 4; ++d)
            sum += gi[static_cast<size_t>(a)][static_cast<size_t>(d)] *
                   (dg[static_cast<size_t>(b)][static_cast<size_t>(d)][static_cast<size_t>(c)] +
                    dg[static_cast<size_t>(c)][static_cast<size_t>(d)][static_cast<size_t>(b)] -
                    dg[static_cast<size_t>(d)][static_cast<size_t>(b)][static_cast<size_t>(c)]);
          ch[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)] = 0.5 * sum;
        }
    return ch;
  };

  FDCurvature out{};
  auto ch0 = christoffel_at(p);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        out.christoffel[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)] =
            ch0[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)].real();

  // dGamma by central differences of the Christoffel field
  std::array<std::array<std::array<std::array<cplx, 4>, 4>, 4>, 4> dch{};
  for (int k = 0; k < 4; ++k) {
    Pt qp = p, qm = p;
    qp[static_cast<size_t>(k)] += step;
    qm[static_cast<size_t>(k)] -= step;
    auto cp = christoffel_at(qp), cm = christoffel_at(qm);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          dch[static_cast<size_t>(k)][static_cast<size_t>(a)][static_cast<size_t>(b)]
             [static_cast<size_t>(c)] =
              (cp[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)] -
               cm[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)]) /
              (2 * step);
  }

  auto g0 = gval(p);
  std::array<std::array<std::array<std::array<cplx, 4>, 4>, 4>, 4> rmixed{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          cplx val = dch[static_cast<size_t>(a)][static_cast<size_t>(c)][static_cast<size_t>(b)]
                        [static_cast<size_t>(d)] -
                     dch[static_cast<size_t>(b)][static_cast<size_t>(c)][static_cast<size_t>(a)]
                        [static_cast<size_t>(d)];
          for (int e = 0; e < 4; ++e)
            val += ch0[static_cast<size_t>(c)][static_cast<size_t>(a)][static_cast<size_t>(e)] *
                       ch0[static_cast<size_t>(e)][static_cast<size_t>(b)]
                          [static_cast<size_t>(d)] -
                   ch0[static_cast<size_t>(c)][static_cast<size_t>(b)][static_cast<size_t>(e)] *
                       ch0[static_cast<size_t>(e)][static_cast<size_t>(a)]
                          [static_cast<size_t>(d)];
          rmixed[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)]
                [static_cast<size_t>(d)] = val;
        }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          cplx val = 0.0;
          for (int e = 0; e < 4; ++e)
            val += g0[static_cast<size_t>(c)][static_cast<size_t>(e)] *
                   rmixed[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(e)]
                         [static_cast<size_t>(d)];
          out.riemann[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)]
                     [static_cast<size_t>(d)] = val.real();
        }
  auto gi0 = inv4(g0);
  double sc = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      cplx val = 0.0;
      for (int c = 0; c < 4; ++c)
        val += rmixed[static_cast<size_t>(c)][static_cast<size_t>(a)][static_cast<size_t>(c)]
                     [static_cast<size_t>(b)];
      out.ricci[static_cast<size_t>(a)][static_cast<size_t>(b)] = val.real();
    }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      sc += (gi0[static_cast<size_t>(a)][static_cast<size_t>(b)] *
             cplx(out.ricci[static_cast<size_t>(a)][static_cast<size_t>(b)]))
                .real();
  out.scalar = sc;
  return out;
}

ConformalCheck conformal_transform_check(const MetricField& gf, const ScalarField& f,
                                         const Pt& p) {
  ConformalCheck out;
  ScalarField factor = (2.0 * f).exp_field();
  MetricField ghat = conformal_metric(gf, factor);

  CurvaturePack pk = curvature_at(gf, p, 4);
  CurvaturePack ph = curvature_at(ghat, p, 4);

  Jet fj = f.eval(p, 1);
  std::array<cplx, 4> ups;
  for (int a = 0; a < 4; ++a) {
    MultiIndex mi{0, 0, 0, 0};
    mi[static_cast<size_t>(a)] = 1;
    ups[static_cast<size_t>(a)] = fj.deriv(mi);
  }
  // nabla_a Ups_b of g and Ups^c Ups_c
  Jet fj2 = f.eval(p, 2);
  std::array<std::array<cplx, 4>, 4> nups;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      MultiIndex mi{0, 0, 0, 0};
      mi[static_cast<size_t>(a)] += 1;
      mi[static_cast<size_t>(b)] += 1;
      cplx val = fj2.deriv(mi);
      for (int e = 0; e < 4; ++e)
        val -= pk.christoffel[static_cast<size_t>(e)][static_cast<size_t>(a)]
                             [static_cast<size_t>(b)]
                   .value() *
               ups[static_cast<size_t>(e)];
      nups[static_cast<size_t>(a)][static_cast<size_t>(b)] = val;
    }
  std::array<cplx, 4> upsup{};
  cplx ups2 = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b)
      upsup[static_cast<size_t>(a)] += pk.ginv[static_cast<size_t>(a)][static_cast<size_t>(b)].value() *
                                       ups[static_cast<size_t>(b)];
  }
  for (int a = 0; a < 4; ++a) ups2 += upsup[static_cast<size_t>(a)] * ups[static_cast<size_t>(a)];

  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      cplx pred = pk.schouten[static_cast<size_t>(a)][static_cast<size_t>(b)].value() -
                  nups[static_cast<size_t>(a)][static_cast<size_t>(b)] +
                  ups[static_cast<size_t>(a)] * ups[static_cast<size_t>(b)] -
                  0.5 * ups2 * pk.g[static_cast<size_t>(a)][static_cast<size_t>(b)].value();
      out.schouten_law = std::max(
          out.schouten_law,
          std::abs(ph.schouten[static_cast<size_t>(a)][static_cast<size_t>(b)].value() - pred));
    }
  {
    double e2f = std::exp(2 * fj.value().real());
    cplx pred = pk.schouten_scalar.value();
    cplx div = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        div += pk.ginv[static_cast<size_t>(a)][static_cast<size_t>(b)].value() *
               nups[static_cast<size_t>(a)][static_cast<size_t>(b)];
    pred = pred - div - ups2;
    // hatted Schouten scalar carries weight -2 against the hatted inverse metric
    out.schouten_scalar_law =
        std::abs(ph.schouten_scalar.value() * e2f - pred);
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        cplx pred = pk.cotton[static_cast<size_t>(a)][static_cast<size_t>(b)]
                             [static_cast<size_t>(c)]
                        .value();
        for (int d = 0; d < 4; ++d)
          pred += upsup[static_cast<size_t>(d)] *
                  pk.weyl[static_cast<size_t>(d)][static_cast<size_t>(a)][static_cast<size_t>(b)]
                         [static_cast<size_t>(c)]
                      .value();
        out.cotton_law = std::max(
            out.cotton_law,
            std::abs(
                ph.cotton[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)]
                    .value() -
                pred));
      }
  {
    double e2f = std::exp(2 * fj.value().real());
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            cplx lhs = ph.weyl[static_cast<size_t>(a)][static_cast<size_t>(b)]
                              [static_cast<size_t>(c)][static_cast<size_t>(d)]
                           .value();
            cplx rhs = e2f * pk.weyl[static_cast<size_t>(a)][static_cast<size_t>(b)]
                                    [static_cast<size_t>(c)][static_cast<size_t>(d)]
                                 .value();
            out.weyl_scaling = std::max(out.weyl_scaling, std::abs(lhs - rhs));
          }
    // conformal covariance of the Bach tensor in 4D: hat B_ab = e^{-2f} B_ab
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        out.bach_invariance = std::max(
            out.bach_invariance,
            std::abs(e2f * ph.bach[static_cast<size_t>(a)][static_cast<size_t>(b)].value() -
                     pk.bach[static_cast<size_t>(a)][static_cast<size_t>(b)].value()));
  }
  return out;
}

bool is_lorentzian(const MetricJets& g, double tol) {
  // Jacobi eigenvalue iteration on the real symmetric part
  double a[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx v = g[static_cast<size_t>(i)][static_cast<size_t>(j)].value();
      if (std::abs(v.imag()) > 1e-8) return false;
      a[i][j] = v.real();
    }
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-24) break;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        if (std::abs(a[i][j]) < 1e-18) continue;
        double phi = 0.5 * std::atan2(2 * a[i][j], a[j][j] - a[i][i]);
        double c = std::cos(phi), s = std::sin(phi);
        for (int k = 0; k < 4; ++k) {
          double aik = a[i][k], ajk = a[j][k];
          a[i][k] = c * aik - s * ajk;
          a[j][k] = s * aik + c * ajk;
        }
        for (int k = 0; k < 4; ++k) {
          double aki = a[k][i], akj = a[k][j];
          a[k][i] = c * aki - s * akj;
          a[k][j] = s * aki + c * akj;
        }
      }
  }
  int neg = 0, pos = 0;
  for (int i = 0; i < 4; ++i) {
    if (a[i][i] < -tol) ++neg;
    if (a[i][i] > tol) ++pos;
  }
  return neg == 1 && pos == 3;
}

std::array<std::array<double, 4>, 4> metric_values(const MetricJets& g) {
  std::array<std::array<double, 4>, 4> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          g[static_cast<size_t>(i)][static_cast<size_t>(j)].value().real();
  return out;
}

}  // namespace feff
