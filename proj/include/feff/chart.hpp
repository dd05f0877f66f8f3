#pragma once

#include <map>

#include "feff/curvature.hpp"
#include "feff/webster.hpp"

namespace feff {

// Fiber-Fourier coefficient tables of the perturbation one-form, in the
// trivialisation of the chart coframe.  The barred components are derived by
// conjugation, never stored; xi0 stores k >= 0 with xi0^{(-k)} = conj(xi0^{(k)}).
struct PerturbationData {
  std::map<int, ScalarField> xi_alpha;  // k -> xi_1^{(k)}
  std::map<int, ScalarField> xi_zero;   // k >= 0 -> xi_0^{(k)}

  bool alpha_support_in(std::initializer_list<int> ks) const;
  ScalarField xi_alpha_mode(int k) const;  // zero field when absent
  ScalarField xi_zero_mode(int k) const;   // conjugate pairing applied for k < 0
};

// Full fiber components xi_1(x,y,u,phi) etc. as chart fields.
ScalarField assemble_alpha(const PerturbationData& pert);
ScalarField assemble_zero(const PerturbationData& pert);

// The circle-bundle chart over a unitary adapted coframe: the perturbed
// Fefferman metric g = 4 theta . lambda + 2 theta1 . theta1b with
// lambda = dphi + (i/3) Gamma - (1/3) P theta + xi.
class FeffermanChart {
 public:
  FeffermanChart(BaseCoframe unitary_cf, PerturbationData pert);

  const BaseGeom& geom() const { return geom_; }
  const BaseCoframe& coframe() const { return geom_.coframe(); }
  const PerturbationData& pert() const { return pert_; }

  // lambda components against (theta, theta1, theta1b) as chart fields
  ScalarField lambda_alpha() const { return lam1_; }
  ScalarField lambda_zero() const { return lam0_; }

  // metric jets at a point in chart coordinates (x, y, u, phi)
  MetricJets metric_jets(const Pt& p, int order) const;
  MetricField metric_field() const;

  // coordinate components of theta and lambda (theta1 comes from the coframe)
  std::array<Jet, 4> theta4(const Pt& p, int order) const;
  std::array<Jet, 4> theta1_4(const Pt& p, int order) const;
  std::array<Jet, 4> lambda4(const Pt& p, int order) const;

  struct NullFrame {
    std::array<Jet, 4> k, l, m, mbar;  // vector components; l = elltilde / 2
  };
  NullFrame null_frame(const Pt& p, int order) const;

  // g(a, b) with metric and frame jets at the given order
  static Jet pair(const MetricJets& g, const std::array<Jet, 4>& a,
                  const std::array<Jet, 4>& b);

  struct FrameCheck {
    double pairing = 0.0;     // all stated pairings at the point
    double geodesic = 0.0;    // |nabla_k k|
    double shear = 0.0;       // trace-free screen part of nabla kappa
    double twist = 0.0;       // |d kappa (m, mbar)| (should be bounded away from 0)
  };
  FrameCheck frame_check(const Pt& p) const;

 private:
  BaseGeom geom_;
  PerturbationData pert_;
  ScalarField lam1_, lam0_;
};

}  // namespace feff
