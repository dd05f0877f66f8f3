#pragma once

#include <functional>

#include "feff/field.hpp"

namespace feff {

// Symmetric metric components g_{ab} in chart coordinates as jets at a point.
using MetricJets = std::array<std::array<Jet, 4>, 4>;
using MetricField = std::function<MetricJets(const Pt&, int)>;

MetricField constant_metric(const std::array<double, 4>& diag);
MetricField conformal_metric(const MetricField& g, const ScalarField& factor);  // factor * g

// Curvature tensors of a metric at a point, with the sign conventions
//   2 nabla_[a nabla_b] alpha_c = -Riem_{ab}{}^{d}{}_{c} alpha_d,
//   Riem_{abcd} = Weyl_{abcd} + g_ac P_bd - g_bc P_ad + g_bd P_ac - g_ad P_bc,
//   Ric_{ab} = Riem_{ca}{}^{c}{}_{b},  P_ab = (Ric_ab - Sc/6 g_ab)/2,
//   Cot_{abc} = 2 nabla_[b P_{c]a},  Bach_ab = -nabla^c Cot_abc + P^{cd} W_acbd.
// Tensors are kept jet-valued so consumers can extract point derivatives; the
// remaining jet order drops with each differentiation (metric order n gives
// Riemann/Weyl at n-2, Cotton at n-3, Bach at n-4).
struct CurvaturePack {
  int order = 0;  // metric jet order used
  MetricJets g, ginv;
  std::array<std::array<std::array<Jet, 4>, 4>, 4> christoffel;  // Gamma^a_{bc}
  std::array<std::array<std::array<std::array<Jet, 4>, 4>, 4>, 4> riemann;  // R_{abcd}
  std::array<std::array<Jet, 4>, 4> ricci;
  Jet scalar;
  std::array<std::array<Jet, 4>, 4> schouten;
  Jet schouten_scalar;
  std::array<std::array<std::array<std::array<Jet, 4>, 4>, 4>, 4> weyl;  // W_{abcd}
  bool has_cotton = false;
  std::array<std::array<std::array<Jet, 4>, 4>, 4> cotton;  // C_{abc}
  bool has_bach = false;
  std::array<std::array<Jet, 4>, 4> bach;
};

struct CurvatureError : std::runtime_error {
  explicit CurvatureError(const std::string& w) : std::runtime_error(w) {}
};

CurvaturePack curvature_at(const MetricField& g, const Pt& p, int order);

struct PackInvariants {
  double riemann_symmetry = 0.0;  // pair/antisymmetry violations
  double first_bianchi = 0.0;
  double weyl_trace = 0.0;
  double ricci_schouten = 0.0;  // Ric - (2 P + P g)
  double bach_symmetry = 0.0;
  double bach_trace = 0.0;
};

PackInvariants pack_invariants(const CurvaturePack& pack);

// max |C_{abc} - nabla^d W_{dabc}| at the point (contracted Bianchi identity).
double bianchi_contracted_check(const MetricField& g, const Pt& p);

// Independent oracle: the same conventions evaluated through central finite
// differences of metric values only.
struct FDCurvature {
  std::array<std::array<std::array<double, 4>, 4>, 4> christoffel;
  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> riemann;
  std::array<std::array<double, 4>, 4> ricci;
  double scalar;
};

FDCurvature curvature_fd(const MetricField& g, const Pt& p, double step);

struct ConformalCheck {
  double schouten_law = 0.0;  // eq for P under g -> e^{2f} g
  double schouten_scalar_law = 0.0;
  double cotton_law = 0.0;
  double weyl_scaling = 0.0;  // lowered Weyl scales by e^{2f}
  double bach_invariance = 0.0;
};

ConformalCheck conformal_transform_check(const MetricField& g, const ScalarField& f,
                                         const Pt& p);

// Lorentzian signature test via Jacobi eigenvalues of the real part.
bool is_lorentzian(const MetricJets& g, double tol = 1e-9);

std::array<std::array<double, 4>, 4> metric_values(const MetricJets& g);

}  // namespace feff
