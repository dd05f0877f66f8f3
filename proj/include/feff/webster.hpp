#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>

#include "feff/coframe.hpp"

namespace feff {

// Frame directions on the base: the Reeb direction and the CR legs.
enum Dir : int { D0 = 0, D1 = 1, D1b = 2 };

// Webster data of a unitary adapted coframe, evaluated pointwise through
// jets.  Connection components are taken against (theta, theta1, theta1b);
// the torsion is A_{11} with indices lowered by the (unit) Levi form.
class BaseGeom {
 public:
  explicit BaseGeom(BaseCoframe unitary_cf);

  const BaseCoframe& coframe() const { return cf_; }

  CoframeJets frames(const Pt& p, int order) const;

  Jet gamma(Dir d, const Pt& p, int order) const;      // components of Gamma
  Jet gamma_conj(Dir d, const Pt& p, int order) const; // components of conj(Gamma)
  Jet torsion(const Pt& p, int order) const;           // A_{11}
  Jet schouten(const Pt& p, int order) const;          // P (real scalar)
  Jet cartan_t(const Pt& p, int order) const;          // T_1
  Jet cartan_q(const Pt& p, int order) const;          // Q_{11}

  ScalarField gamma_field(Dir d) const;
  ScalarField torsion_field() const;
  ScalarField schouten_field() const;
  ScalarField cartan_q_field() const;

  // Directional derivative of a field along a frame leg.
  Jet dir_deriv(Dir d, const ScalarField& f, const Pt& p, int order) const;
  ScalarField dir_deriv_field(Dir d, const ScalarField& f) const;

  // Structure-equation round trip: reassembled d(theta1) from (Gamma, A)
  // minus the direct exterior derivative, max component residual at p.
  double structure_roundtrip_residual(const Pt& p) const;

  // max |Gamma_d + conj(Gamma)_d| over directions (Levi-form preservation)
  double antihermitian_residual(const Pt& p) const;

 private:
  struct WebsterJets {
    Jet gamma0, gamma1, gamma1b, torsion, h;
  };
  WebsterJets webster_raw(const Pt& p, int order) const;

  BaseCoframe cf_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

// A scalar component of a weighted tensor, in the trivialisation where the
// canonical density of the coframe has unit function.  Only the weight
// difference dw = w - w' and the net connection charge g enter covariant
// differentiation in a unitary coframe:
//   nabla_d f = e_d(f) + (dw/3 + g) Gamma_d f          (directions 1, 1b, 0)
// where g counts (lower-1b + upper-1) minus (lower-1 + upper-1b) indices.
struct CRField {
  ScalarField fn;
  double dw = 0.0;
  int g = 0;

  cplx value(const Pt& p) const { return fn.value(p); }
};

// Partial gauge for the gauged Webster connection (xi_1bar is conj(xi_1)).
struct Gauge {
  ScalarField xi1;  // (1,0) component
  ScalarField xi0;  // theta component; empty when only the partial gauge is used
  bool valid() const { return xi1.valid(); }
};

CRField cr_conj(const CRField& a);
CRField cr_mul(const CRField& a, const CRField& b);
CRField cr_add(const CRField& a, const CRField& b);
CRField cr_sub(const CRField& a, const CRField& b);
CRField cr_scale(cplx s, const CRField& a);

// Covariant derivative along a frame direction.  A direction-1 derivative adds
// a lower 1 index (g -= 1), direction 1b adds a lower 1b index (g += 1), the
// Reeb direction leaves g unchanged.
CRField cov_deriv(const BaseGeom& geom, const CRField& f, Dir d);

// Gauged variant: adds -i dw xi_d f (xi_1b = conj(xi_1); xi_0 optional).
CRField cov_deriv_gauged(const BaseGeom& geom, const Gauge& gauge, const CRField& f, Dir d);

// Webster--Weyl residual  nabla_1 lam_1 - i lam_1 lam_1 - A_{11}.
ScalarField webster_weyl_residual(const BaseGeom& geom, const ScalarField& lam1);

// Gauged second-order residual  nabla_1 nabla_1 sigma + i A_{11} sigma on a
// density of weight (1, w).
ScalarField gauged_second_order_residual(const BaseGeom& geom, const Gauge& gauge,
                                         const CRField& sigma);

// Commutator residuals on a density f of weight (w, w'):
//   com1: (n1 n1b - n1b n1) f - (4/3) dw P f + i n0 f
//   com2: (n1 n0 - n0 n1) f - (1/3) dw (n1b A) f - A n1b f
ScalarField commutator1_residual(const BaseGeom& geom, const CRField& f);
ScalarField commutator2_residual(const BaseGeom& geom, const CRField& f);

}  // namespace feff
