#pragma once

#include <optional>
#include <string>
#include <vector>

#include "feff/field.hpp"

namespace feff {

struct CoframeError : std::runtime_error {
  explicit CoframeError(const std::string& w) : std::runtime_error(w) {}
};

// Adapted coframe (theta, theta1) on the three-dimensional base, components
// against (dx, dy, du).  theta is real valued, theta1 complex.
struct BaseCoframe {
  std::array<ScalarField, 3> theta;
  std::array<ScalarField, 3> theta1;
};

struct CoframeJets {
  std::array<Jet, 3> th, th1, th1b;  // one-form components
  std::array<Jet, 3> e0, e1, e1b;    // dual frame vector components
  Jet det;                           // det(theta, theta1, theta1bar)
};

// Coframe jets and the dual frame at a point (3x3 inverse on the base slice).
CoframeJets coframe_jets(const BaseCoframe& cf, const Pt& p, int order);

// Exterior derivative of a one-form given by three component jets taken at
// order+1; result is the antisymmetric matrix of coefficient jets at `order`.
std::array<std::array<Jet, 3>, 3> exterior_d(const std::array<Jet, 3>& comp);

// Levi factor h of the coframe, defined by d(theta) = i h theta1 ^ theta1bar.
ScalarField levi_factor(const BaseCoframe& cf);

struct ValidationReport {
  double max_adapted_residual = 0.0;  // theta-terms of d(theta)
  double min_abs_det = 0.0;
  double max_h_imag = 0.0;
  double min_h_real = 0.0;
  bool pass = false;
  std::string message;
};

ValidationReport validate_adapted(const BaseCoframe& cf, const std::vector<Pt>& points,
                                  double tol);

// Rescales theta1 by sqrt(h) so the Levi factor becomes 1.  Throws on h <= 0.
BaseCoframe unitarize(const BaseCoframe& cf, const std::vector<Pt>& check_points = {});

struct RescaledCoframe {
  BaseCoframe coframe;            // e^f theta, unitarised e^{f/2}(theta1 + i Ups^1 theta)
  ScalarField expected_torsion;   // components against the new unitary coframe
  ScalarField expected_schouten;  // new-frame function (carries e^{-f})
  ScalarField expected_cartan;    // e^{-2f} times the original Cartan tensor
  ScalarField conformal_factor;   // e^f
};

// Contact rescaling theta -> e^f theta together with the transformed Webster
// data predicted from the old one; the pair of computation paths is the
// covariance oracle.
class BaseGeom;
RescaledCoframe rescale_contact(const BaseCoframe& unitary_cf, const ScalarField& f);

// Adapted coframe of the second kind: (omega, omega1) with structure function
// gammaHat so that d(omega) = i omega1^omega1b + omega^(gammaHat omega1 + cc).
struct SecondKindCoframe {
  std::array<ScalarField, 3> omega;
  std::array<ScalarField, 3> omega1;
  ScalarField gammaHat;
};

BaseCoframe second_kind_to_first(const SecondKindCoframe& skc);
SecondKindCoframe first_kind_to_second(const BaseCoframe& unitary_cf);

// Builds the second-kind coframe dual to the frame (f0, f1, f1bar) where f1
// has the given components and f0 is fixed by [f1, f1bar] = -i f0.
SecondKindCoframe second_kind_from_vector(const std::array<ScalarField, 3>& f1);

struct SecondKindValidation {
  double max_structure_residual = 0.0;  // omega1^omega1b-component of d(omega1)
  double max_levi_residual = 0.0;       // dOmega (1,1b) coefficient vs i
  double max_gamma_residual = 0.0;      // extracted vs stored gammaHat
  bool pass = false;
};

SecondKindValidation validate_second_kind(const SecondKindCoframe& skc,
                                          const std::vector<Pt>& points, double tol);

}  // namespace feff
