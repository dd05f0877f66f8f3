#pragma once

#include "feff/chart.hpp"

namespace feff {

// Weyl components against the adapted null frame (k, l, m, mbar).  The slot
// convention is pinned by the single-coefficient calibration of the Fourier
// modes (see np_scalars); psi2..psi4 come with jets in the fiber coordinate so
// their phi-derivatives are available.
struct NPScalars {
  cplx psi0, psi1, psi2, psi3, psi4;
};

struct NPScalarJets {
  Jet psi0, psi1, psi2, psi3, psi4;
  NPScalars values() const {
    return {psi0.value(), psi1.value(), psi2.value(), psi3.value(), psi4.value()};
  }
};

enum class PetrovType { I, II, D, III, N, O };
const char* petrov_name(PetrovType t);

struct NotAlgebraicallySpecial : std::runtime_error {
  explicit NotAlgebraicallySpecial(const std::string& w) : std::runtime_error(w) {}
};

// Weyl contractions on (k, l, m, mbar); `order` is the remaining jet order of
// the returned scalars (curvature runs at order+2).
NPScalarJets np_scalar_jets(const FeffermanChart& chart, const Pt& p, int order);
NPScalars np_scalars(const FeffermanChart& chart, const Pt& p);

// Classification of an algebraically special Weyl tensor; zero-tests are
// relative to max |Psi_i| (absolute when everything vanishes).
PetrovType classify(const NPScalars& np, double tol);

struct PndReport {
  bool holds = false;
  double residual = 0.0;
  double weyl_scale = 0.0;  // max |Weyl frame component| for context
};

// Degeneracy levels of the congruence direction as a principal null
// direction: 1: W(k,v,k,v) = 0;  2: W(k,v,k,.) = 0;  3: W(k,v,w,.) = 0;
// 4: W(k,.,.,.) = 0, for v, w in the orthogonal complement of k.
PndReport pnd_degeneracy(const FeffermanChart& chart, const Pt& p, int level, double tol);

// |B(k,k) - [(psi2dd + cc) + 6i(psi2d - cc) - 8(psi2 + cc)]| at the point.
struct BachPsi2Report {
  double identity_residual = 0.0;
  double bkk = 0.0;
  double pnd2_residual = 0.0;  // precondition: level-2 PND
};
BachPsi2Report bach_psi2_identity(const FeffermanChart& chart, const Pt& p);

// Transformation of the NP scalars under a contact rescaling by f, compared
// against recomputation on the rescaled chart.  Components transform with the
// frame factor e^{-f/2} per alpha-index and the trivialisation factor e^{-f}:
//   psi2-hat = e^{-f} psi2
//   psi3-hat = e^{-3f/2} (psi3 - (3/2) i Ups_1 psi2)
//   psi4-hat = e^{-2f} (psi4 + 2 i Ups_1 psi3 - (3/2) Ups_1^2 psi2)
struct PsiCovarianceReport {
  double psi2 = 0.0, psi3 = 0.0, psi4 = 0.0;
};
PsiCovarianceReport psi_covariance_check(const FeffermanChart& chart, const ScalarField& f,
                                         const Pt& p);

// Rescaled chart with the same abstract perturbation: the alpha-part
// coefficients pick up e^{-f/2}; the zero-part picks up e^{-f} and the
// Ups-shift of the weighted coefficients.
FeffermanChart rescale_chart(const FeffermanChart& chart, const ScalarField& f);

}  // namespace feff
