#include "feff/field.hpp"

namespace feff {

ScalarField ScalarField::constant(cplx v) {
  return ScalarField([v](const Pt&, int order) { return Jet::constant(v, order); });
}

ScalarField ScalarField::coordinate(int var) {
  return ScalarField([var](const Pt& p, int order) {
    return order == 0 ? Jet::constant(p[static_cast<size_t>(var)], 0)
                      : Jet::coordinate(p[static_cast<size_t>(var)], var, order);
  });
}

ScalarField ScalarField::from_expr(const ScalarFieldExpr& e) {
  return ScalarField([e](const Pt& p, int order) { return e.eval_jet(p, order); });
}

ScalarField ScalarField::operator-() const {
  auto self = *this;
  return ScalarField([self](const Pt& p, int n) { return -self.eval(p, n); });
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return ScalarField([a, b](const Pt& p, int n) { return a.eval(p, n) + b.eval(p, n); });
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return ScalarField([a, b](const Pt& p, int n) { return a.eval(p, n) - b.eval(p, n); });
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return ScalarField([a, b](const Pt& p, int n) { return a.eval(p, n) * b.eval(p, n); });
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  return ScalarField([a, b](const Pt& p, int n) { return a.eval(p, n) / b.eval(p, n); });
}

ScalarField operator*(cplx s, const ScalarField& a) {
  return ScalarField([s, a](const Pt& p, int n) { return s * a.eval(p, n); });
}

ScalarField operator+(const ScalarField& a, cplx s) {
  return ScalarField([s, a](const Pt& p, int n) { return a.eval(p, n) + s; });
}

ScalarField ScalarField::conj_field() const {
  auto self = *this;
  return ScalarField([self](const Pt& p, int n) { return self.eval(p, n).conj(); });
}

ScalarField ScalarField::real_field() const {
  auto self = *this;
  return ScalarField([self](const Pt& p, int n) { return self.eval(p, n).real_part(); });
}

ScalarField ScalarField::sqrt_field() const {
  auto self = *this;
  return ScalarField([self](const Pt& p, int n) { return sqrt(self.eval(p, n)); });
}

ScalarField ScalarField::exp_field() const {
  auto self = *this;
  return ScalarField([self](const Pt& p, int n) { return exp(self.eval(p, n)); });
}

ScalarField ScalarField::recip_field() const {
  auto self = *this;
  return ScalarField([self](const Pt& p, int n) { return recip(self.eval(p, n)); });
}

ScalarField ScalarField::d(int var) const {
  auto self = *this;
  return ScalarField([self, var](const Pt& p, int n) { return self.eval(p, n + 1).d(var); });
}

}  // namespace feff
