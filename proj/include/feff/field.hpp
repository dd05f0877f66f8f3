#pragma once

#include <array>
#include <functional>
#include <memory>

#include "feff/expr.hpp"
#include "feff/jets.hpp"

namespace feff {

using Pt = std::array<double, 4>;  // chart point (x, y, u, phi)

// A pointwise jet-valued scalar field.  Evaluation pulls whatever jet order a
// consumer asks for; composite fields request higher orders from their
// ingredients as needed, so differentiation never runs out of coefficients.
class ScalarField {
 public:
  using Fn = std::function<Jet(const Pt&, int)>;

  ScalarField() = default;
  explicit ScalarField(Fn fn) : fn_(std::make_shared<Fn>(std::move(fn))) {}

  static ScalarField constant(cplx v);
  static ScalarField coordinate(int var);
  static ScalarField from_expr(const ScalarFieldExpr& e);

  bool valid() const { return fn_ != nullptr; }

  Jet eval(const Pt& p, int order) const { return (*fn_)(p, order); }
  cplx value(const Pt& p) const { return eval(p, 0).value(); }

  ScalarField operator-() const;
  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator/(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(cplx s, const ScalarField& a);
  friend ScalarField operator+(const ScalarField& a, cplx s);
  friend ScalarField operator+(cplx s, const ScalarField& a) { return a + s; }
  friend ScalarField operator-(const ScalarField& a, cplx s) { return a + (-s); }

  ScalarField conj_field() const;
  ScalarField real_field() const;
  ScalarField sqrt_field() const;
  ScalarField exp_field() const;
  ScalarField recip_field() const;

  // Partial derivative with respect to a chart coordinate.
  ScalarField d(int var) const;

 private:
  std::shared_ptr<Fn> fn_;
};

// Memoisation key for per-point caches.
struct PtOrderKey {
  Pt p;
  int order;
  bool operator==(const PtOrderKey& o) const { return p == o.p && order == o.order; }
};

struct PtOrderKeyHash {
  size_t operator()(const PtOrderKey& k) const {
    size_t h = std::hash<int>()(k.order);
    for (double v : k.p) {
      size_t b = std::hash<double>()(v);
      h ^= b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace feff
