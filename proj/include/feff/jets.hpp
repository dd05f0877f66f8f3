#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace feff {

using cplx = std::complex<double>;

// Exponents (orders in x, y, u, phi).
using MultiIndex = std::array<int, 4>;

constexpr int kNumVars = 4;
constexpr int kMaxJetOrder = 12;

struct SingularInputError : std::runtime_error {
  explicit SingularInputError(const std::string& what) : std::runtime_error(what) {}
};

struct JetError : std::runtime_error {
  explicit JetError(const std::string& what) : std::runtime_error(what) {}
};

// Number of coefficients of a dense jet of the given total degree in 4 vars:
// C(order+4, 4).
int jet_coeff_count(int order);

// Position of a multi-index in the dense layout for a given order; the layout
// is shared across orders (graded lexicographic), so truncation is a prefix.
int multi_index_position(const MultiIndex& mi);

const std::vector<MultiIndex>& multi_index_list(int order);

enum class Elementary { Sin, Cos, Tan, Exp, Log, Sqrt, Recip };

// Truncated multivariate Taylor expansion of a complex scalar at a chart
// point.  Coefficients are mixed partials divided by factorials, so arithmetic
// is exact on polynomials of degree <= order up to roundoff.
class Jet {
 public:
  Jet() : order_(0), c_(1, cplx(0.0)) {}
  Jet(int order, cplx value);

  static Jet constant(cplx value, int order) { return Jet(order, value); }
  // Coordinate seed: value at the point, unit first-order coefficient in var.
  static Jet coordinate(double value, int var, int order);

  int order() const { return order_; }
  cplx value() const { return c_[0]; }

  // Taylor coefficient for the multi-index (mixed partial / factorials).
  cplx coeff(const MultiIndex& mi) const;
  // Mixed partial derivative: coefficient times the multi-factorial.
  cplx deriv(const MultiIndex& mi) const;

  Jet truncated(int order) const;

  // Partial derivative with respect to one chart variable; order drops by 1.
  Jet d(int var) const;

  Jet conj() const;  // valid because chart variables are real
  Jet real_part() const;
  Jet imag_part() const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(cplx s);
  Jet& operator-=(cplx s);
  Jet& operator*=(cplx s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, cplx b) { return a += b; }
  friend Jet operator+(cplx b, Jet a) { return a += b; }
  friend Jet operator-(Jet a, cplx b) { return a -= b; }
  friend Jet operator-(cplx b, const Jet& a) { return (-a) += b; }
  friend Jet operator*(Jet a, cplx b) { return a *= b; }
  friend Jet operator*(cplx b, Jet a) { return a *= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator/(Jet a, cplx b) { return a *= (1.0 / b); }
  friend Jet operator/(cplx b, const Jet& a);

  // Composition with an elementary function, exact to the jet order.
  Jet apply(Elementary fn) const;
  Jet pow_int(int n) const;

  double max_abs_coeff() const;

 private:
  int order_;
  std::vector<cplx> c_;

  static void align(const Jet& a, const Jet& b, int& order);
  Jet compose_series(const std::vector<cplx>& series) const;
};

Jet sin(const Jet& j);
Jet cos(const Jet& j);
Jet tan(const Jet& j);
Jet exp(const Jet& j);
Jet log(const Jet& j);
Jet sqrt(const Jet& j);
Jet recip(const Jet& j);

inline Jet jet_coordinate(const std::array<double, 4>& point, int var, int order) {
  if (var < 0 || var >= kNumVars) throw JetError("invalid coordinate index");
  if (order < 1) throw JetError("coordinate seed needs order >= 1");
  return Jet::coordinate(point[static_cast<size_t>(var)], var, order);
}

inline Jet jet_apply(Elementary fn, const Jet& arg) { return arg.apply(fn); }

inline cplx jet_extract(const Jet& jet, const MultiIndex& mi) { return jet.deriv(mi); }

}  // namespace feff
