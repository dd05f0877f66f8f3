#include "feff/jets.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

namespace feff {

namespace {

constexpr int kPackBase = kMaxJetOrder + 1;

int pack(const MultiIndex& mi) {
  return ((mi[0] * kPackBase + mi[1]) * kPackBase + mi[2]) * kPackBase + mi[3];
}

struct Tables {
  std::vector<MultiIndex> list;           // graded lex over all |mi| <= kMaxJetOrder
  std::vector<int> position;              // packed exponents -> dense position
  std::vector<int> order_offset;          // first position of each total degree
  std::vector<std::array<int, 4>> shift;  // position of mi + e_var, or -1

  Tables() {
    position.assign(kPackBase * kPackBase * kPackBase * kPackBase, -1);
    order_offset.assign(kMaxJetOrder + 2, 0);
    for (int deg = 0; deg <= kMaxJetOrder; ++deg) {
      order_offset[deg] = static_cast<int>(list.size());
      for (int i = deg; i >= 0; --i)
        for (int j = deg - i; j >= 0; --j)
          for (int k = deg - i - j; k >= 0; --k) {
            MultiIndex mi{i, j, k, deg - i - j - k};
            position[pack(mi)] = static_cast<int>(list.size());
            list.push_back(mi);
          }
    }
    order_offset[kMaxJetOrder + 1] = static_cast<int>(list.size());
    shift.resize(list.size());
    for (size_t p = 0; p < list.size(); ++p)
      for (int v = 0; v < 4; ++v) {
        MultiIndex mi = list[p];
        mi[v] += 1;
        int total = mi[0] + mi[1] + mi[2] + mi[3];
        shift[p][v] = total <= kMaxJetOrder ? position[pack(mi)] : -1;
      }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

struct MulTable {
  // flattened triples (ia, ib, ic) with |a|+|b| <= order
  std::vector<int> triples;
};

const MulTable& mul_table(int order) {
  static std::unordered_map<int, MulTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  const Tables& t = tables();
  MulTable mt;
  int n = jet_coeff_count(order);
  for (int ia = 0; ia < n; ++ia) {
    const MultiIndex& a = t.list[ia];
    int da = a[0] + a[1] + a[2] + a[3];
    for (int ib = 0; ib < n; ++ib) {
      const MultiIndex& b = t.list[ib];
      int db = b[0] + b[1] + b[2] + b[3];
      if (da + db > order) continue;
      MultiIndex csum{a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
      mt.triples.push_back(ia);
      mt.triples.push_back(ib);
      mt.triples.push_back(t.position[pack(csum)]);
    }
  }
  return cache.emplace(order, std::move(mt)).first->second;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

int jet_coeff_count(int order) {
  if (order < 0 || order > kMaxJetOrder) throw JetError("jet order out of range");
  return tables().order_offset[order + 1];
}

int multi_index_position(const MultiIndex& mi) {
  for (int v : mi)
    if (v < 0) throw JetError("negative exponent in multi-index");
  if (mi[0] + mi[1] + mi[2] + mi[3] > kMaxJetOrder) throw JetError("multi-index degree too large");
  return tables().position[pack(mi)];
}

const std::vector<MultiIndex>& multi_index_list(int order) {
  static std::unordered_map<int, std::vector<MultiIndex>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  const Tables& t = tables();
  std::vector<MultiIndex> out(t.list.begin(), t.list.begin() + jet_coeff_count(order));
  return cache.emplace(order, std::move(out)).first->second;
}

Jet::Jet(int order, cplx value) : order_(order) {
  if (order < 0 || order > kMaxJetOrder) throw JetError("jet order out of range");
  c_.assign(static_cast<size_t>(jet_coeff_count(order)), cplx(0.0));
  c_[0] = value;
}

Jet Jet::coordinate(double value, int var, int order) {
  Jet j(order, cplx(value));
  if (order >= 1) {
    MultiIndex mi{0, 0, 0, 0};
    mi[var] = 1;
    j.c_[static_cast<size_t>(multi_index_position(mi))] = cplx(1.0);
  }
  return j;
}

cplx Jet::coeff(const MultiIndex& mi) const {
  int total = mi[0] + mi[1] + mi[2] + mi[3];
  if (total > order_) throw JetError("multi-index degree exceeds jet order");
  return c_[static_cast<size_t>(multi_index_position(mi))];
}

cplx Jet::deriv(const MultiIndex& mi) const {
  cplx c = coeff(mi);
  double f = 1.0;
  for (int v : mi) f *= factorial(v);
  return c * f;
}

Jet Jet::truncated(int order) const {
  if (order >= order_) return *this;
  Jet out(order, 0.0);
  std::copy(c_.begin(), c_.begin() + jet_coeff_count(order), out.c_.begin());
  return out;
}

Jet Jet::d(int var) const {
  if (order_ == 0) return Jet(0, 0.0);
  Jet out(order_ - 1, 0.0);
  const Tables& t = tables();
  int n = jet_coeff_count(order_ - 1);
  for (int p = 0; p < n; ++p) {
    int src = t.shift[static_cast<size_t>(p)][var];
    double mult = t.list[static_cast<size_t>(p)][var] + 1;
    out.c_[static_cast<size_t>(p)] = c_[static_cast<size_t>(src)] * mult;
  }
  return out;
}

Jet Jet::conj() const {
  Jet out = *this;
  for (auto& v : out.c_) v = std::conj(v);
  return out;
}

Jet Jet::real_part() const {
  Jet out = *this;
  for (auto& v : out.c_) v = cplx(v.real(), 0.0);
  return out;
}

Jet Jet::imag_part() const {
  Jet out = *this;
  for (auto& v : out.c_) v = cplx(v.imag(), 0.0);
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (auto& v : out.c_) v = -v;
  return out;
}

void Jet::align(const Jet& a, const Jet& b, int& order) { order = std::min(a.order_, b.order_); }

Jet& Jet::operator+=(const Jet& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator+=(cplx s) {
  c_[0] += s;
  return *this;
}

Jet& Jet::operator-=(cplx s) {
  c_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  int order = std::min(a.order_, b.order_);
  Jet out(order, 0.0);
  const MulTable& mt = mul_table(order);
  const int* tr = mt.triples.data();
  size_t n = mt.triples.size();
  for (size_t i = 0; i < n; i += 3) {
    out.c_[static_cast<size_t>(tr[i + 2])] +=
        a.c_[static_cast<size_t>(tr[i])] * b.c_[static_cast<size_t>(tr[i + 1])];
  }
  return out;
}

Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

Jet operator/(cplx b, const Jet& a) { return recip(a) * b; }

Jet Jet::compose_series(const std::vector<cplx>& series) const {
  // Horner evaluation of sum_k series[k] * (this - value)^k.
  Jet u = *this;
  u.c_[0] = 0.0;
  Jet acc(order_, series[static_cast<size_t>(order_)]);
  for (int k = order_ - 1; k >= 0; --k) {
    acc = acc * u;
    acc += series[static_cast<size_t>(k)];
  }
  return acc;
}

Jet Jet::apply(Elementary fn) const {
  const int n = order_;
  std::vector<cplx> s(static_cast<size_t>(n) + 1);
  const cplx v = c_[0];
  switch (fn) {
    case Elementary::Sin:
    case Elementary::Cos: {
      cplx sv = std::sin(v), cv = std::cos(v);
      for (int k = 0; k <= n; ++k) {
        cplx base;
        int phase = (fn == Elementary::Sin) ? k % 4 : (k + 1) % 4;
        switch (phase) {
          case 0: base = sv; break;
          case 1: base = cv; break;
          case 2: base = -sv; break;
          default: base = -cv; break;
        }
        s[static_cast<size_t>(k)] = base / factorial(k);
      }
      return compose_series(s);
    }
    case Elementary::Tan: {
      if (std::abs(std::cos(v)) < 1e-300) throw SingularInputError("tan at a pole");
      return apply(Elementary::Sin) / apply(Elementary::Cos);
    }
    case Elementary::Exp: {
      cplx ev = std::exp(v);
      for (int k = 0; k <= n; ++k) s[static_cast<size_t>(k)] = ev / factorial(k);
      return compose_series(s);
    }
    case Elementary::Log: {
      if (std::abs(v) < 1e-300) throw SingularInputError("log of zero value");
      s[0] = std::log(v);
      cplx p = v;
      for (int k = 1; k <= n; ++k) {
        s[static_cast<size_t>(k)] = ((k % 2 == 1) ? 1.0 : -1.0) / (static_cast<double>(k) * p);
        p *= v;
      }
      return compose_series(s);
    }
    case Elementary::Sqrt: {
      if (std::abs(v) < 1e-300) throw SingularInputError("sqrt at branch point");
      cplx r = std::sqrt(v);
      s[0] = r;
      // d^k/dv^k v^{1/2} / k! = binom(1/2, k) v^{1/2-k}
      cplx coeff = r;
      double binom = 1.0;
      cplx p = 1.0;
      for (int k = 1; k <= n; ++k) {
        binom *= (0.5 - (k - 1)) / k;
        p *= v;
        s[static_cast<size_t>(k)] = coeff * binom / p;
      }
      return compose_series(s);
    }
    case Elementary::Recip: {
      if (std::abs(v) < 1e-300) throw SingularInputError("reciprocal of zero value");
      cplx p = v;
      for (int k = 0; k <= n; ++k) {
        s[static_cast<size_t>(k)] = ((k % 2 == 0) ? 1.0 : -1.0) / p;
        p *= v;
      }
      return compose_series(s);
    }
  }
  throw JetError("unknown elementary function");
}

Jet Jet::pow_int(int n) const {
  if (n == 0) return Jet(order_, 1.0);
  Jet base = n > 0 ? *this : recip(*this);
  int e = n > 0 ? n : -n;
  Jet acc(order_, 1.0);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

double Jet::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

Jet sin(const Jet& j) { return j.apply(Elementary::Sin); }
Jet cos(const Jet& j) { return j.apply(Elementary::Cos); }
Jet tan(const Jet& j) { return j.apply(Elementary::Tan); }
Jet exp(const Jet& j) { return j.apply(Elementary::Exp); }
Jet log(const Jet& j) { return j.apply(Elementary::Log); }
Jet sqrt(const Jet& j) { return j.apply(Elementary::Sqrt); }
Jet recip(const Jet& j) { return j.apply(Elementary::Recip); }

}  // namespace feff
