#include "beltrami/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace beltrami {

namespace {

int jet_storage_size(int order) { return (order + 1) * (order + 2) / 2; }

void check_order_nonnegative(int order) {
  if (order < 0) {
    throw ContractError("jet order must be nonnegative, got " + std::to_string(order));
  }
}

void require_same_order(const Jet& a, const Jet& b, const char* op) {
  if (a.order() != b.order()) {
    throw InsufficientOrderError(std::string("jet order mismatch in ") + op + ": " +
                                 std::to_string(a.order()) + " vs " + std::to_string(b.order()));
  }
}

double singularity_tolerance(const Jet& g) { return 1e-12 * (1.0 + max_abs(g)); }

// Horner evaluation of the outer series sum_k outer[k] * (g - g0)^k in the
// truncated algebra; outer must hold order+1 coefficients.
Jet compose_series(const Jet& g, const std::vector<double>& outer) {
  const int n = g.order();
  Jet u = g;
  u.set_coeff(0, 0, 0.0);
  Jet result = Jet::constant(n, outer[static_cast<std::size_t>(n)]);
  for (int k = n - 1; k >= 0; --k) {
    result = result * u + outer[static_cast<std::size_t>(k)];
  }
  return result;
}

} // namespace

Jet::Jet(int order) : order_(order) {
  check_order_nonnegative(order);
  c_.assign(static_cast<std::size_t>(jet_storage_size(order)), 0.0);
}

Jet Jet::constant(int order, double value) {
  Jet j(order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable_s(int order, double base) {
  if (order < 1) {
    throw InsufficientOrderError("a coordinate seed jet needs order >= 1");
  }
  Jet j(order);
  j.c_[0] = base;
  j.c_[static_cast<std::size_t>(slot(1, 0))] = 1.0;
  return j;
}

Jet Jet::variable_t(int order, double base) {
  if (order < 1) {
    throw InsufficientOrderError("a coordinate seed jet needs order >= 1");
  }
  Jet j(order);
  j.c_[0] = base;
  j.c_[static_cast<std::size_t>(slot(0, 1))] = 1.0;
  return j;
}

void Jet::check_index(int a, int b) const {
  if (a < 0 || b < 0 || a + b > order_) {
    throw ContractError("jet coefficient index (" + std::to_string(a) + ", " + std::to_string(b) +
                        ") out of range for order " + std::to_string(order_));
  }
}

double Jet::coeff(int a, int b) const {
  check_index(a, b);
  return c_[static_cast<std::size_t>(slot(a, b))];
}

void Jet::set_coeff(int a, int b, double v) {
  check_index(a, b);
  c_[static_cast<std::size_t>(slot(a, b))] = v;
}

Jet Jet::truncated(int new_order) const {
  if (new_order > order_) {
    throw InsufficientOrderError("cannot truncate a jet of order " + std::to_string(order_) +
                                 " up to order " + std::to_string(new_order));
  }
  check_order_nonnegative(new_order);
  Jet out(new_order);
  std::copy(c_.begin(), c_.begin() + jet_storage_size(new_order), out.c_.begin());
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& v : out.c_) v = -v;
  return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
  require_same_order(*this, rhs, "+=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  require_same_order(*this, rhs, "-=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
  return *this;
}

Jet operator+(const Jet& a, const Jet& b) {
  require_same_order(a, b, "+");
  Jet out = a;
  out += b;
  return out;
}

Jet operator-(const Jet& a, const Jet& b) {
  require_same_order(a, b, "-");
  Jet out = a;
  out -= b;
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  require_same_order(a, b, "*");
  const int n = a.order();
  Jet out(n);
  for (int d1 = 0; d1 <= n; ++d1) {
    for (int b1 = 0; b1 <= d1; ++b1) {
      const int a1 = d1 - b1;
      const double v1 = a.c_[static_cast<std::size_t>(Jet::slot(a1, b1))];
      if (v1 == 0.0) continue;
      for (int d2 = 0; d2 + d1 <= n; ++d2) {
        for (int b2 = 0; b2 <= d2; ++b2) {
          const int a2 = d2 - b2;
          const double v2 = b.c_[static_cast<std::size_t>(Jet::slot(a2, b2))];
          if (v2 == 0.0) continue;
          out.c_[static_cast<std::size_t>(Jet::slot(a1 + a2, b1 + b2))] += v1 * v2;
        }
      }
    }
  }
  return out;
}

Jet operator+(const Jet& a, double x) {
  Jet out = a;
  out.c_[0] += x;
  return out;
}
Jet operator+(double x, const Jet& a) { return a + x; }
Jet operator-(const Jet& a, double x) { return a + (-x); }
Jet operator-(double x, const Jet& a) { return (-a) + x; }

Jet operator*(const Jet& a, double x) {
  Jet out = a;
  for (double& v : out.c_) v *= x;
  return out;
}
Jet operator*(double x, const Jet& a) { return a * x; }
Jet operator/(const Jet& a, double x) { return a * (1.0 / x); }
Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

double max_abs(const Jet& a) {
  double m = 0.0;
  for (double v : a.c_) m = std::max(m, std::fabs(v));
  return m;
}

Jet partial(const Jet& a, Var v) {
  if (a.order() < 1) {
    throw InsufficientOrderError("cannot differentiate a jet of order 0");
  }
  const int n = a.order() - 1;
  Jet out(n);
  for (int d = 0; d <= n; ++d) {
    for (int bb = 0; bb <= d; ++bb) {
      const int aa = d - bb;
      const double c = (v == Var::s) ? (aa + 1) * a.coeff(aa + 1, bb)
                                     : (bb + 1) * a.coeff(aa, bb + 1);
      out.set_coeff(aa, bb, c);
    }
  }
  return out;
}

Jet ipow(const Jet& a, int k) {
  if (k < 0) throw ContractError("ipow exponent must be nonnegative");
  Jet out = Jet::constant(a.order(), 1.0);
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

Jet sqrt(const Jet& g) {
  const double g0 = g.value();
  const double tol = singularity_tolerance(g);
  if (g0 < tol) {
    throw DegenerateJetError("sqrt of a jet with base value " + std::to_string(g0) +
                             " (must be positive and away from zero)");
  }
  const int n = g.order();
  std::vector<double> outer(static_cast<std::size_t>(n) + 1);
  outer[0] = std::sqrt(g0);
  for (int k = 1; k <= n; ++k) {
    outer[static_cast<std::size_t>(k)] =
        outer[static_cast<std::size_t>(k - 1)] * (0.5 - (k - 1)) / (k * g0);
  }
  return compose_series(g, outer);
}

Jet reciprocal(const Jet& g) {
  const double g0 = g.value();
  const double tol = singularity_tolerance(g);
  if (std::fabs(g0) <= tol) {
    throw DegenerateJetError("reciprocal of a jet with base value " + std::to_string(g0) +
                             " too close to zero");
  }
  const int n = g.order();
  std::vector<double> outer(static_cast<std::size_t>(n) + 1);
  outer[0] = 1.0 / g0;
  for (int k = 1; k <= n; ++k) {
    outer[static_cast<std::size_t>(k)] = -outer[static_cast<std::size_t>(k - 1)] / g0;
  }
  return compose_series(g, outer);
}

Jet sin(const Jet& g) {
  const double g0 = g.value();
  const int n = g.order();
  const double cycle[4] = {std::sin(g0), std::cos(g0), -std::sin(g0), -std::cos(g0)};
  std::vector<double> outer(static_cast<std::size_t>(n) + 1);
  double factorial = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) factorial *= k;
    outer[static_cast<std::size_t>(k)] = cycle[k % 4] / factorial;
  }
  return compose_series(g, outer);
}

Jet cos(const Jet& g) {
  const double g0 = g.value();
  const int n = g.order();
  const double cycle[4] = {std::cos(g0), -std::sin(g0), -std::cos(g0), std::sin(g0)};
  std::vector<double> outer(static_cast<std::size_t>(n) + 1);
  double factorial = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) factorial *= k;
    outer[static_cast<std::size_t>(k)] = cycle[k % 4] / factorial;
  }
  return compose_series(g, outer);
}

Jet pow(const Jet& g, double p) {
  const double g0 = g.value();
  const double tol = singularity_tolerance(g);
  if (g0 < tol) {
    throw DegenerateJetError("pow of a jet with base value " + std::to_string(g0) +
                             " (must be positive and away from zero)");
  }
  const int n = g.order();
  std::vector<double> outer(static_cast<std::size_t>(n) + 1);
  outer[0] = std::pow(g0, p);
  for (int k = 1; k <= n; ++k) {
    outer[static_cast<std::size_t>(k)] =
        outer[static_cast<std::size_t>(k - 1)] * (p - (k - 1)) / (k * g0);
  }
  return compose_series(g, outer);
}

JetVec3::JetVec3(Jet x_, Jet y_, Jet z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {
  if (x.order() != y.order() || x.order() != z.order()) {
    throw InsufficientOrderError("JetVec3 components must share one order");
  }
}

const Jet& JetVec3::operator[](int i) const {
  switch (i) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    default: throw ContractError("JetVec3 index out of range");
  }
}

Jet& JetVec3::operator[](int i) {
  switch (i) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    default: throw ContractError("JetVec3 index out of range");
  }
}

JetVec3 JetVec3::truncated(int new_order) const {
  return JetVec3(x.truncated(new_order), y.truncated(new_order), z.truncated(new_order));
}

JetVec3 operator+(const JetVec3& a, const JetVec3& b) {
  return JetVec3(a.x + b.x, a.y + b.y, a.z + b.z);
}
JetVec3 operator-(const JetVec3& a, const JetVec3& b) {
  return JetVec3(a.x - b.x, a.y - b.y, a.z - b.z);
}
JetVec3 operator-(const JetVec3& a) { return JetVec3(-a.x, -a.y, -a.z); }
JetVec3 operator*(const JetVec3& a, const Jet& s) {
  return JetVec3(a.x * s, a.y * s, a.z * s);
}
JetVec3 operator*(const Jet& s, const JetVec3& a) { return a * s; }
JetVec3 operator*(const JetVec3& a, double x) { return JetVec3(a.x * x, a.y * x, a.z * x); }
JetVec3 operator*(double x, const JetVec3& a) { return a * x; }

Jet dot(const JetVec3& a, const JetVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

JetVec3 cross(const JetVec3& a, const JetVec3& b) {
  return JetVec3(a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x);
}

Jet triple(const JetVec3& a, const JetVec3& b, const JetVec3& c) { return dot(cross(a, b), c); }

Jet norm(const JetVec3& a) { return sqrt(dot(a, a)); }

JetVec3 normalized(const JetVec3& a) {
  try {
    return a * reciprocal(norm(a));
  } catch (const DegenerateJetError&) {
    throw RegularityError("cannot normalize a jet vector with near-zero length");
  }
}

JetVec3 partial(const JetVec3& a, Var v) {
  return JetVec3(partial(a.x, v), partial(a.y, v), partial(a.z, v));
}

double max_abs(const JetVec3& a) {
  return std::max(max_abs(a.x), std::max(max_abs(a.y), max_abs(a.z)));
}

} // namespace beltrami
