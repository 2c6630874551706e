#include "beltrami/unijet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace beltrami {

namespace {

void check_order_nonnegative(int order) {
  if (order < 0) {
    throw ContractError("jet order must be nonnegative, got " + std::to_string(order));
  }
}

void require_same_order(const UniJet& a, const UniJet& b, const char* op) {
  if (a.order() != b.order()) {
    throw InsufficientOrderError(std::string("jet order mismatch in ") + op + ": " +
                                 std::to_string(a.order()) + " vs " + std::to_string(b.order()));
  }
}

double singularity_tolerance(const UniJet& g) { return 1e-12 * (1.0 + max_abs(g)); }

UniJet compose_series(const UniJet& g, const std::vector<double>& outer) {
  const int n = g.order();
  UniJet u = g;
  u.set_coeff(0, 0.0);
  UniJet result = UniJet::constant(n, outer[static_cast<std::size_t>(n)]);
  for (int k = n - 1; k >= 0; --k) {
    result = result * u + outer[static_cast<std::size_t>(k)];
  }
  return result;
}

} // namespace

UniJet::UniJet(int order) : order_(order) {
  check_order_nonnegative(order);
  c_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

UniJet UniJet::constant(int order, double value) {
  UniJet j(order);
  j.c_[0] = value;
  return j;
}

UniJet UniJet::variable(int order, double base) {
  if (order < 1) {
    throw InsufficientOrderError("a coordinate seed jet needs order >= 1");
  }
  UniJet j(order);
  j.c_[0] = base;
  j.c_[1] = 1.0;
  return j;
}

double UniJet::coeff(int k) const {
  if (k < 0 || k > order_) {
    throw ContractError("jet coefficient index " + std::to_string(k) +
                        " out of range for order " + std::to_string(order_));
  }
  return c_[static_cast<std::size_t>(k)];
}

void UniJet::set_coeff(int k, double v) {
  if (k < 0 || k > order_) {
    throw ContractError("jet coefficient index " + std::to_string(k) +
                        " out of range for order " + std::to_string(order_));
  }
  c_[static_cast<std::size_t>(k)] = v;
}

UniJet UniJet::truncated(int new_order) const {
  if (new_order > order_) {
    throw InsufficientOrderError("cannot truncate a jet of order " + std::to_string(order_) +
                                 " up to order " + std::to_string(new_order));
  }
  check_order_nonnegative(new_order);
  UniJet out(new_order);
  std::copy(c_.begin(), c_.begin() + new_order + 1, out.c_.begin());
  return out;
}

UniJet UniJet::operator-() const {
  UniJet out = *this;
  for (double& v : out.c_) v = -v;
  return out;
}

UniJet& UniJet::operator+=(const UniJet& rhs) {
  require_same_order(*this, rhs, "+=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
  return *this;
}

UniJet& UniJet::operator-=(const UniJet& rhs) {
  require_same_order(*this, rhs, "-=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
  return *this;
}

UniJet operator+(const UniJet& a, const UniJet& b) {
  require_same_order(a, b, "+");
  UniJet out = a;
  out += b;
  return out;
}

UniJet operator-(const UniJet& a, const UniJet& b) {
  require_same_order(a, b, "-");
  UniJet out = a;
  out -= b;
  return out;
}

UniJet operator*(const UniJet& a, const UniJet& b) {
  require_same_order(a, b, "*");
  const int n = a.order();
  UniJet out(n);
  for (int i = 0; i <= n; ++i) {
    const double v1 = a.c_[static_cast<std::size_t>(i)];
    if (v1 == 0.0) continue;
    for (int j = 0; i + j <= n; ++j) {
      out.c_[static_cast<std::size_t>(i + j)] += v1 * b.c_[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

UniJet operator+(const UniJet& a, double x) {
  UniJet out = a;
  out.c_[0] += x;
  return out;
}
UniJet operator+(double x, const UniJet& a) { return a + x; }
UniJet operator-(const UniJet& a, double x) { return a + (-x); }
UniJet operator-(double x, const UniJet& a) { return (-a) + x; }
UniJet operator*(const UniJet& a, double x) {
  UniJet out = a;
  for (double& v : out.c_) v *= x;
  return out;
}
UniJet operator*(double x, const UniJet& a) { return a * x; }
UniJet operator/(const UniJet& a, double x) { return a * (1.0 / x); }
UniJet operator/(const UniJet& a, const UniJet& b) { return a * reciprocal(b); }

double max_abs(const UniJet& a) {
  double m = 0.0;
  for (double v : a.c_) m = std::max(m, std::fabs(v));
  return m;
}

bool is_exact_zero(const UniJet& a) {
  return std::all_of(a.c_.begin(), a.c_.end(), [](double v) { return v == 0.0; });
}

UniJet derivative(const UniJet& a) {
  if (a.order() < 1) {
    throw InsufficientOrderError("cannot differentiate a jet of order 0");
  }
  const int n = a.order() - 1;
  UniJet out(n);
  for (int k = 0; k <= n; ++k) out.set_coeff(k, (k + 1) * a.coeff(k + 1));
  return out;
}

UniJet ipow(const UniJet& a, int k) {
  if (k < 0) throw ContractError("ipow exponent must be nonnegative");
  UniJet out = UniJet::constant(a.order(), 1.0);
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

UniJet sqrt(const UniJet& g) {
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

UniJet reciprocal(const UniJet& g) {
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

UniJet sin(const UniJet& g) {
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

UniJet cos(const UniJet& g) {
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

UniJetVec3::UniJetVec3(UniJet x_, UniJet y_, UniJet z_)
    : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {
  if (x.order() != y.order() || x.order() != z.order()) {
    throw InsufficientOrderError("UniJetVec3 components must share one order");
  }
}

const UniJet& UniJetVec3::operator[](int i) const {
  switch (i) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    default: throw ContractError("UniJetVec3 index out of range");
  }
}

UniJet& UniJetVec3::operator[](int i) {
  switch (i) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    default: throw ContractError("UniJetVec3 index out of range");
  }
}

UniJetVec3 UniJetVec3::truncated(int new_order) const {
  return UniJetVec3(x.truncated(new_order), y.truncated(new_order), z.truncated(new_order));
}

UniJetVec3 operator+(const UniJetVec3& a, const UniJetVec3& b) {
  return UniJetVec3(a.x + b.x, a.y + b.y, a.z + b.z);
}
UniJetVec3 operator-(const UniJetVec3& a, const UniJetVec3& b) {
  return UniJetVec3(a.x - b.x, a.y - b.y, a.z - b.z);
}
UniJetVec3 operator*(const UniJetVec3& a, const UniJet& s) {
  return UniJetVec3(a.x * s, a.y * s, a.z * s);
}
UniJetVec3 operator*(const UniJet& s, const UniJetVec3& a) { return a * s; }
UniJetVec3 operator*(const UniJetVec3& a, double x) {
  return UniJetVec3(a.x * x, a.y * x, a.z * x);
}
UniJetVec3 operator*(double x, const UniJetVec3& a) { return a * x; }

UniJet dot(const UniJetVec3& a, const UniJetVec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

UniJetVec3 cross(const UniJetVec3& a, const UniJetVec3& b) {
  return UniJetVec3(a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x);
}

UniJet triple(const UniJetVec3& a, const UniJetVec3& b, const UniJetVec3& c) {
  return dot(cross(a, b), c);
}

UniJet norm(const UniJetVec3& a) { return sqrt(dot(a, a)); }

UniJetVec3 derivative(const UniJetVec3& a) {
  return UniJetVec3(derivative(a.x), derivative(a.y), derivative(a.z));
}

double max_abs(const UniJetVec3& a) {
  return std::max(max_abs(a.x), std::max(max_abs(a.y), max_abs(a.z)));
}

} // namespace beltrami
