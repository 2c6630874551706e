#ifndef BELTRAMI_JET_HPP
#define BELTRAMI_JET_HPP

#include <vector>

#include "beltrami/errors.hpp"

namespace beltrami {

enum class Var { s = 0, t = 1 };

// Truncated bivariate Taylor expansion of a smooth function f(s, t) around a
// base point, up to total degree `order`. The stored coefficient c(a, b) is
// the Taylor coefficient d^{a+b} f / (ds^a dt^b) / (a! b!), so f's mixed
// partial of multi-order (a, b) at the base point is c(a, b) * a! * b!.
//
// Storage is dense in graded lexicographic order: degree blocks d = 0..order,
// within a block sorted by the t-exponent b. All operations are pure: they
// never mutate their operands and return freshly built jets.
class Jet {
public:
  // Zero jet of order 0.
  Jet() : order_(0), c_(1, 0.0) {}

  // Zero jet of the given order.
  explicit Jet(int order);

  static Jet constant(int order, double value);
  // First-order seed for the s coordinate: value `base`, ds-coefficient 1.
  static Jet variable_s(int order, double base);
  // First-order seed for the t coordinate: value `base`, dt-coefficient 1.
  static Jet variable_t(int order, double base);

  int order() const { return order_; }
  int size() const { return static_cast<int>(c_.size()); }

  // Value of the underlying function at the base point (the c(0,0) slot).
  double value() const { return c_[0]; }

  double coeff(int a, int b) const;
  void set_coeff(int a, int b, double v);

  // Copy truncated to a lower (or equal) order.
  Jet truncated(int new_order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);

private:
  int order_;
  std::vector<double> c_;

  static int slot(int a, int b) {
    const int d = a + b;
    return d * (d + 1) / 2 + b;
  }
  void check_index(int a, int b) const;
  friend Jet operator+(const Jet&, const Jet&);
  friend Jet operator-(const Jet&, const Jet&);
  friend Jet operator*(const Jet&, const Jet&);
  friend Jet operator*(const Jet&, double);
  friend Jet operator+(const Jet&, double);
  friend double max_abs(const Jet&);
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);

Jet operator+(const Jet& a, double x);
Jet operator+(double x, const Jet& a);
Jet operator-(const Jet& a, double x);
Jet operator-(double x, const Jet& a);
Jet operator*(const Jet& a, double x);
Jet operator*(double x, const Jet& a);
Jet operator/(const Jet& a, double x);
Jet operator/(const Jet& a, const Jet& b);

// Largest absolute stored coefficient; used for relative tolerances.
double max_abs(const Jet& a);

// Partial derivative; the result has order reduced by one. Coefficients are
// rescaled so the result is again a Taylor jet of the derivative function.
Jet partial(const Jet& a, Var v);

// Integer power by repeated multiplication (exact in the truncated algebra).
Jet ipow(const Jet& a, int k);

// Analytic compositions f(g) computed by Horner evaluation of the outer
// univariate Taylor series in the deviation g - g(base). They throw
// DegenerateJetError when the base value sits on a singularity of f within
// tolerance 1e-12 * (1 + max_abs(g)).
Jet sqrt(const Jet& g);
Jet reciprocal(const Jet& g);
Jet sin(const Jet& g);
Jet cos(const Jet& g);
Jet pow(const Jet& g, double p);

// A triple of jets sharing one base point: a surface patch or vector field.
struct JetVec3 {
  Jet x, y, z;

  JetVec3() = default;
  JetVec3(Jet x_, Jet y_, Jet z_);

  int order() const { return x.order(); }
  const Jet& operator[](int i) const;
  Jet& operator[](int i);

  JetVec3 truncated(int new_order) const;
};

JetVec3 operator+(const JetVec3& a, const JetVec3& b);
JetVec3 operator-(const JetVec3& a, const JetVec3& b);
JetVec3 operator-(const JetVec3& a);
JetVec3 operator*(const JetVec3& a, const Jet& s);
JetVec3 operator*(const Jet& s, const JetVec3& a);
JetVec3 operator*(const JetVec3& a, double x);
JetVec3 operator*(double x, const JetVec3& a);

Jet dot(const JetVec3& a, const JetVec3& b);
JetVec3 cross(const JetVec3& a, const JetVec3& b);
// Scalar triple product <a x b, c>.
Jet triple(const JetVec3& a, const JetVec3& b, const JetVec3& c);
Jet norm(const JetVec3& a);
JetVec3 normalized(const JetVec3& a);
JetVec3 partial(const JetVec3& a, Var v);
double max_abs(const JetVec3& a);

} // namespace beltrami

#endif // BELTRAMI_JET_HPP
