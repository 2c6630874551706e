#ifndef BELTRAMI_UNIJET_HPP
#define BELTRAMI_UNIJET_HPP

#include <vector>

#include "beltrami/errors.hpp"

namespace beltrami {

// Truncated univariate Taylor expansion around a base point: the stored
// coefficient c(k) is f^(k)(s0) / k!. Used for curves s -> R^3 and for the
// s-dependent coefficients of the symbolic ruled-surface fields. Operations
// are pure, exactly like the bivariate Jet.
class UniJet {
public:
  UniJet() : order_(0), c_(1, 0.0) {}
  explicit UniJet(int order);

  static UniJet constant(int order, double value);
  static UniJet variable(int order, double base);

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int k) const;
  void set_coeff(int k, double v);

  UniJet truncated(int new_order) const;

  UniJet operator-() const;
  UniJet& operator+=(const UniJet& rhs);
  UniJet& operator-=(const UniJet& rhs);

private:
  int order_;
  std::vector<double> c_;

  friend UniJet operator+(const UniJet&, const UniJet&);
  friend UniJet operator-(const UniJet&, const UniJet&);
  friend UniJet operator*(const UniJet&, const UniJet&);
  friend UniJet operator*(const UniJet&, double);
  friend UniJet operator+(const UniJet&, double);
  friend double max_abs(const UniJet&);
  friend bool is_exact_zero(const UniJet&);
};

UniJet operator+(const UniJet& a, const UniJet& b);
UniJet operator-(const UniJet& a, const UniJet& b);
UniJet operator*(const UniJet& a, const UniJet& b);
UniJet operator+(const UniJet& a, double x);
UniJet operator+(double x, const UniJet& a);
UniJet operator-(const UniJet& a, double x);
UniJet operator-(double x, const UniJet& a);
UniJet operator*(const UniJet& a, double x);
UniJet operator*(double x, const UniJet& a);
UniJet operator/(const UniJet& a, double x);
UniJet operator/(const UniJet& a, const UniJet& b);

double max_abs(const UniJet& a);
// True iff every stored coefficient is exactly 0.0 (used for structural
// degree bookkeeping, never for numeric comparisons).
bool is_exact_zero(const UniJet& a);

// d/ds; order drops by one.
UniJet derivative(const UniJet& a);
UniJet ipow(const UniJet& a, int k);
UniJet sqrt(const UniJet& g);
UniJet reciprocal(const UniJet& g);
UniJet sin(const UniJet& g);
UniJet cos(const UniJet& g);

struct UniJetVec3 {
  UniJet x, y, z;

  UniJetVec3() = default;
  UniJetVec3(UniJet x_, UniJet y_, UniJet z_);

  int order() const { return x.order(); }
  const UniJet& operator[](int i) const;
  UniJet& operator[](int i);

  UniJetVec3 truncated(int new_order) const;
};

UniJetVec3 operator+(const UniJetVec3& a, const UniJetVec3& b);
UniJetVec3 operator-(const UniJetVec3& a, const UniJetVec3& b);
UniJetVec3 operator*(const UniJetVec3& a, const UniJet& s);
UniJetVec3 operator*(const UniJet& s, const UniJetVec3& a);
UniJetVec3 operator*(const UniJetVec3& a, double x);
UniJetVec3 operator*(double x, const UniJetVec3& a);

UniJet dot(const UniJetVec3& a, const UniJetVec3& b);
UniJetVec3 cross(const UniJetVec3& a, const UniJetVec3& b);
UniJet triple(const UniJetVec3& a, const UniJetVec3& b, const UniJetVec3& c);
UniJet norm(const UniJetVec3& a);
UniJetVec3 derivative(const UniJetVec3& a);
double max_abs(const UniJetVec3& a);

} // namespace beltrami

#endif // BELTRAMI_UNIJET_HPP
