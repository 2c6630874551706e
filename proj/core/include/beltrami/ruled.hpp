#ifndef BELTRAMI_RULED_HPP
#define BELTRAMI_RULED_HPP

#include <memory>
#include <string>
#include <vector>

#include "beltrami/surface.hpp"
#include "beltrami/unijet.hpp"

namespace beltrami {

// Scalar invariants of a normalized skew ruled patch x(s, t) = gamma(s) +
// t * rho(s) with |rho| = 1, |rho'| = 1 and <gamma', rho> = 0, stored as
// exact s-jets at a base value s0. In these terms the metric determinant is
// the t-quadratic metric_quad(t) = t^2 + 2 eta t + zeta and the numerator of
// b_11 is shape_quad(t) = mu t^2 + nu t + xi; the skewness scalar `area`
// never vanishes on a non-cylindrical patch and controls det(b).
struct RuledInvariants {
  double s0 = 0.0;
  int order = 0;

  UniJetVec3 gamma, rho, rho_prime;
  UniJet zeta; // <gamma', gamma'>
  UniJet eta;  // <gamma', rho'>
  UniJet mu;   // triple(rho', rho, rho'')
  UniJet nu;   // triple(gamma', rho, rho'') + triple(rho', rho, gamma'')
  UniJet xi;   // triple(gamma', rho, gamma'')
  UniJet area; // triple(gamma', rho, rho')

  // Ascending t-coefficients [zeta, 2 eta, 1] of the metric quadratic.
  std::vector<UniJet> metric_quad() const;
  // Ascending t-coefficients [xi, nu, mu] of the shape quadratic.
  std::vector<UniJet> shape_quad() const;
};

// Builds the invariants at s0 with jets of the given order. Verifies the
// normalizations at s0 exactly on the jets (throws NormalizationError) and
// that the patch is skew there (throws ParabolicPointError when `area`
// vanishes, since then det(b) = 0 along the whole ruling).
RuledInvariants ruled_invariants(const CurveEvaluator& gamma, const CurveEvaluator& rho,
                                 double s0, int order, double normalization_tol = 1e-9);

// A field of the shape  numerator(t) / metric_quad(t)^(half_exponent / 2)
// with s-jet coefficients: the exact closed form reproduced by iterating
// the J=II second Beltrami operator on a skew ruled patch. The numerator is
// stored by ascending t-degree with trailing exactly-zero coefficients
// trimmed, so degree() reflects structural degree growth.
class HalfPowerField {
public:
  HalfPowerField() = default;
  HalfPowerField(std::shared_ptr<const RuledInvariants> inv, std::vector<UniJet> numerator,
                 int half_exponent);

  const std::shared_ptr<const RuledInvariants>& invariants() const { return inv_; }
  const std::vector<UniJet>& numerator() const { return num_; }
  int half_exponent() const { return half_exponent_; }

  bool is_zero() const { return num_.empty(); }
  int degree() const { return static_cast<int>(num_.size()) - 1; }
  // Common jet order of the numerator coefficients (-1 for the zero field).
  int coefficient_order() const;

  // Value at parameter (s0, t).
  double eval(double t) const;

private:
  std::shared_ptr<const RuledInvariants> inv_;
  std::vector<UniJet> num_;
  int half_exponent_ = 0;
};

struct HalfPowerVec3 {
  HalfPowerField x, y, z;

  const HalfPowerField& operator[](int i) const;
  int degree() const;
  int half_exponent() const;
  std::array<double, 3> eval(double t) const;
};

// The position field gamma + t rho as a half-power field (degree 1,
// exponent 0).
HalfPowerVec3 ruled_position_field(std::shared_ptr<const RuledInvariants> inv);

// One exact application of the J=II second Beltrami operator in closed
// form. Consumes one jet order of the coefficients; the half exponent grows
// by exactly 3 (in half units) per application on position iterates.
HalfPowerField delta2_ruled(const HalfPowerField& f);
HalfPowerVec3 delta2_ruled(const HalfPowerVec3& f);

// The first position iterate assembled directly from the bracket form
//   (1 / area^2) * (metric_quad * d/dt(shape_quad) * rho -
//    2 * area * metric_quad * rho'),
// i.e. without running the operator; numerator degree <= 3, exponent 1/2.
HalfPowerVec3 p1_closed_form(const std::shared_ptr<const RuledInvariants>& inv);

struct TraceStep {
  int step = 0;          // number of operator applications
  int degree = 0;        // structural numerator degree (max over components)
  int half_exponent = 0; // denominator exponent in half units
};

// Applies the operator `kmax` times to the position field and records the
// degree/exponent ladder. Enforces the structural bounds degree <= 4k - 1
// and half_exponent == 3k - 2 at every step (ContractError on violation).
std::vector<TraceStep> degree_trace(const std::shared_ptr<const RuledInvariants>& inv, int kmax);

struct VanishingReport {
  bool can_vanish = false;
  double witness_value = 0.0;
  std::string witness;
};

// Certifies that the first iterate cannot vanish anywhere on the patch: its
// rho'-component is -2 * metric_quad / area, and metric_quad(t) >= zeta -
// eta^2 > 0 for a normalized skew patch. witness_value is the resulting
// uniform lower bound 2 (zeta - eta^2) / |area| at s0.
VanishingReport vanishing_analysis(const RuledInvariants& inv);

} // namespace beltrami

#endif // BELTRAMI_RULED_HPP
