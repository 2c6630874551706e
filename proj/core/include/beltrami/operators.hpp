#ifndef BELTRAMI_OPERATORS_HPP
#define BELTRAMI_OPERATORS_HPP

#include <string>
#include <vector>

#include "beltrami/forms.hpp"

namespace beltrami {

// First Beltrami pairing of two scalar fields with respect to the selected
// form: a^{ij} f_{,i} h_{,j} with (a^{ij}) the inverse of I, II or III.
Jet beltrami_first(Form J, const Jet& f, const Jet& h, const FormBundle& fb);

// Gradient field of a scalar: a^{ij} f_{,i} F_j, where the frame (F_j) is
// the tangent frame x_{,j} for J = I, II and the Gauss-map frame n_{,j} for
// J = III (the frame that makes the pairing dualities close).
JetVec3 beltrami_grad(Form J, const Jet& f, const FormBundle& fb);

// Second Beltrami operator with the sign convention
//   L f = -a^{ij} (f_{,ij} - X^k_{ij} f_{,k}),
// X the Christoffel symbols of the same form (cb.J must equal J). On the
// round sphere with outward normal this gives L x = -2 n for J = II.
Jet beltrami_second(Form J, const Jet& f, const FormBundle& fb, const ConnectionBundle& cb);
JetVec3 beltrami_second(Form J, const JetVec3& f, const FormBundle& fb,
                        const ConnectionBundle& cb);

struct IdentityResidual {
  std::string name;
  double residual = 0.0;
};

struct IdentityReport {
  std::vector<IdentityResidual> items;
  double max_residual() const;
};

// Evaluates the scaled residuals of the structural identities tying the
// three forms, their connections and the operators together at the base
// point of the bundle:
//   pairing_gauss_map          first pairing of II against the Gauss map
//                              components vs. the J=I gradient
//   pairing_position           first pairing of II against the position
//                              components vs. the J=III gradient
//   laplacian_position         second operator of II on position vs. the
//                              curvature gradient term minus twice the normal
//   laplacian_gauss_map        second operator of II on the Gauss map vs.
//                              the curvature gradient term plus 2 H n
//   codazzi                    symmetry of the covariant derivative of b
//   difference_tensor_sum      (Gamma - Pi) + (Lambda - Pi) = 0
//   curvature_log_derivative   contracted symbols vs. logarithmic
//                              determinant derivatives, for all three forms
// All residuals are relative to the magnitude of the terms involved.
IdentityReport identity_suite(const FormBundle& fb);

} // namespace beltrami

#endif // BELTRAMI_OPERATORS_HPP
