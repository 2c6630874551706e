#ifndef BELTRAMI_FORMS_HPP
#define BELTRAMI_FORMS_HPP

#include <array>

#include "beltrami/jet.hpp"

namespace beltrami {

enum class Form { I = 0, II = 1, III = 2 };

std::string to_string(Form J);
Form form_from_string(const std::string& name);

// Symmetric 2x2 matrix with jet entries (a metric or shape tensor together
// with its parameter derivatives up to the entries' jet order).
struct Mat2Jet {
  std::array<Jet, 4> m;

  const Jet& operator()(int i, int j) const { return m[static_cast<std::size_t>(2 * i + j)]; }
  Jet& operator()(int i, int j) { return m[static_cast<std::size_t>(2 * i + j)]; }
  int order() const { return m[0].order(); }
  Jet det() const;
  Mat2Jet truncated(int new_order) const;
  double frobenius_value() const;
};

// The three fundamental forms and the frames they are built from, all as
// jets around one base point. For an input patch of order N the natural
// orders are: tangents and g at N-1, the unit normal at N-1, and b, e,
// curvatures and normal derivatives at N-2.
struct FormBundle {
  JetVec3 position;
  std::array<JetVec3, 2> tangent;
  JetVec3 normal;
  std::array<JetVec3, 2> normal_deriv;

  Mat2Jet g, b, e;
  Mat2Jet g_inv; // order N-1, precomputed (always valid for a regular patch)
  Jet det_g, det_b, det_e;
  Jet gauss, mean; // K and H

  const Mat2Jet& form(Form J) const;

  // Inverse of the selected form, computed on demand. For II and III this
  // throws ParabolicPointError when det(b) vanishes within tolerance
  // 1e-10 * (1 + |b|_F^2) at the base point.
  Mat2Jet inverse_form(Form J) const;

  // True when det(b) is below the parabolic tolerance at the base point.
  bool parabolic() const;
};

// Builds the full bundle from a chart jet of order >= 2. Throws
// RegularityError when the first form is singular at the base point.
FormBundle fundamental_forms(const JetVec3& x);

// Christoffel symbols of the chosen form: sym(k, i, j) is the upper-k,
// lower-(i, j) symbol, stored as jets of one common order (N-2 for I,
// N-3 for II and III).
struct ConnectionBundle {
  Form J = Form::I;
  int order = 0;
  std::array<Jet, 8> sym;

  const Jet& operator()(int k, int i, int j) const {
    return sym[static_cast<std::size_t>(4 * k + 2 * i + j)];
  }
  Jet& operator()(int k, int i, int j) {
    return sym[static_cast<std::size_t>(4 * k + 2 * i + j)];
  }
};

ConnectionBundle connections(const FormBundle& fb, Form J);

// Covariant derivative of b in the g-connection: nabla_k b_ij evaluated at
// the base point, for all eight index triples.
std::array<double, 8> covariant_b(const FormBundle& fb, const ConnectionBundle& gamma);

// Scaled violation of the symmetry of nabla^I b (zero for any honest patch;
// a strong cross-check of forms + connections together).
double codazzi_residual(const FormBundle& fb, const ConnectionBundle& gamma);

} // namespace beltrami

#endif // BELTRAMI_FORMS_HPP
