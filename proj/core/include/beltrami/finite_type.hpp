#ifndef BELTRAMI_FINITE_TYPE_HPP
#define BELTRAMI_FINITE_TYPE_HPP

#include <array>
#include <string>
#include <vector>

#include "beltrami/forms.hpp"
#include "beltrami/surface.hpp"

namespace beltrami {

using Vec3 = std::array<double, 3>;

enum class FieldKind { Position, Gauss };

std::string to_string(FieldKind field);
FieldKind field_from_string(const std::string& name);

struct GridSpec {
  int rows = 6;
  int cols = 6;
};

// Values of f, L f, L^2 f, ..., L^{kmax+1} f at an interior sample grid,
// where L is the second Beltrami operator of the chosen form and f is the
// position vector or the Gauss map. Iterates are computed from one exact
// high-order jet per sample (order 2 * (kmax + 1) + 2), so no numerical
// differentiation enters anywhere.
struct IterateTable {
  Form J = Form::II;
  FieldKind field = FieldKind::Position;
  int kmax = 0;
  std::vector<std::array<double, 2>> samples;
  std::vector<Vec3> base;                  // f at each sample
  std::vector<std::vector<Vec3>> iterates; // [sample][j] holds L^{j+1} f
  int dropped = 0;                         // parabolic samples skipped
  std::vector<std::string> warnings;
};

// Throws ParabolicPointError if more than 10% of the grid must be dropped;
// isolated parabolic samples are skipped with a warning.
IterateTable build_iterates(const SurfaceSpec& spec, Form J, FieldKind field, GridSpec grid,
                            int kmax);

struct FiniteTypeVerdict {
  Form J = Form::II;
  FieldKind field = FieldKind::Position;
  int kmax = 0;
  bool affine = false;
  double tol = 0.0;

  std::vector<double> residuals; // residuals[k-1] for k = 1..kmax
  bool finite = false;
  int type_order = 0;     // smallest k below tolerance, 0 when none
  bool null_type = false; // an eigenvalue vanishes (or the field annihilates)
  std::vector<double> coefficients;            // monic polynomial c_1..c_k
  std::vector<std::array<double, 2>> eigenvalues; // roots as (re, im) pairs
  std::vector<std::string> warnings;
  std::string message;
};

// Least-squares recurrence scan: for each k, fits
//   L^{k+1} f + c_1 L^k f + ... + c_k L f = 0        (homogeneous)
// or, with affine = true,
//   L^k f + c_1 L^{k-1} f + ... + c_{k-1} L f + c_k f + d = 0
// over all samples, with unit-normalized columns. A fit certifies finite
// type only if the roots of z^k + c_1 z^{k-1} + ... + c_k -- the would-be
// eigenvalues of the decomposition -- are all real, so the fit is taken over
// coefficient vectors with an all-real root set; a recurrence with nonreal
// companion spectrum (it exists, e.g., for the helicoid under the second
// form, where L^3 x + (4/A^2) L x = 0 exactly) is reported in the warnings
// but does not produce a finite verdict. Reports the relative residual per k
// and the first k below tolerance.
FiniteTypeVerdict dependence_test(const IterateTable& table, double tol, bool affine);

// Roots of z^k + c_1 z^{k-1} + ... + c_k via the companion matrix, sorted by
// real then imaginary part.
std::vector<std::array<double, 2>> eigenvalue_extract(const std::vector<double>& coefficients);

} // namespace beltrami

#endif // BELTRAMI_FINITE_TYPE_HPP
