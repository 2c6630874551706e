#ifndef BELTRAMI_TESTS_FINITE_DIFFERENCE_HPP
#define BELTRAMI_TESTS_FINITE_DIFFERENCE_HPP

// Independent finite-difference oracle used only by the tests: fourth-order
// central stencils for derivatives up to order four, tensorised for mixed
// partials. Deliberately built on plain double evaluations so it shares no
// code with the jet implementation it checks.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace beltrami::testing {

struct Stencil {
  std::vector<int> offsets;
  std::vector<double> weights; // divided by h^order at use
};

inline const Stencil& stencil(int order) {
  static const std::array<Stencil, 5> table = {{
      {{0}, {1.0}},
      {{-2, -1, 1, 2}, {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12}},
      {{-2, -1, 0, 1, 2}, {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12}},
      {{-3, -2, -1, 1, 2, 3}, {1.0 / 8, -1.0, 13.0 / 8, -13.0 / 8, 1.0, -1.0 / 8}},
      {{-3, -2, -1, 0, 1, 2, 3},
       {-1.0 / 6, 2.0, -13.0 / 2, 28.0 / 3, -13.0 / 2, 2.0, -1.0 / 6}},
  }};
  return table[static_cast<std::size_t>(order)];
}

// d^{a+b} f / ds^a dt^b at (s, t), fourth-order accurate.
inline double central_partial(const std::function<double(double, double)>& f, double s, double t,
                              int a, int b, double h) {
  const Stencil& sa = stencil(a);
  const Stencil& sb = stencil(b);
  double acc = 0.0;
  for (std::size_t i = 0; i < sa.offsets.size(); ++i) {
    for (std::size_t j = 0; j < sb.offsets.size(); ++j) {
      acc += sa.weights[i] * sb.weights[j] * f(s + sa.offsets[i] * h, t + sb.offsets[j] * h);
    }
  }
  return acc / std::pow(h, a + b);
}

// Taylor coefficient c(a, b) = partial / (a! b!).
inline double taylor_coefficient(const std::function<double(double, double)>& f, double s,
                                 double t, int a, int b, double h) {
  double fact = 1.0;
  for (int i = 2; i <= a; ++i) fact *= i;
  for (int i = 2; i <= b; ++i) fact *= i;
  return central_partial(f, s, t, a, b, h) / fact;
}

} // namespace beltrami::testing

#endif // BELTRAMI_TESTS_FINITE_DIFFERENCE_HPP
