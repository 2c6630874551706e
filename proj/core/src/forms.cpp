#include "beltrami/forms.hpp"

#include <cmath>
#include <sstream>

namespace beltrami {

std::string to_string(Form J) {
  switch (J) {
    case Form::I: return "I";
    case Form::II: return "II";
    case Form::III: return "III";
  }
  throw ContractError("unknown form selector");
}

Form form_from_string(const std::string& name) {
  if (name == "I") return Form::I;
  if (name == "II") return Form::II;
  if (name == "III") return Form::III;
  throw ConfigError("form must be I, II or III, got \"" + name + "\"");
}

Jet Mat2Jet::det() const { return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0); }

Mat2Jet Mat2Jet::truncated(int new_order) const {
  Mat2Jet out;
  for (std::size_t i = 0; i < 4; ++i) out.m[i] = m[i].truncated(new_order);
  return out;
}

double Mat2Jet::frobenius_value() const {
  double acc = 0.0;
  for (const Jet& entry : m) acc += entry.value() * entry.value();
  return std::sqrt(acc);
}

namespace {

Mat2Jet invert_symmetric(const Mat2Jet& a, const Jet& det) {
  const Jet rdet = reciprocal(det);
  Mat2Jet inv;
  inv(0, 0) = a(1, 1) * rdet;
  inv(1, 1) = a(0, 0) * rdet;
  inv(0, 1) = -(a(0, 1) * rdet);
  inv(1, 0) = inv(0, 1);
  return inv;
}

double parabolic_tolerance(const Mat2Jet& b) {
  const double f = b.frobenius_value();
  return 1e-10 * (1.0 + f * f);
}

} // namespace

const Mat2Jet& FormBundle::form(Form J) const {
  switch (J) {
    case Form::I: return g;
    case Form::II: return b;
    case Form::III: return e;
  }
  throw ContractError("unknown form selector");
}

bool FormBundle::parabolic() const { return std::fabs(det_b.value()) < parabolic_tolerance(b); }

Mat2Jet FormBundle::inverse_form(Form J) const {
  if (J == Form::I) return g_inv;
  if (parabolic()) {
    std::ostringstream msg;
    msg << "parabolic point: det(b) = " << det_b.value()
        << " at the base point, so form " << to_string(J) << " is not invertible there";
    throw ParabolicPointError(msg.str());
  }
  return (J == Form::II) ? invert_symmetric(b, det_b) : invert_symmetric(e, det_e);
}

FormBundle fundamental_forms(const JetVec3& x) {
  const int n = x.order();
  if (n < 2) {
    throw InsufficientOrderError("fundamental forms need a chart jet of order >= 2");
  }

  FormBundle fb;
  fb.position = x;
  fb.tangent[0] = partial(x, Var::s);
  fb.tangent[1] = partial(x, Var::t);

  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) fb.g(i, j) = dot(fb.tangent[i], fb.tangent[j]);
  }
  fb.det_g = fb.g.det();
  const double gf = fb.g.frobenius_value();
  if (fb.det_g.value() <= 1e-12 * (1.0 + gf * gf)) {
    std::ostringstream msg;
    msg << "chart is not a regular immersion at the base point (det(g) = " << fb.det_g.value()
        << ")";
    throw RegularityError(msg.str());
  }
  fb.g_inv = invert_symmetric(fb.g, fb.det_g);

  fb.normal = normalized(cross(fb.tangent[0], fb.tangent[1]));
  fb.normal_deriv[0] = partial(fb.normal, Var::s);
  fb.normal_deriv[1] = partial(fb.normal, Var::t);

  const int m = n - 2;
  const JetVec3 normal_m = fb.normal.truncated(m);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      fb.b(i, j) = dot(normal_m, partial(fb.tangent[i], j == 0 ? Var::s : Var::t));
      fb.e(i, j) = dot(fb.normal_deriv[i], fb.normal_deriv[j]);
    }
  }
  fb.det_b = fb.b.det();
  fb.det_e = fb.e.det();

  fb.gauss = fb.det_b * reciprocal(fb.det_g.truncated(m));
  Jet h(m);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) h += fb.g_inv(i, j).truncated(m) * fb.b(i, j);
  }
  fb.mean = h * 0.5;

  return fb;
}

ConnectionBundle connections(const FormBundle& fb, Form J) {
  const Mat2Jet& a = fb.form(J);
  const Mat2Jet a_inv = fb.inverse_form(J); // throws on parabolic points for II/III
  if (a.order() < 1) {
    throw InsufficientOrderError("connections need form jets of order >= 1; increase the chart order");
  }
  const int ord = a.order() - 1;

  // da[r](i, j) = d/du_r a_ij
  std::array<Mat2Jet, 2> da;
  for (int r = 0; r < 2; ++r) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) da[static_cast<std::size_t>(r)](i, j) = partial(a(i, j), r == 0 ? Var::s : Var::t);
    }
  }

  ConnectionBundle cb;
  cb.J = J;
  cb.order = ord;
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Jet acc(ord);
        for (int r = 0; r < 2; ++r) {
          const Jet bracket = da[static_cast<std::size_t>(i)](j, r) +
                              da[static_cast<std::size_t>(j)](i, r) -
                              da[static_cast<std::size_t>(r)](i, j);
          acc += a_inv(k, r).truncated(ord) * bracket;
        }
        cb(k, i, j) = acc * 0.5;
      }
    }
  }
  return cb;
}

std::array<double, 8> covariant_b(const FormBundle& fb, const ConnectionBundle& gamma) {
  if (gamma.J != Form::I) {
    throw ContractError("covariant_b expects the first-form connection");
  }
  if (fb.b.order() < 1) {
    throw InsufficientOrderError("covariant_b needs b-jets of order >= 1; increase the chart order");
  }
  std::array<double, 8> out{};
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double v = partial(fb.b(i, j), k == 0 ? Var::s : Var::t).value();
        for (int l = 0; l < 2; ++l) {
          v -= gamma(l, k, i).value() * fb.b(l, j).value();
          v -= gamma(l, k, j).value() * fb.b(i, l).value();
        }
        out[static_cast<std::size_t>(4 * k + 2 * i + j)] = v;
      }
    }
  }
  return out;
}

double codazzi_residual(const FormBundle& fb, const ConnectionBundle& gamma) {
  const std::array<double, 8> c = covariant_b(fb, gamma);
  double scale = 0.0;
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        scale = std::max(scale,
                         std::fabs(partial(fb.b(i, j), k == 0 ? Var::s : Var::t).value()));
      }
    }
  }
  double worst = 0.0;
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double swapped = c[static_cast<std::size_t>(4 * i + 2 * k + j)];
        worst = std::max(worst,
                         std::fabs(c[static_cast<std::size_t>(4 * k + 2 * i + j)] - swapped));
      }
    }
  }
  return worst / (1.0 + scale);
}

} // namespace beltrami
