#include "beltrami/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace beltrami {

namespace {

Var var_of(int i) { return i == 0 ? Var::s : Var::t; }

double norm3(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

std::array<double, 3> values(const JetVec3& v) {
  return {v.x.value(), v.y.value(), v.z.value()};
}

} // namespace

Jet beltrami_first(Form J, const Jet& f, const Jet& h, const FormBundle& fb) {
  const Mat2Jet a_inv = fb.inverse_form(J);
  const int m = std::min({f.order() - 1, h.order() - 1, a_inv.order()});
  if (m < 0) {
    throw InsufficientOrderError("first Beltrami pairing needs operand jets of order >= 1");
  }
  const std::array<Jet, 2> fi = {partial(f, Var::s).truncated(m), partial(f, Var::t).truncated(m)};
  const std::array<Jet, 2> hj = {partial(h, Var::s).truncated(m), partial(h, Var::t).truncated(m)};
  Jet acc(m);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      acc += a_inv(i, j).truncated(m) * fi[static_cast<std::size_t>(i)] *
             hj[static_cast<std::size_t>(j)];
    }
  }
  return acc;
}

JetVec3 beltrami_grad(Form J, const Jet& f, const FormBundle& fb) {
  const Mat2Jet a_inv = fb.inverse_form(J);
  const std::array<JetVec3, 2>& frame = (J == Form::III) ? fb.normal_deriv : fb.tangent;
  const int m = std::min({f.order() - 1, a_inv.order(), frame[0].order()});
  if (m < 0) {
    throw InsufficientOrderError("gradient needs operand jets of order >= 1");
  }
  const std::array<Jet, 2> fi = {partial(f, Var::s).truncated(m), partial(f, Var::t).truncated(m)};
  JetVec3 acc{Jet(m), Jet(m), Jet(m)};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      acc = acc + (a_inv(i, j).truncated(m) * fi[static_cast<std::size_t>(i)]) *
                      frame[static_cast<std::size_t>(j)].truncated(m);
    }
  }
  return acc;
}

Jet beltrami_second(Form J, const Jet& f, const FormBundle& fb, const ConnectionBundle& cb) {
  if (cb.J != J) {
    throw ContractError("connection bundle was built for form " + to_string(cb.J) +
                        " but the operator uses form " + to_string(J));
  }
  const Mat2Jet a_inv = fb.inverse_form(J);
  const int m = std::min({f.order() - 2, a_inv.order(), cb.order});
  if (m < 0) {
    throw InsufficientOrderError("second Beltrami operator needs operand jets of order >= 2");
  }
  const std::array<Jet, 2> fi = {partial(f, Var::s), partial(f, Var::t)};
  Jet acc(m);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Jet bracket = partial(fi[static_cast<std::size_t>(i)], var_of(j)).truncated(m);
      for (int k = 0; k < 2; ++k) {
        bracket -= cb(k, i, j).truncated(m) * fi[static_cast<std::size_t>(k)].truncated(m);
      }
      acc += a_inv(i, j).truncated(m) * bracket;
    }
  }
  return -acc;
}

JetVec3 beltrami_second(Form J, const JetVec3& f, const FormBundle& fb,
                        const ConnectionBundle& cb) {
  return JetVec3(beltrami_second(J, f.x, fb, cb), beltrami_second(J, f.y, fb, cb),
                 beltrami_second(J, f.z, fb, cb));
}

double IdentityReport::max_residual() const {
  double worst = 0.0;
  for (const IdentityResidual& item : items) worst = std::max(worst, item.residual);
  return worst;
}

IdentityReport identity_suite(const FormBundle& fb) {
  IdentityReport report;

  const ConnectionBundle gamma = connections(fb, Form::I);
  const ConnectionBundle pi = connections(fb, Form::II);
  const ConnectionBundle lambda = connections(fb, Form::III);

  const std::array<double, 3> n0 = values(fb.normal);
  const double k0 = fb.gauss.value();
  const double h0 = fb.mean.value();

  // Pairing dualities: for every coordinate scalar h of the patch,
  // II-pairing against the Gauss map components plus the I-gradient of h
  // vanishes, and II-pairing against the position components plus the
  // III-gradient of h vanishes.
  {
    double worst_gauss = 0.0;
    double worst_position = 0.0;
    for (int c = 0; c < 3; ++c) {
      const Jet& h = fb.position[c];

      std::array<double, 3> pair_gauss{};
      std::array<double, 3> pair_position{};
      for (int d = 0; d < 3; ++d) {
        pair_gauss[static_cast<std::size_t>(d)] =
            beltrami_first(Form::II, h, fb.normal[d], fb).value();
        pair_position[static_cast<std::size_t>(d)] =
            beltrami_first(Form::II, h, fb.position[d], fb).value();
      }
      const std::array<double, 3> grad1 = values(beltrami_grad(Form::I, h, fb));
      const std::array<double, 3> grad3 = values(beltrami_grad(Form::III, h, fb));

      std::array<double, 3> rg{}, rp{};
      for (int d = 0; d < 3; ++d) {
        rg[static_cast<std::size_t>(d)] =
            pair_gauss[static_cast<std::size_t>(d)] + grad1[static_cast<std::size_t>(d)];
        rp[static_cast<std::size_t>(d)] =
            pair_position[static_cast<std::size_t>(d)] + grad3[static_cast<std::size_t>(d)];
      }
      worst_gauss = std::max(worst_gauss, norm3(rg) / (1.0 + norm3(grad1)));
      worst_position = std::max(worst_position, norm3(rp) / (1.0 + norm3(grad3)));
    }
    report.items.push_back({"pairing_gauss_map", worst_gauss});
    report.items.push_back({"pairing_position", worst_position});
  }

  // Second operator of II on the position: equals the III-gradient of
  // -log sqrt|K| minus twice the normal.
  {
    const std::array<double, 3> lap = values(beltrami_second(Form::II, fb.position, fb, pi));
    const std::array<double, 3> gk = values(beltrami_grad(Form::III, fb.gauss, fb));
    std::array<double, 3> rhs{}, resid{};
    for (int d = 0; d < 3; ++d) {
      rhs[static_cast<std::size_t>(d)] = -gk[static_cast<std::size_t>(d)] / (2.0 * k0) -
                                         2.0 * n0[static_cast<std::size_t>(d)];
      resid[static_cast<std::size_t>(d)] =
          lap[static_cast<std::size_t>(d)] - rhs[static_cast<std::size_t>(d)];
    }
    report.items.push_back({"laplacian_position", norm3(resid) / (1.0 + norm3(rhs))});
  }

  // Second operator of II on the Gauss map: equals the I-gradient of
  // log sqrt|K| plus 2 H n.
  {
    const std::array<double, 3> lap = values(beltrami_second(Form::II, fb.normal, fb, pi));
    const std::array<double, 3> gk = values(beltrami_grad(Form::I, fb.gauss, fb));
    std::array<double, 3> rhs{}, resid{};
    for (int d = 0; d < 3; ++d) {
      rhs[static_cast<std::size_t>(d)] = gk[static_cast<std::size_t>(d)] / (2.0 * k0) +
                                         2.0 * h0 * n0[static_cast<std::size_t>(d)];
      resid[static_cast<std::size_t>(d)] =
          lap[static_cast<std::size_t>(d)] - rhs[static_cast<std::size_t>(d)];
    }
    report.items.push_back({"laplacian_gauss_map", norm3(resid) / (1.0 + norm3(rhs))});
  }

  report.items.push_back({"codazzi", codazzi_residual(fb, gamma)});

  // The II-connection is the average of the I- and III-connections.
  {
    double worst = 0.0;
    double scale = 0.0;
    for (int k = 0; k < 2; ++k) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          const double t1 = gamma(k, i, j).value() - pi(k, i, j).value();
          const double t2 = lambda(k, i, j).value() - pi(k, i, j).value();
          worst = std::max(worst, std::fabs(t1 + t2));
          scale = std::max({scale, std::fabs(gamma(k, i, j).value()),
                            std::fabs(pi(k, i, j).value()),
                            std::fabs(lambda(k, i, j).value())});
        }
      }
    }
    report.items.push_back({"difference_tensor_sum", worst / (1.0 + scale)});
  }

  // Contracted symbols equal logarithmic derivatives of the form
  // determinants: sum_j X^j_{ij} = (d_i det a) / (2 det a).
  {
    double worst = 0.0;
    const std::array<const ConnectionBundle*, 3> conns = {&gamma, &pi, &lambda};
    const std::array<const Jet*, 3> dets = {&fb.det_g, &fb.det_b, &fb.det_e};
    for (std::size_t f = 0; f < 3; ++f) {
      for (int i = 0; i < 2; ++i) {
        double lhs = 0.0;
        for (int j = 0; j < 2; ++j) lhs += (*conns[f])(j, i, j).value();
        const double det = dets[f]->value();
        const double ddet = partial(*dets[f], var_of(i)).value();
        const double rhs = ddet / (2.0 * det);
        worst = std::max(worst, std::fabs(lhs - rhs) / (1.0 + std::fabs(rhs)));
      }
    }
    report.items.push_back({"curvature_log_derivative", worst});
  }

  return report;
}

} // namespace beltrami
