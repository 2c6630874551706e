#include "beltrami/ruled.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace beltrami {

namespace {

// Numerator polynomials in t with s-jet coefficients, ascending degree.
// Invariant: all coefficients share one jet order; trailing exactly-zero
// coefficients are trimmed; the empty vector is the zero polynomial.
using Poly = std::vector<UniJet>;

int poly_order(const Poly& p) { return p.empty() ? -1 : p[0].order(); }

Poly trim(Poly p) {
  while (!p.empty() && is_exact_zero(p.back())) p.pop_back();
  return p;
}

Poly truncate_poly(const Poly& p, int w) {
  Poly out;
  out.reserve(p.size());
  for (const UniJet& c : p) out.push_back(c.truncated(w));
  return out;
}

Poly add(const Poly& a, const Poly& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (poly_order(a) != poly_order(b)) {
    throw ContractError("polynomial coefficient orders disagree in add");
  }
  const int w = poly_order(a);
  Poly out(std::max(a.size(), b.size()), UniJet(w));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return trim(std::move(out));
}

Poly scale(const Poly& p, const UniJet& c) {
  if (p.empty()) return p;
  const int w = std::min(poly_order(p), c.order());
  const UniJet cw = c.truncated(w);
  Poly out;
  out.reserve(p.size());
  for (const UniJet& pc : p) out.push_back(pc.truncated(w) * cw);
  return trim(std::move(out));
}

Poly scale(const Poly& p, double c) {
  Poly out;
  out.reserve(p.size());
  for (const UniJet& pc : p) out.push_back(pc * c);
  return trim(std::move(out));
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  const int w = std::min(poly_order(a), poly_order(b));
  Poly out(a.size() + b.size() - 1, UniJet(w));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const UniJet ai = a[i].truncated(w);
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += ai * b[j].truncated(w);
    }
  }
  return trim(std::move(out));
}

// d/dt of the numerator polynomial.
Poly poly_dt(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly out;
  out.reserve(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) out.push_back(p[k] * static_cast<double>(k));
  return trim(std::move(out));
}

// d/ds of the numerator polynomial (jet derivative of every coefficient).
Poly poly_ds(const Poly& p) {
  if (p.empty()) return {};
  if (poly_order(p) < 1) {
    throw InsufficientOrderError(
        "symbolic field coefficients exhausted; build the invariants with a higher order");
  }
  Poly out;
  out.reserve(p.size());
  for (const UniJet& c : p) out.push_back(derivative(c));
  return trim(std::move(out));
}

Poly metric_quad_at(const RuledInvariants& inv, int w) {
  return {inv.zeta.truncated(w), inv.eta.truncated(w) * 2.0, UniJet::constant(w, 1.0)};
}

Poly metric_quad_dt_at(const RuledInvariants& inv, int w) {
  return {inv.eta.truncated(w) * 2.0, UniJet::constant(w, 2.0)};
}

Poly metric_quad_ds_at(const RuledInvariants& inv, int w) {
  Poly out = {derivative(inv.zeta).truncated(w), derivative(inv.eta).truncated(w) * 2.0};
  return trim(std::move(out));
}

Poly shape_quad_at(const RuledInvariants& inv, int w) {
  Poly out = {inv.xi.truncated(w), inv.nu.truncated(w), inv.mu.truncated(w)};
  return trim(std::move(out));
}

Poly shape_quad_dt_at(const RuledInvariants& inv, int w) {
  Poly out = {inv.nu.truncated(w), inv.mu.truncated(w) * 2.0};
  return trim(std::move(out));
}

struct RawField {
  Poly num;
  int half_exponent = 0;
};

// d/dt of num / metric_quad^(r/2):
//   r = 0:  num_t
//   r > 0:  (num_t * metric_quad - (r/2) num * d_t metric_quad) over r + 2.
RawField field_dt(const RawField& f, const RuledInvariants& inv) {
  if (f.num.empty()) return {{}, f.half_exponent == 0 ? 0 : f.half_exponent + 2};
  if (f.half_exponent == 0) return {poly_dt(f.num), 0};
  const int w = poly_order(f.num);
  const Poly nq = metric_quad_at(inv, w);
  const Poly nqt = metric_quad_dt_at(inv, w);
  Poly out = add(mul(poly_dt(f.num), nq),
                 scale(mul(f.num, nqt), -0.5 * f.half_exponent));
  return {std::move(out), f.half_exponent + 2};
}

// Same for d/ds; coefficient jets lose one order.
RawField field_ds(const RawField& f, const RuledInvariants& inv) {
  if (f.num.empty()) return {{}, f.half_exponent == 0 ? 0 : f.half_exponent + 2};
  const Poly ps = poly_ds(f.num);
  if (f.half_exponent == 0) return {ps, 0};
  const int w = poly_order(f.num) - 1;
  const Poly nq = metric_quad_at(inv, w);
  const Poly nqs = metric_quad_ds_at(inv, w);
  Poly out = add(mul(ps, nq),
                 scale(mul(truncate_poly(f.num, w), nqs), -0.5 * f.half_exponent));
  return {std::move(out), f.half_exponent + 2};
}

// Multiplies by metric_quad^steps to lift a term to a common denominator.
Poly lift(const Poly& p, int from_exponent, int to_exponent, const RuledInvariants& inv) {
  if (p.empty()) return p;
  const int diff = to_exponent - from_exponent;
  if (diff < 0 || diff % 2 != 0) {
    throw ContractError("half exponents out of step while combining terms");
  }
  Poly out = p;
  const Poly nq = metric_quad_at(inv, poly_order(p));
  for (int i = 0; i < diff / 2; ++i) out = mul(out, nq);
  return out;
}

} // namespace

std::vector<UniJet> RuledInvariants::metric_quad() const {
  return {zeta, eta * 2.0, UniJet::constant(order, 1.0)};
}

std::vector<UniJet> RuledInvariants::shape_quad() const { return {xi, nu, mu}; }

RuledInvariants ruled_invariants(const CurveEvaluator& gamma, const CurveEvaluator& rho,
                                 double s0, int order, double normalization_tol) {
  if (order < 0) throw ContractError("invariant jet order must be nonnegative");

  // Evaluate with two spare orders so all second-derivative invariants come
  // out at the requested uniform order.
  const int raw = order + 2;
  const UniJetVec3 g = gamma.eval(s0, raw);
  const UniJetVec3 r = rho.eval(s0, raw);
  const UniJetVec3 gp = derivative(g);
  const UniJetVec3 gpp = derivative(gp);
  const UniJetVec3 rp = derivative(r);
  const UniJetVec3 rpp = derivative(rp);

  {
    const double rho_len2 = dot(r, r).value();
    if (std::fabs(rho_len2 - 1.0) > 2.0 * normalization_tol) {
      std::ostringstream msg;
      msg << "ruling direction is not unit length at s0=" << s0 << " (|rho|^2 = " << rho_len2
          << ")";
      throw NormalizationError(msg.str());
    }
    const double rp_len2 = dot(rp, rp).value();
    if (std::fabs(rp_len2 - 1.0) > 2.0 * normalization_tol) {
      std::ostringstream msg;
      msg << "ruling spherical image is not unit speed at s0=" << s0
          << " (|rho'|^2 = " << rp_len2 << ")";
      throw NormalizationError(msg.str());
    }
    const double pairing = dot(gp, r.truncated(gp.order())).value();
    const double gp_len = std::sqrt(std::max(dot(gp, gp).value(), 0.0));
    if (std::fabs(pairing) > normalization_tol * (1.0 + gp_len)) {
      std::ostringstream msg;
      msg << "directrix derivative is not orthogonal to the ruling at s0=" << s0
          << " (<gamma', rho> = " << pairing << ")";
      throw NormalizationError(msg.str());
    }
  }

  RuledInvariants inv;
  inv.s0 = s0;
  inv.order = order;
  inv.gamma = g.truncated(order);
  inv.rho = r.truncated(order);
  inv.rho_prime = rp.truncated(order);
  inv.zeta = dot(gp, gp).truncated(order);
  inv.eta = dot(gp.truncated(raw - 1), rp).truncated(order);
  inv.mu = triple(rp.truncated(raw - 2), r.truncated(raw - 2), rpp).truncated(order);
  inv.nu = (triple(gp.truncated(raw - 2), r.truncated(raw - 2), rpp) +
            triple(rp.truncated(raw - 2), r.truncated(raw - 2), gpp))
               .truncated(order);
  inv.xi = triple(gp.truncated(raw - 2), r.truncated(raw - 2), gpp).truncated(order);
  inv.area = triple(gp.truncated(raw - 1), r.truncated(raw - 1), rp).truncated(order);

  const double zeta0 = std::max(inv.zeta.value(), 0.0);
  if (std::fabs(inv.area.value()) <= 1e-10 * (1.0 + std::sqrt(zeta0))) {
    std::ostringstream msg;
    msg << "ruled patch is cylindrical at s0=" << s0 << " (skewness scalar "
        << inv.area.value() << "), so det(b) vanishes along the ruling";
    throw ParabolicPointError(msg.str());
  }
  return inv;
}

HalfPowerField::HalfPowerField(std::shared_ptr<const RuledInvariants> inv,
                               std::vector<UniJet> numerator, int half_exponent)
    : inv_(std::move(inv)), num_(trim(std::move(numerator))), half_exponent_(half_exponent) {
  if (!inv_) throw ContractError("half-power field needs invariants");
  if (half_exponent_ < 0) throw ContractError("half exponent must be nonnegative");
  for (const UniJet& c : num_) {
    if (c.order() != num_[0].order()) {
      throw ContractError("half-power field coefficients must share one jet order");
    }
  }
}

int HalfPowerField::coefficient_order() const { return poly_order(num_); }

double HalfPowerField::eval(double t) const {
  if (!inv_) throw ContractError("half-power field has no invariants");
  double num_val = 0.0;
  for (std::size_t i = num_.size(); i-- > 0;) num_val = num_val * t + num_[i].value();
  const double n_val =
      t * t + 2.0 * inv_->eta.value() * t + inv_->zeta.value();
  if (n_val <= 0.0) {
    throw ContractError("metric quadratic is not positive; the patch is not regular");
  }
  return num_val / std::pow(n_val, 0.5 * half_exponent_);
}

const HalfPowerField& HalfPowerVec3::operator[](int i) const {
  switch (i) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    default: throw ContractError("HalfPowerVec3 index out of range");
  }
}

int HalfPowerVec3::degree() const {
  return std::max({x.degree(), y.degree(), z.degree()});
}

int HalfPowerVec3::half_exponent() const {
  int he = 0;
  for (int c = 0; c < 3; ++c) {
    if (!(*this)[c].is_zero()) he = std::max(he, (*this)[c].half_exponent());
  }
  return he;
}

std::array<double, 3> HalfPowerVec3::eval(double t) const {
  return {x.eval(t), y.eval(t), z.eval(t)};
}

HalfPowerVec3 ruled_position_field(std::shared_ptr<const RuledInvariants> inv) {
  if (!inv) throw ContractError("position field needs invariants");
  HalfPowerVec3 out;
  out.x = HalfPowerField(inv, {inv->gamma.x, inv->rho.x}, 0);
  out.y = HalfPowerField(inv, {inv->gamma.y, inv->rho.y}, 0);
  out.z = HalfPowerField(inv, {inv->gamma.z, inv->rho.z}, 0);
  return out;
}

HalfPowerField delta2_ruled(const HalfPowerField& f) {
  const std::shared_ptr<const RuledInvariants>& inv = f.invariants();
  if (!inv) throw ContractError("delta2_ruled needs a field with invariants");
  if (f.is_zero()) return HalfPowerField(inv, {}, 0);
  if (f.coefficient_order() < 1) {
    throw InsufficientOrderError(
        "symbolic field coefficients exhausted; build the invariants with a higher order");
  }

  const RawField base{f.numerator(), f.half_exponent()};
  const RawField ft = field_dt(base, *inv);
  const RawField fts = field_ds(ft, *inv);
  const RawField ftt = field_dt(ft, *inv);

  const int w = f.coefficient_order() - 1;
  const UniJet ra = reciprocal(inv->area.truncated(w));

  // L f = (sqrt(metric_quad)/area) *
  //       (-2 f_st + (shape_quad/area) f_tt + (d_t shape_quad/area) f_t),
  // the second operator of II in the chart-normal orientation of
  // x = gamma + t rho (the same orientation the jet pipeline uses).
  struct Term {
    Poly num;
    int half_exponent;
  };
  std::vector<Term> terms;
  {
    Poly p = scale(truncate_poly(fts.num, w), -2.0);
    if (!p.empty()) terms.push_back({std::move(p), fts.half_exponent});
  }
  {
    Poly p = mul(scale(shape_quad_at(*inv, w), ra), truncate_poly(ftt.num, w));
    if (!p.empty()) terms.push_back({std::move(p), ftt.half_exponent});
  }
  {
    Poly p = mul(scale(shape_quad_dt_at(*inv, w), ra), truncate_poly(ft.num, w));
    if (!p.empty()) terms.push_back({std::move(p), ft.half_exponent});
  }
  if (terms.empty()) return HalfPowerField(inv, {}, 0);

  int common = 0;
  for (const Term& term : terms) common = std::max(common, term.half_exponent);

  Poly sum;
  for (const Term& term : terms) {
    sum = add(sum, lift(term.num, term.half_exponent, common, *inv));
  }
  sum = scale(sum, ra);

  if (common >= 1) {
    return HalfPowerField(inv, std::move(sum), common - 1);
  }
  sum = mul(sum, metric_quad_at(*inv, w));
  return HalfPowerField(inv, std::move(sum), 1);
}

HalfPowerVec3 delta2_ruled(const HalfPowerVec3& f) {
  HalfPowerVec3 out;
  out.x = delta2_ruled(f.x);
  out.y = delta2_ruled(f.y);
  out.z = delta2_ruled(f.z);
  return out;
}

HalfPowerVec3 p1_closed_form(const std::shared_ptr<const RuledInvariants>& inv) {
  if (!inv) throw ContractError("p1_closed_form needs invariants");
  const int w = inv->order;
  const UniJet ra = reciprocal(inv->area);
  const Poly nq = metric_quad_at(*inv, w);
  const Poly mqt = shape_quad_dt_at(*inv, w);
  const Poly n_mt = mul(nq, mqt);

  HalfPowerVec3 out;
  for (int c = 0; c < 3; ++c) {
    const Poly term1 = scale(nq, ra * -2.0 * inv->rho_prime[c]);
    const Poly term2 = scale(n_mt, ra * ra * inv->rho[c]);
    HalfPowerField field(inv, add(term1, term2), 1);
    switch (c) {
      case 0: out.x = std::move(field); break;
      case 1: out.y = std::move(field); break;
      case 2: out.z = std::move(field); break;
    }
  }
  return out;
}

std::vector<TraceStep> degree_trace(const std::shared_ptr<const RuledInvariants>& inv,
                                    int kmax) {
  if (kmax < 0) throw ConfigError("trace length must be nonnegative");
  std::vector<TraceStep> steps;
  HalfPowerVec3 f = ruled_position_field(inv);
  steps.push_back({0, f.degree(), f.half_exponent()});
  for (int k = 1; k <= kmax; ++k) {
    f = delta2_ruled(f);
    const int deg = f.degree();
    const int he = f.half_exponent();
    if (deg > 4 * k - 1) {
      std::ostringstream msg;
      msg << "numerator degree " << deg << " exceeds the structural bound " << 4 * k - 1
          << " after " << k << " operator applications";
      throw ContractError(msg.str());
    }
    if (deg >= 0 && he != 3 * k - 2) {
      std::ostringstream msg;
      msg << "half exponent " << he << " differs from the structural value " << 3 * k - 2
          << " after " << k << " operator applications";
      throw ContractError(msg.str());
    }
    steps.push_back({k, deg, he});
  }
  return steps;
}

VanishingReport vanishing_analysis(const RuledInvariants& inv) {
  const double zeta0 = inv.zeta.value();
  const double eta0 = inv.eta.value();
  const double area0 = std::fabs(inv.area.value());
  const double disc = zeta0 - eta0 * eta0;

  VanishingReport report;
  report.witness_value = 2.0 * disc / area0;
  report.can_vanish = !(disc > 0.0);
  std::ostringstream note;
  note << "the rho'-coefficient of the first iterate is -2*metric_quad/area with "
          "metric_quad(t) = (t + eta)^2 + (zeta - eta^2); since zeta - eta^2 = " << disc
       << " the coefficient magnitude is at least " << report.witness_value
       << " for every t, so the first iterate cannot vanish on the patch";
  report.witness = note.str();
  return report;
}

} // namespace beltrami
