#include "beltrami/surface.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace beltrami {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

Domain default_domain(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Sphere: return {{-kPi, kPi}, {-1.2, 1.2}};
    case SurfaceKind::Torus: return {{-kPi, kPi}, {-1.3, 1.3}};
    case SurfaceKind::Helicoid: return {{-kPi, kPi}, {-2.0, 2.0}};
    case SurfaceKind::Cylinder: return {{-kPi, kPi}, {-1.0, 1.0}};
    case SurfaceKind::Graph: return {{-0.5, 0.5}, {-0.5, 0.5}};
    case SurfaceKind::Ruled: return {{-1.0, 1.0}, {-1.0, 1.0}};
  }
  throw ContractError("unknown surface kind");
}

// Exact bivariate lift of a jet in s alone (all t-derivatives vanish).
Jet inject_s(const UniJet& u, int order) {
  Jet out(order);
  for (int k = 0; k <= order; ++k) out.set_coeff(k, 0, u.coeff(k));
  return out;
}

JetVec3 inject_s(const UniJetVec3& u, int order) {
  return JetVec3(inject_s(u.x, order), inject_s(u.y, order), inject_s(u.z, order));
}

} // namespace

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::Torus: return "torus";
    case SurfaceKind::Helicoid: return "helicoid";
    case SurfaceKind::Cylinder: return "cylinder";
    case SurfaceKind::Graph: return "graph";
    case SurfaceKind::Ruled: return "ruled";
  }
  throw ContractError("unknown surface kind");
}

CurveEvaluator::CurveEvaluator(std::vector<CurveTerm> terms) : terms_(std::move(terms)) {
  for (const CurveTerm& term : terms_) {
    if (term.axis < 0 || term.axis > 2) {
      throw ContractError("curve term axis must be 0, 1 or 2");
    }
    if (term.type == CurveTermType::Poly) {
      const double d = term.freq_or_degree;
      if (d < 0.0 || d != std::floor(d)) {
        throw ContractError("polynomial curve term degree must be a nonnegative integer");
      }
    }
  }
}

UniJetVec3 CurveEvaluator::eval(double s, int order) const {
  if (order < 1) {
    throw InsufficientOrderError("curve evaluation needs jet order >= 1");
  }
  const UniJet S = UniJet::variable(order, s);
  UniJetVec3 out{UniJet(order), UniJet(order), UniJet(order)};
  for (const CurveTerm& term : terms_) {
    UniJet val(order);
    switch (term.type) {
      case CurveTermType::Poly:
        val = ipow(S, static_cast<int>(term.freq_or_degree)) * term.coeff;
        break;
      case CurveTermType::Cos:
        val = cos(S * term.freq_or_degree) * term.coeff;
        break;
      case CurveTermType::Sin:
        val = sin(S * term.freq_or_degree) * term.coeff;
        break;
    }
    out[term.axis] += val;
  }
  return out;
}

SurfaceSpec SurfaceSpec::sphere(double r) {
  SurfaceSpec spec;
  spec.kind = SurfaceKind::Sphere;
  spec.radius = r;
  spec.domain = default_domain(spec.kind);
  return spec;
}

SurfaceSpec SurfaceSpec::torus(double major, double minor) {
  SurfaceSpec spec;
  spec.kind = SurfaceKind::Torus;
  spec.major_radius = major;
  spec.radius = minor;
  spec.domain = default_domain(spec.kind);
  return spec;
}

SurfaceSpec SurfaceSpec::helicoid(double pitch) {
  SurfaceSpec spec;
  spec.kind = SurfaceKind::Helicoid;
  spec.pitch = pitch;
  spec.domain = default_domain(spec.kind);
  return spec;
}

SurfaceSpec SurfaceSpec::cylinder(double r) {
  SurfaceSpec spec;
  spec.kind = SurfaceKind::Cylinder;
  spec.radius = r;
  spec.domain = default_domain(spec.kind);
  return spec;
}

SurfaceSpec SurfaceSpec::graph(std::vector<GraphTerm> terms) {
  SurfaceSpec spec;
  spec.kind = SurfaceKind::Graph;
  spec.graph_terms = std::move(terms);
  spec.domain = default_domain(spec.kind);
  return spec;
}

SurfaceSpec SurfaceSpec::ruled(std::vector<CurveTerm> gamma, std::vector<CurveTerm> rho) {
  SurfaceSpec spec;
  spec.kind = SurfaceKind::Ruled;
  spec.gamma_terms = std::move(gamma);
  spec.rho_terms = std::move(rho);
  spec.domain = default_domain(spec.kind);
  return spec;
}

bool SurfaceSpec::has_ruling() const {
  return kind == SurfaceKind::Helicoid || kind == SurfaceKind::Cylinder ||
         kind == SurfaceKind::Ruled;
}

CurveEvaluator SurfaceSpec::directrix() const {
  switch (kind) {
    case SurfaceKind::Helicoid:
      return CurveEvaluator({{CurveTermType::Poly, 2, pitch, 1.0}});
    case SurfaceKind::Cylinder:
      return CurveEvaluator({{CurveTermType::Cos, 0, radius, 1.0},
                             {CurveTermType::Sin, 1, radius, 1.0}});
    case SurfaceKind::Ruled:
      return CurveEvaluator(gamma_terms);
    default:
      throw ContractError("surface kind " + to_string(kind) + " has no ruling decomposition");
  }
}

CurveEvaluator SurfaceSpec::ruling() const {
  switch (kind) {
    case SurfaceKind::Helicoid:
      return CurveEvaluator({{CurveTermType::Cos, 0, 1.0, 1.0},
                             {CurveTermType::Sin, 1, 1.0, 1.0}});
    case SurfaceKind::Cylinder:
      return CurveEvaluator({{CurveTermType::Poly, 2, 1.0, 0.0}});
    case SurfaceKind::Ruled:
      return CurveEvaluator(rho_terms);
    default:
      throw ContractError("surface kind " + to_string(kind) + " has no ruling decomposition");
  }
}

std::string SurfaceSpec::label() const {
  std::ostringstream out;
  switch (kind) {
    case SurfaceKind::Sphere: out << "sphere(r=" << radius << ")"; break;
    case SurfaceKind::Torus: out << "torus(R=" << major_radius << ", r=" << radius << ")"; break;
    case SurfaceKind::Helicoid: out << "helicoid(c=" << pitch << ")"; break;
    case SurfaceKind::Cylinder: out << "cylinder(r=" << radius << ")"; break;
    case SurfaceKind::Graph: out << "graph(" << graph_terms.size() << " terms)"; break;
    case SurfaceKind::Ruled:
      out << "ruled(" << gamma_terms.size() << "+" << rho_terms.size() << " terms)";
      break;
  }
  return out.str();
}

JetVec3 evaluate_chart(const SurfaceSpec& spec, double s, double t, int order) {
  if (order < 1) {
    throw InsufficientOrderError("chart evaluation needs jet order >= 1");
  }
  if (!spec.domain.contains(s, t)) {
    std::ostringstream msg;
    msg << "point (" << s << ", " << t << ") outside the domain [" << spec.domain.s.lo << ", "
        << spec.domain.s.hi << "] x [" << spec.domain.t.lo << ", " << spec.domain.t.hi << "] of "
        << spec.label();
    throw DomainError(msg.str());
  }

  const Jet S = Jet::variable_s(order, s);
  const Jet T = Jet::variable_t(order, t);

  switch (spec.kind) {
    case SurfaceKind::Sphere: {
      const Jet cs = cos(S), sn = sin(S), ct = cos(T), st = sin(T);
      return JetVec3(spec.radius * ct * cs, spec.radius * ct * sn, spec.radius * st);
    }
    case SurfaceKind::Torus: {
      const Jet w = spec.major_radius + spec.radius * cos(T);
      return JetVec3(w * cos(S), w * sin(S), spec.radius * sin(T));
    }
    case SurfaceKind::Graph: {
      Jet h(order);
      for (const GraphTerm& term : spec.graph_terms) {
        h += term.coeff * ipow(S, term.s_deg) * ipow(T, term.t_deg);
      }
      return JetVec3(S, T, h);
    }
    case SurfaceKind::Helicoid:
    case SurfaceKind::Cylinder:
    case SurfaceKind::Ruled: {
      const JetVec3 g = inject_s(spec.directrix().eval(s, order), order);
      const JetVec3 r = inject_s(spec.ruling().eval(s, order), order);
      return g + T * r;
    }
  }
  throw ContractError("unknown surface kind");
}

void validate_ruled_normalization(const CurveEvaluator& gamma, const CurveEvaluator& rho,
                                  const Interval& s_range, double tol) {
  const int samples = 17;
  for (int i = 0; i < samples; ++i) {
    const double s = s_range.lo + (s_range.hi - s_range.lo) * (i + 0.5) / samples;
    const UniJetVec3 r = rho.eval(s, 2);
    const UniJetVec3 g = gamma.eval(s, 2);
    const UniJetVec3 rp = derivative(r);
    const UniJetVec3 gp = derivative(g);

    const double rho_len = std::sqrt(dot(r, r).value());
    if (std::fabs(rho_len - 1.0) > tol) {
      std::ostringstream msg;
      msg << "ruling direction is not unit length at s=" << s << " (|rho| = " << rho_len << ")";
      throw NormalizationError(msg.str());
    }
    const double rho_prime_len = std::sqrt(dot(rp, rp).value());
    if (std::fabs(rho_prime_len - 1.0) > tol) {
      std::ostringstream msg;
      msg << "ruling spherical image is not unit speed at s=" << s
          << " (|rho'| = " << rho_prime_len << ")";
      throw NormalizationError(msg.str());
    }
    const double pairing = dot(gp, r.truncated(gp.order())).value();
    const double gp_len = std::sqrt(dot(gp, gp).value());
    if (std::fabs(pairing) > tol * (1.0 + gp_len)) {
      std::ostringstream msg;
      msg << "directrix derivative is not orthogonal to the ruling at s=" << s
          << " (<gamma', rho> = " << pairing << ")";
      throw NormalizationError(msg.str());
    }
  }
}

namespace {

[[noreturn]] void fail_parse(const std::string& where, const std::string& what) {
  throw SpecParseError("surface spec: " + where + ": " + what);
}

void check_allowed_keys(const json& j, const std::vector<std::string>& allowed,
                        const std::string& where) {
  for (const auto& item : j.items()) {
    bool found = false;
    for (const std::string& key : allowed) {
      if (item.key() == key) {
        found = true;
        break;
      }
    }
    if (!found) fail_parse(where, "unknown key \"" + item.key() + "\"");
  }
}

double require_number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) fail_parse(where, "missing required key \"" + key + "\"");
  if (!j[key].is_number()) fail_parse(where + "." + key, "expected a number");
  return j[key].get<double>();
}

int require_int(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) fail_parse(where, "missing required key \"" + key + "\"");
  if (!j[key].is_number_integer()) fail_parse(where + "." + key, "expected an integer");
  return j[key].get<int>();
}

Interval parse_interval(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail_parse(where, "expected an array [lo, hi] of two numbers");
  }
  Interval iv{j[0].get<double>(), j[1].get<double>()};
  if (!(iv.lo < iv.hi)) fail_parse(where, "interval endpoints must satisfy lo < hi");
  return iv;
}

CurveTerm parse_curve_term(const json& j, const std::string& where) {
  if (!j.is_object()) fail_parse(where, "expected an object");
  check_allowed_keys(j, {"type", "axis", "coeff", "degree", "freq"}, where);
  if (!j.contains("type") || !j["type"].is_string()) {
    fail_parse(where, "missing or non-string \"type\"");
  }
  const std::string type = j["type"].get<std::string>();
  CurveTerm term;
  term.axis = require_int(j, "axis", where);
  if (term.axis < 0 || term.axis > 2) fail_parse(where + ".axis", "must be 0, 1 or 2");
  term.coeff = require_number(j, "coeff", where);
  if (type == "poly") {
    term.type = CurveTermType::Poly;
    if (j.contains("freq")) fail_parse(where, "\"freq\" is not valid for poly terms");
    const int degree = require_int(j, "degree", where);
    if (degree < 0) fail_parse(where + ".degree", "must be nonnegative");
    term.freq_or_degree = degree;
  } else if (type == "cos" || type == "sin") {
    term.type = (type == "cos") ? CurveTermType::Cos : CurveTermType::Sin;
    if (j.contains("degree")) fail_parse(where, "\"degree\" is not valid for trig terms");
    term.freq_or_degree = require_number(j, "freq", where);
    if (term.freq_or_degree == 0.0) fail_parse(where + ".freq", "must be nonzero");
  } else {
    fail_parse(where + ".type", "expected \"poly\", \"cos\" or \"sin\"");
  }
  return term;
}

std::vector<CurveTerm> parse_curve(const json& j, const std::string& where) {
  if (!j.is_array()) fail_parse(where, "expected an array of curve terms");
  std::vector<CurveTerm> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    terms.push_back(parse_curve_term(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return terms;
}

json curve_to_json(const std::vector<CurveTerm>& terms) {
  json arr = json::array();
  for (const CurveTerm& term : terms) {
    json t;
    t["axis"] = term.axis;
    t["coeff"] = term.coeff;
    switch (term.type) {
      case CurveTermType::Poly:
        t["type"] = "poly";
        t["degree"] = static_cast<int>(term.freq_or_degree);
        break;
      case CurveTermType::Cos:
        t["type"] = "cos";
        t["freq"] = term.freq_or_degree;
        break;
      case CurveTermType::Sin:
        t["type"] = "sin";
        t["freq"] = term.freq_or_degree;
        break;
    }
    arr.push_back(t);
  }
  return arr;
}

} // namespace

SurfaceSpec load_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw SpecParseError(std::string("surface spec: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail_parse("$", "expected a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) {
    fail_parse("$", "missing or non-string \"kind\"");
  }
  const std::string kind = j["kind"].get<std::string>();

  SurfaceSpec spec;
  if (kind == "sphere") {
    check_allowed_keys(j, {"kind", "r", "domain"}, "$");
    const double r = require_number(j, "r", "$");
    if (r <= 0.0) fail_parse("$.r", "radius must be positive");
    spec = SurfaceSpec::sphere(r);
  } else if (kind == "torus") {
    check_allowed_keys(j, {"kind", "R", "r", "domain"}, "$");
    const double major = require_number(j, "R", "$");
    const double minor = require_number(j, "r", "$");
    if (major <= 0.0) fail_parse("$.R", "radius must be positive");
    if (minor <= 0.0) fail_parse("$.r", "radius must be positive");
    if (minor >= major) fail_parse("$.r", "tube radius must be smaller than R");
    spec = SurfaceSpec::torus(major, minor);
  } else if (kind == "helicoid") {
    check_allowed_keys(j, {"kind", "c", "domain"}, "$");
    const double c = require_number(j, "c", "$");
    if (c == 0.0) fail_parse("$.c", "pitch must be nonzero");
    spec = SurfaceSpec::helicoid(c);
  } else if (kind == "cylinder") {
    check_allowed_keys(j, {"kind", "r", "domain"}, "$");
    const double r = require_number(j, "r", "$");
    if (r <= 0.0) fail_parse("$.r", "radius must be positive");
    spec = SurfaceSpec::cylinder(r);
  } else if (kind == "graph") {
    check_allowed_keys(j, {"kind", "h", "domain"}, "$");
    if (!j.contains("h") || !j["h"].is_array()) fail_parse("$", "missing monomial array \"h\"");
    std::vector<GraphTerm> terms;
    for (std::size_t i = 0; i < j["h"].size(); ++i) {
      const std::string where = "$.h[" + std::to_string(i) + "]";
      const json& m = j["h"][i];
      if (!m.is_object()) fail_parse(where, "expected an object");
      check_allowed_keys(m, {"coeff", "s", "t"}, where);
      GraphTerm term;
      term.coeff = require_number(m, "coeff", where);
      term.s_deg = require_int(m, "s", where);
      term.t_deg = require_int(m, "t", where);
      if (term.s_deg < 0 || term.t_deg < 0) fail_parse(where, "exponents must be nonnegative");
      terms.push_back(term);
    }
    spec = SurfaceSpec::graph(std::move(terms));
  } else if (kind == "ruled") {
    check_allowed_keys(j, {"kind", "gamma", "rho", "domain"}, "$");
    if (!j.contains("gamma")) fail_parse("$", "missing curve \"gamma\"");
    if (!j.contains("rho")) fail_parse("$", "missing curve \"rho\"");
    std::vector<CurveTerm> gamma = parse_curve(j["gamma"], "$.gamma");
    std::vector<CurveTerm> rho = parse_curve(j["rho"], "$.rho");
    if (rho.empty()) fail_parse("$.rho", "ruling direction must have at least one term");
    spec = SurfaceSpec::ruled(std::move(gamma), std::move(rho));
  } else {
    fail_parse("$.kind", "unknown surface kind \"" + kind + "\"");
  }

  if (j.contains("domain")) {
    const json& d = j["domain"];
    if (!d.is_object()) fail_parse("$.domain", "expected an object");
    check_allowed_keys(d, {"s", "t"}, "$.domain");
    if (!d.contains("s") || !d.contains("t")) fail_parse("$.domain", "needs both \"s\" and \"t\"");
    spec.domain.s = parse_interval(d["s"], "$.domain.s");
    spec.domain.t = parse_interval(d["t"], "$.domain.t");
  }
  return spec;
}

SurfaceSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SpecParseError("surface spec: cannot open file \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_spec(buffer.str());
}

std::string spec_to_json(const SurfaceSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  switch (spec.kind) {
    case SurfaceKind::Sphere:
    case SurfaceKind::Cylinder:
      j["r"] = spec.radius;
      break;
    case SurfaceKind::Torus:
      j["R"] = spec.major_radius;
      j["r"] = spec.radius;
      break;
    case SurfaceKind::Helicoid:
      j["c"] = spec.pitch;
      break;
    case SurfaceKind::Graph: {
      json arr = json::array();
      for (const GraphTerm& term : spec.graph_terms) {
        arr.push_back({{"coeff", term.coeff}, {"s", term.s_deg}, {"t", term.t_deg}});
      }
      j["h"] = arr;
      break;
    }
    case SurfaceKind::Ruled:
      j["gamma"] = curve_to_json(spec.gamma_terms);
      j["rho"] = curve_to_json(spec.rho_terms);
      break;
  }
  j["domain"] = {{"s", {spec.domain.s.lo, spec.domain.s.hi}},
                 {"t", {spec.domain.t.lo, spec.domain.t.hi}}};
  return j.dump();
}

} // namespace beltrami
