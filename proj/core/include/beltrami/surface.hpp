#ifndef BELTRAMI_SURFACE_HPP
#define BELTRAMI_SURFACE_HPP

#include <string>
#include <vector>

#include "beltrami/jet.hpp"
#include "beltrami/unijet.hpp"

namespace beltrami {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return v >= lo && v <= hi; }
  double length() const { return hi - lo; }
};

struct Domain {
  Interval s;
  Interval t;
  bool contains(double sv, double tv) const { return s.contains(sv) && t.contains(tv); }
};

enum class SurfaceKind { Sphere, Torus, Helicoid, Cylinder, Graph, Ruled };

std::string to_string(SurfaceKind kind);

// One additive term of a coordinate curve s -> R^3: either coeff * s^degree,
// coeff * cos(freq * s), or coeff * sin(freq * s) along one coordinate axis.
enum class CurveTermType { Poly, Cos, Sin };

struct CurveTerm {
  CurveTermType type = CurveTermType::Poly;
  int axis = 0;
  double coeff = 0.0;
  // Integer degree for Poly (stored exactly), angular frequency for Cos/Sin.
  double freq_or_degree = 0.0;
};

// Evaluates a curve given as a sum of CurveTerms to any requested jet order;
// all derivatives are exact (no numerical differentiation anywhere).
class CurveEvaluator {
public:
  CurveEvaluator() = default;
  explicit CurveEvaluator(std::vector<CurveTerm> terms);

  UniJetVec3 eval(double s, int order) const;
  const std::vector<CurveTerm>& terms() const { return terms_; }

private:
  std::vector<CurveTerm> terms_;
};

// One monomial coeff * s^s_deg * t^t_deg of a graph chart height function.
struct GraphTerm {
  double coeff = 0.0;
  int s_deg = 0;
  int t_deg = 0;
};

// Description of a parametric surface patch: either a catalog chart with
// shape parameters or a general ruled surface built from two curves.
struct SurfaceSpec {
  SurfaceKind kind = SurfaceKind::Sphere;
  double radius = 1.0;       // sphere/cylinder radius, torus tube radius
  double major_radius = 2.0; // torus center-circle radius
  double pitch = 1.0;        // helicoid pitch
  std::vector<GraphTerm> graph_terms;
  std::vector<CurveTerm> gamma_terms; // ruled: directrix
  std::vector<CurveTerm> rho_terms;   // ruled: ruling direction
  Domain domain;

  static SurfaceSpec sphere(double r);
  static SurfaceSpec torus(double major, double minor);
  static SurfaceSpec helicoid(double pitch);
  static SurfaceSpec cylinder(double r);
  static SurfaceSpec graph(std::vector<GraphTerm> terms);
  static SurfaceSpec ruled(std::vector<CurveTerm> gamma, std::vector<CurveTerm> rho);

  // Helicoid, cylinder and general ruled surfaces decompose as
  // directrix(s) + t * ruling(s).
  bool has_ruling() const;
  CurveEvaluator directrix() const;
  CurveEvaluator ruling() const;

  std::string label() const;
};

// Taylor jet of the chart at an interior point of the declared domain.
// Throws DomainError outside the domain and InsufficientOrderError for
// order < 1. All coefficients are exact up to rounding: catalog charts are
// composed from polynomial and trigonometric jet primitives.
JetVec3 evaluate_chart(const SurfaceSpec& spec, double s, double t, int order);

// Checks |rho| = 1, |rho'| = 1 and <gamma', rho> = 0 on a sample of the
// s-interval; throws NormalizationError naming the violated condition.
void validate_ruled_normalization(const CurveEvaluator& gamma, const CurveEvaluator& rho,
                                  const Interval& s_range, double tol = 1e-9);

// JSON round trip for surface descriptions. load_spec throws SpecParseError
// with the offending key/location; spec_to_json emits a canonical form that
// load_spec accepts.
SurfaceSpec load_spec(const std::string& json_text);
SurfaceSpec load_spec_file(const std::string& path);
std::string spec_to_json(const SurfaceSpec& spec);

} // namespace beltrami

#endif // BELTRAMI_SURFACE_HPP
