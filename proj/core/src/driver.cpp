#include "beltrami/driver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace beltrami {

namespace {

using nlohmann::json;

} // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::Analyze: return "analyze";
    case Command::Identities: return "identities";
    case Command::RuledReport: return "ruled-report";
  }
  throw ContractError("unknown command");
}

Command command_from_string(const std::string& name) {
  if (name == "analyze") return Command::Analyze;
  if (name == "identities") return Command::Identities;
  if (name == "ruled-report") return Command::RuledReport;
  throw ConfigError("command must be analyze, identities or ruled-report, got \"" + name + "\"");
}

OutputFormat format_from_string(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "both") return OutputFormat::Both;
  throw ConfigError("format must be json, csv or both, got \"" + name + "\"");
}

void RunConfig::validate() const {
  if (kmax < 1 || kmax > 12) {
    throw ConfigError("kmax must be between 1 and 12, got " + std::to_string(kmax));
  }
  if (grid.rows < 1 || grid.cols < 1 || grid.rows > 64 || grid.cols > 64) {
    throw ConfigError("grid dimensions must be between 1 and 64");
  }
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (!(identity_tol > 0.0)) throw ConfigError("identity tolerance must be positive");
  if (3 * grid.rows * grid.cols < kmax + 4) {
    throw ConfigError("grid too small for the requested kmax");
  }
}

namespace {

json config_to_json(const RunConfig& config) {
  json j;
  j["command"] = to_string(config.command);
  j["surface"] = json::parse(spec_to_json(config.spec));
  j["form"] = to_string(config.form);
  j["field"] = to_string(config.field);
  j["kmax"] = config.kmax;
  j["grid"] = {config.grid.rows, config.grid.cols};
  j["tol"] = config.tol;
  j["identity_tol"] = config.identity_tol;
  j["affine"] = config.affine;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig config;
  config.command = command_from_string(j.at("command").get<std::string>());
  config.spec = load_spec(j.at("surface").dump());
  config.form = form_from_string(j.at("form").get<std::string>());
  config.field = field_from_string(j.at("field").get<std::string>());
  config.kmax = j.at("kmax").get<int>();
  config.grid.rows = j.at("grid").at(0).get<int>();
  config.grid.cols = j.at("grid").at(1).get<int>();
  config.tol = j.at("tol").get<double>();
  config.identity_tol = j.at("identity_tol").get<double>();
  config.affine = j.at("affine").get<bool>();
  return config;
}

double half_units_to_exponent(int half_units) { return 0.5 * half_units; }

json symbolic_to_json(const SymbolicSection& symbolic) {
  json j;
  json trace = json::array();
  for (const TraceStep& step : symbolic.trace) {
    trace.push_back({{"k", step.step},
                     {"degree", step.degree},
                     {"exponent", half_units_to_exponent(step.half_exponent)}});
  }
  j["trace"] = trace;
  j["p1"] = {{"degree", symbolic.p1_degree},
             {"exponent", half_units_to_exponent(symbolic.p1_half_exponent)},
             {"coefficients",
              {symbolic.p1_coefficients[0], symbolic.p1_coefficients[1],
               symbolic.p1_coefficients[2]}}};
  j["crosscheck_residual"] = symbolic.crosscheck_residual;
  j["vanishing"] = {{"can_vanish", symbolic.p1_can_vanish},
                    {"witness_value", symbolic.vanishing_witness},
                    {"note", symbolic.vanishing_note}};
  return j;
}

SymbolicSection symbolic_from_json(const json& j) {
  SymbolicSection symbolic;
  for (const json& step : j.at("trace")) {
    symbolic.trace.push_back({step.at("k").get<int>(), step.at("degree").get<int>(),
                              static_cast<int>(std::lround(2.0 * step.at("exponent").get<double>()))});
  }
  symbolic.p1_degree = j.at("p1").at("degree").get<int>();
  symbolic.p1_half_exponent =
      static_cast<int>(std::lround(2.0 * j.at("p1").at("exponent").get<double>()));
  for (int c = 0; c < 3; ++c) {
    symbolic.p1_coefficients[static_cast<std::size_t>(c)] =
        j.at("p1").at("coefficients").at(c).get<std::vector<double>>();
  }
  symbolic.crosscheck_residual = j.at("crosscheck_residual").get<double>();
  symbolic.p1_can_vanish = j.at("vanishing").at("can_vanish").get<bool>();
  symbolic.vanishing_witness = j.at("vanishing").at("witness_value").get<double>();
  symbolic.vanishing_note = j.at("vanishing").at("note").get<std::string>();
  return symbolic;
}

} // namespace

std::string Report::to_json_string(int indent) const {
  json j;
  j["config"] = config_to_json(config);
  json residual_rows = json::array();
  for (const ResidualEntry& entry : residuals) {
    residual_rows.push_back({{"k", entry.k}, {"residual", entry.residual}});
  }
  j["residuals"] = residual_rows;
  if (verdict) {
    json eig = json::array();
    for (const std::array<double, 2>& root : verdict->eigenvalues) {
      eig.push_back({root[0], root[1]});
    }
    j["verdict"] = {{"finite", verdict->finite},
                    {"k", verdict->k},
                    {"null_type", verdict->null_type},
                    {"coefficients", verdict->coefficients},
                    {"eigenvalues", eig},
                    {"message", verdict->message}};
  }
  if (!identities.empty()) {
    json rows = json::array();
    for (const IdentityResidual& item : identities) {
      rows.push_back({{"name", item.name}, {"residual", item.residual}});
    }
    j["identities"] = rows;
  }
  if (symbolic) j["symbolic"] = symbolic_to_json(*symbolic);
  j["warnings"] = warnings;
  j["version"] = version;
  return j.dump(indent) + "\n";
}

Report Report::from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ContractError(std::string("report parse: invalid JSON: ") + e.what());
  }
  try {
    Report report;
    report.config = config_from_json(j.at("config"));
    for (const json& row : j.at("residuals")) {
      report.residuals.push_back({row.at("k").get<int>(), row.at("residual").get<double>()});
    }
    if (j.contains("verdict")) {
      VerdictSection verdict;
      const json& v = j.at("verdict");
      verdict.finite = v.at("finite").get<bool>();
      verdict.k = v.at("k").get<int>();
      verdict.null_type = v.at("null_type").get<bool>();
      verdict.coefficients = v.at("coefficients").get<std::vector<double>>();
      for (const json& root : v.at("eigenvalues")) {
        verdict.eigenvalues.push_back({root.at(0).get<double>(), root.at(1).get<double>()});
      }
      verdict.message = v.at("message").get<std::string>();
      report.verdict = std::move(verdict);
    }
    if (j.contains("identities")) {
      for (const json& row : j.at("identities")) {
        report.identities.push_back(
            {row.at("name").get<std::string>(), row.at("residual").get<double>()});
      }
    }
    if (j.contains("symbolic")) report.symbolic = symbolic_from_json(j.at("symbolic"));
    report.warnings = j.at("warnings").get<std::vector<std::string>>();
    report.version = j.at("version").get<std::string>();
    return report;
  } catch (const json::exception& e) {
    throw ContractError(std::string("report parse: ") + e.what());
  }
}

namespace {

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

} // namespace

std::string Report::to_csv() const {
  std::ostringstream out;
  switch (config.command) {
    case Command::Analyze: {
      out << "k,residual\n";
      for (const ResidualEntry& entry : residuals) {
        out << entry.k << "," << format_double(entry.residual) << "\n";
      }
      break;
    }
    case Command::Identities: {
      out << "name,residual\n";
      for (const IdentityResidual& item : identities) {
        out << item.name << "," << format_double(item.residual) << "\n";
      }
      break;
    }
    case Command::RuledReport: {
      out << "k,degree,exponent\n";
      if (symbolic) {
        for (const TraceStep& step : symbolic->trace) {
          out << step.step << "," << step.degree << ","
              << format_double(half_units_to_exponent(step.half_exponent)) << "\n";
        }
      }
      break;
    }
  }
  return out.str();
}

namespace {

// The symbolic block for a ruled patch: degree/exponent ladder, the first
// iterate in closed form, its vanishing certificate, and a cross-check of
// the closed form against the jet pipeline at grid samples.
SymbolicSection build_symbolic(const RunConfig& config) {
  const SurfaceSpec& spec = config.spec;
  const CurveEvaluator gamma = spec.directrix();
  const CurveEvaluator rho = spec.ruling();
  const double s0 = 0.5 * (spec.domain.s.lo + spec.domain.s.hi);

  auto inv = std::make_shared<const RuledInvariants>(
      ruled_invariants(gamma, rho, s0, config.kmax + 2));

  SymbolicSection symbolic;
  symbolic.trace = degree_trace(inv, config.kmax);

  const HalfPowerVec3 p1 = p1_closed_form(inv);
  symbolic.p1_degree = p1.degree();
  symbolic.p1_half_exponent = p1.half_exponent();
  for (int c = 0; c < 3; ++c) {
    for (const UniJet& coeff : p1[c].numerator()) {
      symbolic.p1_coefficients[static_cast<std::size_t>(c)].push_back(coeff.value());
    }
  }

  const VanishingReport vanishing = vanishing_analysis(*inv);
  symbolic.p1_can_vanish = vanishing.can_vanish;
  symbolic.vanishing_witness = vanishing.witness_value;
  symbolic.vanishing_note = vanishing.witness;

  // Cross-check the closed form against the numeric jet pipeline at a small
  // interior sample set.
  double worst = 0.0;
  const int n_s = 3, n_t = 3;
  for (int i = 0; i < n_s; ++i) {
    const double s = spec.domain.s.lo + spec.domain.s.length() * (i + 1) / (n_s + 1);
    auto inv_s = std::make_shared<const RuledInvariants>(ruled_invariants(gamma, rho, s, 2));
    const HalfPowerVec3 lap = delta2_ruled(ruled_position_field(inv_s));
    for (int j = 0; j < n_t; ++j) {
      const double t = spec.domain.t.lo + spec.domain.t.length() * (j + 1) / (n_t + 1);
      const std::array<double, 3> closed = lap.eval(t);

      const JetVec3 x = evaluate_chart(spec, s, t, 4);
      const FormBundle fb = fundamental_forms(x);
      const ConnectionBundle cb = connections(fb, Form::II);
      const JetVec3 numeric = beltrami_second(Form::II, fb.position, fb, cb);

      double diff = 0.0, scale = 0.0;
      for (int c = 0; c < 3; ++c) {
        const double nv = numeric[c].value();
        diff += (closed[static_cast<std::size_t>(c)] - nv) *
                (closed[static_cast<std::size_t>(c)] - nv);
        scale += nv * nv;
      }
      worst = std::max(worst, std::sqrt(diff) / (1.0 + std::sqrt(scale)));
    }
  }
  symbolic.crosscheck_residual = worst;
  return symbolic;
}

RunOutcome run_analyze(const RunConfig& config) {
  if (config.spec.kind == SurfaceKind::Ruled) {
    validate_ruled_normalization(config.spec.directrix(), config.spec.ruling(),
                                 config.spec.domain.s);
  }

  const IterateTable table =
      build_iterates(config.spec, config.form, config.field, config.grid, config.kmax);
  const FiniteTypeVerdict verdict = dependence_test(table, config.tol, config.affine);

  Report report;
  report.config = config;
  for (int k = 1; k <= verdict.kmax; ++k) {
    report.residuals.push_back({k, verdict.residuals[static_cast<std::size_t>(k - 1)]});
  }
  VerdictSection section;
  section.finite = verdict.finite;
  section.k = verdict.type_order;
  section.null_type = verdict.null_type;
  section.coefficients = verdict.coefficients;
  section.eigenvalues = verdict.eigenvalues;
  section.message = verdict.message;
  report.verdict = std::move(section);
  report.warnings = verdict.warnings;

  if (config.spec.has_ruling() && config.spec.kind != SurfaceKind::Cylinder &&
      config.form == Form::II && config.field == FieldKind::Position) {
    report.symbolic = build_symbolic(config);
  }
  return {std::move(report), 0};
}

RunOutcome run_identities(const RunConfig& config) {
  Report report;
  report.config = config;

  const int order = 5;
  std::vector<double> worst;
  std::vector<std::string> names;
  for (int i = 0; i < config.grid.rows; ++i) {
    const double s =
        config.spec.domain.s.lo + config.spec.domain.s.length() * (i + 1) / (config.grid.rows + 1);
    for (int j = 0; j < config.grid.cols; ++j) {
      const double t = config.spec.domain.t.lo +
                       config.spec.domain.t.length() * (j + 1) / (config.grid.cols + 1);
      const JetVec3 x = evaluate_chart(config.spec, s, t, order);
      const FormBundle fb = fundamental_forms(x);
      const IdentityReport point = identity_suite(fb);
      if (names.empty()) {
        for (const IdentityResidual& item : point.items) {
          names.push_back(item.name);
          worst.push_back(item.residual);
        }
      } else {
        for (std::size_t n = 0; n < point.items.size(); ++n) {
          worst[n] = std::max(worst[n], point.items[n].residual);
        }
      }
    }
  }

  bool pass = true;
  for (std::size_t n = 0; n < names.size(); ++n) {
    report.identities.push_back({names[n], worst[n]});
    if (worst[n] > config.identity_tol) pass = false;
  }
  if (!pass) {
    report.warnings.push_back("identity residuals exceed the tolerance " +
                              format_double(config.identity_tol));
  }
  return {std::move(report), pass ? 0 : 1};
}

RunOutcome run_ruled_report(const RunConfig& config) {
  if (!config.spec.has_ruling()) {
    throw ConfigError("ruled-report needs a helicoid, cylinder or ruled surface");
  }
  validate_ruled_normalization(config.spec.directrix(), config.spec.ruling(),
                               config.spec.domain.s);

  Report report;
  report.config = config;
  report.symbolic = build_symbolic(config);
  return {std::move(report), 0};
}

} // namespace

RunOutcome run(const RunConfig& config) {
  config.validate();
  switch (config.command) {
    case Command::Analyze: return run_analyze(config);
    case Command::Identities: return run_identities(config);
    case Command::RuledReport: return run_ruled_report(config);
  }
  throw ContractError("unknown command");
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const SpecParseError*>(&error)) return 2;
  if (dynamic_cast<const ParabolicPointError*>(&error)) return 3;
  if (dynamic_cast<const NormalizationError*>(&error)) return 5;
  return 4;
}

} // namespace beltrami
