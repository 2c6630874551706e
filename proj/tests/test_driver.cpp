#include <doctest.h>

#include <cmath>
#include <string>

#include <json.hpp>

#include "beltrami/driver.hpp"
#include "beltrami/errors.hpp"

using namespace beltrami;

namespace {

RunConfig analyze_config(SurfaceSpec spec, int kmax = 2) {
  RunConfig config;
  config.command = Command::Analyze;
  config.spec = std::move(spec);
  config.kmax = kmax;
  config.grid = {5, 5};
  return config;
}

} // namespace

TEST_CASE("analyze run on the unit sphere is deterministic and correct") {
  const RunConfig config = analyze_config(SurfaceSpec::sphere(1.0));
  const RunOutcome first = run(config);
  const RunOutcome second = run(config);

  CHECK(first.exit_code == 0);
  REQUIRE(first.report.verdict.has_value());
  CHECK(first.report.verdict->finite);
  CHECK(first.report.verdict->k == 1);
  CHECK_FALSE(first.report.verdict->null_type);
  REQUIRE(first.report.verdict->coefficients.size() == 1);
  CHECK(first.report.verdict->coefficients[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(first.report.residuals.size() == 2);

  CHECK(first.report.to_json_string() == second.report.to_json_string());
  CHECK(first.report.to_json_string().find("\"version\"") != std::string::npos);
}

TEST_CASE("reports survive a JSON round trip") {
  const RunOutcome outcome = run(analyze_config(SurfaceSpec::torus(2.0, 0.7)));
  const std::string text = outcome.report.to_json_string();
  const Report back = Report::from_json_string(text);
  CHECK(back.to_json_string() == text);

  CHECK_THROWS_AS((void)Report::from_json_string("{}"), ContractError);
  CHECK_THROWS_AS((void)Report::from_json_string("not json"), ContractError);
}

TEST_CASE("report JSON carries the sections the command produced") {
  const RunOutcome outcome = run(analyze_config(SurfaceSpec::sphere(1.0)));
  const nlohmann::json j = nlohmann::json::parse(outcome.report.to_json_string());
  CHECK(j.contains("config"));
  CHECK(j.contains("residuals"));
  CHECK(j.contains("verdict"));
  CHECK(j.contains("warnings"));
  CHECK(j["config"]["surface"]["kind"] == "sphere");
  CHECK(j["residuals"].is_array());
  CHECK_FALSE(j.contains("symbolic")); // sphere has no ruling
}

TEST_CASE("csv output matches the command") {
  const RunOutcome analyze = run(analyze_config(SurfaceSpec::sphere(1.0)));
  CHECK(analyze.report.to_csv().rfind("k,residual\n", 0) == 0);

  RunConfig idc;
  idc.command = Command::Identities;
  idc.spec = SurfaceSpec::torus(2.0, 0.7);
  const RunOutcome identities = run(idc);
  CHECK(identities.exit_code == 0);
  CHECK(identities.report.identities.size() == 7);
  CHECK(identities.report.to_csv().rfind("name,residual\n", 0) == 0);

  RunConfig rrc;
  rrc.command = Command::RuledReport;
  rrc.spec = SurfaceSpec::helicoid(1.0);
  rrc.kmax = 3;
  const RunOutcome ruled = run(rrc);
  CHECK(ruled.report.to_csv().rfind("k,degree,exponent\n", 0) == 0);
}

TEST_CASE("identity command fails the run when the bar is impossibly low") {
  RunConfig config;
  config.command = Command::Identities;
  config.spec = SurfaceSpec::sphere(1.0);
  config.identity_tol = 1e-18;
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_code == 1);
  CHECK_FALSE(outcome.report.warnings.empty());
}

TEST_CASE("ruled report on the helicoid certifies the closed form") {
  RunConfig config;
  config.command = Command::RuledReport;
  config.spec = SurfaceSpec::helicoid(1.5);
  config.kmax = 4;
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_code == 0);
  REQUIRE(outcome.report.symbolic.has_value());
  const SymbolicSection& sym = *outcome.report.symbolic;
  CHECK(sym.p1_half_exponent == 1);
  CHECK(sym.p1_degree == 2);
  CHECK(sym.crosscheck_residual <= 1e-9);
  CHECK_FALSE(sym.p1_can_vanish);
  CHECK(sym.vanishing_witness == doctest::Approx(3.0).epsilon(1e-10));
  REQUIRE(sym.trace.size() == 5);
  CHECK(sym.trace[4].half_exponent == 10);
}

TEST_CASE("analyze on a helicoid under the third form reports the null mechanism") {
  RunConfig config = analyze_config(SurfaceSpec::helicoid(1.0));
  config.form = Form::III;
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_code == 0);
  REQUIRE(outcome.report.verdict.has_value());
  CHECK(outcome.report.verdict->finite);
  CHECK(outcome.report.verdict->null_type);
  CHECK(outcome.report.verdict->k == 1);
}

TEST_CASE("command validation rejects out-of-range settings") {
  RunConfig config = analyze_config(SurfaceSpec::sphere(1.0));
  config.kmax = 0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.kmax = 13;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.kmax = 5;
  config.grid = {1, 1};
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.grid = {6, 6};
  config.tol = 0.0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.tol = 1e-7;
  CHECK_NOTHROW(config.validate());

  RunConfig ruled;
  ruled.command = Command::RuledReport;
  ruled.spec = SurfaceSpec::sphere(1.0);
  CHECK_THROWS_AS((void)run(ruled), ConfigError);
}

TEST_CASE("the cylinder exercises both failure exits") {
  CHECK_THROWS_AS((void)run(analyze_config(SurfaceSpec::cylinder(1.0))), ParabolicPointError);

  RunConfig report;
  report.command = Command::RuledReport;
  report.spec = SurfaceSpec::cylinder(1.0);
  CHECK_THROWS_AS((void)run(report), NormalizationError);
}

TEST_CASE("library errors map onto the documented exit codes") {
  CHECK(exit_code_for(SpecParseError("x")) == 2);
  CHECK(exit_code_for(ParabolicPointError("x")) == 3);
  CHECK(exit_code_for(NormalizationError("x")) == 5);
  CHECK(exit_code_for(ConfigError("x")) == 4);
  CHECK(exit_code_for(ContractError("x")) == 4);
  CHECK(exit_code_for(std::runtime_error("x")) == 4);
}
