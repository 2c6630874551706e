#ifndef BELTRAMI_DRIVER_HPP
#define BELTRAMI_DRIVER_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "beltrami/finite_type.hpp"
#include "beltrami/operators.hpp"
#include "beltrami/ruled.hpp"
#include "beltrami/surface.hpp"

namespace beltrami {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { Analyze, Identities, RuledReport };

std::string to_string(Command command);
Command command_from_string(const std::string& name);

enum class OutputFormat { Json, Csv, Both };

OutputFormat format_from_string(const std::string& name);

struct RunConfig {
  Command command = Command::Analyze;
  SurfaceSpec spec;
  Form form = Form::II;
  FieldKind field = FieldKind::Position;
  int kmax = 5;
  GridSpec grid{6, 6};
  double tol = 1e-7;          // detector residual threshold
  double identity_tol = 1e-8; // identity suite pass threshold
  bool affine = false;

  void validate() const; // throws ConfigError
};

struct ResidualEntry {
  int k = 0;
  double residual = 0.0;
};

struct VerdictSection {
  bool finite = false;
  int k = 0;
  bool null_type = false;
  std::vector<double> coefficients;
  std::vector<std::array<double, 2>> eigenvalues;
  std::string message;
};

struct SymbolicSection {
  std::vector<TraceStep> trace;
  int p1_degree = 0;
  int p1_half_exponent = 0;
  // Base-point values of the first-iterate numerator coefficients, one list
  // of ascending t-degree per component.
  std::array<std::vector<double>, 3> p1_coefficients;
  double crosscheck_residual = 0.0;
  bool p1_can_vanish = false;
  double vanishing_witness = 0.0;
  std::string vanishing_note;
};

// Deterministic run report: identical RunConfig inputs produce bit-identical
// JSON (reports carry the tool version but never wall-clock data).
struct Report {
  RunConfig config;
  std::vector<ResidualEntry> residuals;
  std::optional<VerdictSection> verdict;
  std::vector<IdentityResidual> identities;
  std::optional<SymbolicSection> symbolic;
  std::vector<std::string> warnings;
  std::string version = kToolVersion;

  std::string to_json_string(int indent = 2) const;
  static Report from_json_string(const std::string& text);

  // One table per command: k,residual / name,residual / k,degree,exponent.
  std::string to_csv() const;
};

struct RunOutcome {
  Report report;
  int exit_code = 0;
};

// Dispatches on config.command. Throws the library error types; callers map
// them to process exit codes with exit_code_for.
RunOutcome run(const RunConfig& config);

// ok 0, identity failure 1, spec parse 2, parabolic point 3, config or
// internal contract 4, ruled normalization 5.
int exit_code_for(const std::exception& error);

} // namespace beltrami

#endif // BELTRAMI_DRIVER_HPP
