// Command line front end: analyze / identities / ruled-report on a surface
// described by a JSON file, with deterministic JSON/CSV reports.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "beltrami/driver.hpp"

namespace {

struct CommonArgs {
  std::string spec_path;
  std::string spec_inline;
  std::string form = "II";
  std::string field = "position";
  int kmax = 5;
  std::string grid = "6x6";
  double tol = 1e-7;
  double identity_tol = 1e-8;
  bool affine = false;
  std::string out;
  std::string format = "json";
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  auto* spec = cmd->add_option("--spec", args.spec_path, "Path to a surface spec JSON file");
  auto* spec_json =
      cmd->add_option("--spec-json", args.spec_inline, "Inline surface spec JSON text");
  spec->excludes(spec_json);
  cmd->add_option("--form", args.form, "Fundamental form: I, II or III")
      ->default_val(args.form);
  cmd->add_option("--field", args.field, "Field to iterate: position or gauss")
      ->default_val(args.field);
  cmd->add_option("--kmax", args.kmax, "Largest type order to test")->default_val(args.kmax);
  cmd->add_option("--grid", args.grid, "Sample grid as RxC, e.g. 6x6")->default_val(args.grid);
  cmd->add_option("--tol", args.tol, "Detector residual tolerance")->default_val(args.tol);
  cmd->add_option("--identity-tol", args.identity_tol, "Identity suite pass tolerance")
      ->default_val(args.identity_tol);
  cmd->add_flag("--affine", args.affine, "Allow an affine (constant) term in the dependence fit");
  cmd->add_option("--out", args.out, "Write the report to this path");
  cmd->add_option("--format", args.format, "Report format: json, csv or both")
      ->default_val(args.format);
}

beltrami::GridSpec parse_grid(const std::string& text) {
  const std::size_t cut = text.find('x');
  if (cut == std::string::npos || cut == 0 || cut + 1 >= text.size()) {
    throw beltrami::ConfigError("grid must look like RxC, e.g. 6x6, got \"" + text + "\"");
  }
  try {
    std::size_t used = 0;
    const int rows = std::stoi(text.substr(0, cut), &used);
    if (used != cut) throw std::invalid_argument(text);
    const std::string cols_text = text.substr(cut + 1);
    const int cols = std::stoi(cols_text, &used);
    if (used != cols_text.size()) throw std::invalid_argument(text);
    return {rows, cols};
  } catch (const std::exception&) {
    throw beltrami::ConfigError("grid must look like RxC, e.g. 6x6, got \"" + text + "\"");
  }
}

beltrami::RunConfig build_config(beltrami::Command command, const CommonArgs& args) {
  beltrami::RunConfig config;
  config.command = command;
  if (!args.spec_path.empty()) {
    config.spec = beltrami::load_spec_file(args.spec_path);
  } else if (!args.spec_inline.empty()) {
    config.spec = beltrami::load_spec(args.spec_inline);
  } else {
    throw beltrami::ConfigError("one of --spec or --spec-json is required");
  }
  config.form = beltrami::form_from_string(args.form);
  config.field = beltrami::field_from_string(args.field);
  config.kmax = args.kmax;
  config.grid = parse_grid(args.grid);
  config.tol = args.tol;
  config.identity_tol = args.identity_tol;
  config.affine = args.affine;
  return config;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw beltrami::ConfigError("cannot open output file \"" + path + "\"");
  out << content;
  if (!out.good()) throw beltrami::ConfigError("failed writing output file \"" + path + "\"");
}

void emit(const beltrami::Report& report, const CommonArgs& args) {
  const beltrami::OutputFormat format = beltrami::format_from_string(args.format);
  if (format == beltrami::OutputFormat::Csv) {
    std::cout << report.to_csv();
  } else {
    std::cout << report.to_json_string();
  }
  if (args.out.empty()) return;
  switch (format) {
    case beltrami::OutputFormat::Json:
      write_file(args.out, report.to_json_string());
      break;
    case beltrami::OutputFormat::Csv:
      write_file(args.out, report.to_csv());
      break;
    case beltrami::OutputFormat::Both:
      write_file(args.out + ".json", report.to_json_string());
      write_file(args.out + ".csv", report.to_csv());
      break;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beltrami operator laboratory for parametric surfaces"};
  app.require_subcommand(1);

  CommonArgs analyze_args, identities_args, ruled_args;
  CLI::App* analyze =
      app.add_subcommand("analyze", "Finite-type dependence scan of the operator iterates");
  add_common_options(analyze, analyze_args);
  CLI::App* identities =
      app.add_subcommand("identities", "Structural identity residuals over a sample grid");
  add_common_options(identities, identities_args);
  CLI::App* ruled = app.add_subcommand(
      "ruled-report", "Closed-form iterate ladder and vanishing certificate for ruled patches");
  add_common_options(ruled, ruled_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return 4;
  }

  try {
    beltrami::RunConfig config;
    const CommonArgs* args = nullptr;
    if (analyze->parsed()) {
      args = &analyze_args;
      config = build_config(beltrami::Command::Analyze, analyze_args);
    } else if (identities->parsed()) {
      args = &identities_args;
      config = build_config(beltrami::Command::Identities, identities_args);
    } else {
      args = &ruled_args;
      config = build_config(beltrami::Command::RuledReport, ruled_args);
    }
    beltrami::format_from_string(args->format); // validate before running
    const beltrami::RunOutcome outcome = beltrami::run(config);
    emit(outcome.report, *args);
    return outcome.exit_code;
  } catch (const beltrami::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return beltrami::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
