#include "sobasip/harness.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common_flags(CLI::App* cmd, sobasip::harness::RunConfig& config,
                      std::string& format, std::string& trace) {
  cmd->add_option("--problem", config.problems,
                  "Problem name(s) from the registry, or 'all'");
  cmd->add_option("--problem-file", [&config](const std::vector<std::string>& v) {
        config.problem_file = v.back();
        return true;
      },
      "Path to a plain-text problem definition");
  cmd->add_option("--n", [&config](const std::vector<std::string>& v) {
        config.n = std::stoll(v.back());
        return true;
      },
      "Dimension override for scalable problems");
  cmd->add_option("--eps", config.params.eps, "Stationarity target");
  cmd->add_option("--delta", config.params.delta, "Homogenization perturbation");
  cmd->add_option("--big-delta", config.params.big_delta, "Step-regime threshold");
  cmd->add_option("--nu", config.params.nu, "Small-|t| cutoff");
  cmd->add_option("--beta", config.params.beta, "Backtracking shrink factor");
  cmd->add_option("--gamma", config.params.gamma, "Sufficient-decrease coefficient");
  cmd->add_option("--tau", config.params.tau, "Fraction-to-boundary factor");
  cmd->add_option("--max-iter", config.params.max_iter, "Iteration cap");
  cmd->add_flag("--local-phase", config.params.local_phase_enabled,
                "Switch delta to 0 once ||gbar|| falls below the trigger");
  cmd->add_option("--format", format, "table | csv | json");
  cmd->add_option("--out", config.out_path, "Write the formatted output to a file");
  cmd->add_option("--trace", trace, "summary | per_iter");
  cmd->add_option("--seed", config.seed, "Seed for randomized verification suites");
}

int apply_enums(sobasip::harness::RunConfig& config, const std::string& format,
                const std::string& trace) {
  using sobasip::harness::OutputFormat;
  using sobasip::harness::TraceVerbosity;
  if (format == "table") config.format = OutputFormat::table;
  else if (format == "csv") config.format = OutputFormat::csv;
  else if (format == "json") config.format = OutputFormat::json;
  else {
    std::cerr << "error: unknown format '" << format << "'\n";
    return sobasip::harness::kExitUsage;
  }
  if (trace == "summary") config.trace = TraceVerbosity::summary;
  else if (trace == "per_iter") config.trace = TraceVerbosity::per_iter;
  else {
    std::cerr << "error: unknown trace verbosity '" << trace << "'\n";
    return sobasip::harness::kExitUsage;
  }
  return -1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second-order affine-scaling interior-point solver for bound-constrained minimization"};
  app.require_subcommand(1);

  sobasip::harness::RunConfig run_config;
  run_config.problems = {"all"};
  std::string run_format = "table", run_trace = "summary";
  CLI::App* run_cmd = app.add_subcommand("run", "Solve problems and emit a result table");
  add_common_flags(run_cmd, run_config, run_format, run_trace);

  sobasip::harness::RunConfig verify_config;
  std::string verify_format = "table", verify_trace = "summary";
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the oracle suite (derivative, lemma, eigen checks)");
  add_common_flags(verify_cmd, verify_config, verify_format, verify_trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : sobasip::harness::kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      const int rc = apply_enums(run_config, run_format, run_trace);
      if (rc >= 0) return rc;
      return sobasip::harness::run(run_config, std::cout);
    }
    const int rc = apply_enums(verify_config, verify_format, verify_trace);
    if (rc >= 0) return rc;
    return sobasip::harness::verify(verify_config, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sobasip::harness::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sobasip::harness::kExitSolveFailure;
  }
}
