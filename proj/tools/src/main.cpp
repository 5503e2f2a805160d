#include <CLI11.hpp>
#include <string>

#include "cli.hpp"
#include "fpcr/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Functional principal component regression: simulation, testing, validation"};
  app.require_subcommand(1);

  fpcr::cli::SimulateArgs simulate_args;
  fpcr::cli::TestArgs test_args;
  fpcr::cli::ValidateArgs validate_args;
  simulate_args.threads = fpcr::default_thread_count();
  test_args.threads = fpcr::default_thread_count();
  std::string space_name = "l2";

  CLI::App* simulate = app.add_subcommand("simulate", "Run a Monte Carlo scenario grid");
  simulate->add_option("--config", simulate_args.config_path, "JSON scenario config")
      ->required();
  simulate->add_option("--out", simulate_args.output_dir, "output directory")->required();
  simulate->add_option("--threads", simulate_args.threads, "worker threads");

  CLI::App* test = app.add_subcommand("test", "Test a CSV dataset for a zero slope");
  test->add_option("--data", test_args.data_path, "CSV with header y,x_1,...,x_m")->required();
  test->add_option("--out", test_args.output_dir, "output directory")->required();
  test->add_option("--alpha", test_args.alpha, "significance level (default 0.05)");
  test->add_option("--boot", test_args.bootstrap, "bootstrap resamples (default 1000)");
  test->add_option("--space", space_name, "function space: l2 (default) or w12");
  test->add_option("--fve", test_args.fve_threshold,
                   "fraction-of-variance threshold (default 0.75)");
  test->add_option("--jmax", test_args.j_max, "largest candidate truncation (default 20)");
  test->add_option("--seed", test_args.seed, "bootstrap seed (default 1)");
  test->add_option("--threads", test_args.threads, "worker threads");

  CLI::App* validate = app.add_subcommand("validate", "Run the validation suite");
  validate->add_option("--out", validate_args.output_dir, "output directory")->required();
  validate->add_flag("--quick", validate_args.quick, "smaller Monte Carlo sizes");
  validate->add_option("--seed", validate_args.seed, "suite seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return fpcr::cli::cmd_simulate(simulate_args);
    if (test->parsed()) {
      test_args.space = fpcr::parse_space(space_name);
      return fpcr::cli::cmd_test(test_args);
    }
    if (validate->parsed()) return fpcr::cli::cmd_validate(validate_args);
  } catch (const fpcr::DomainError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return fpcr::cli::kExitBadInput;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return fpcr::cli::kExitError;
  }
  return fpcr::cli::kExitError;
}
