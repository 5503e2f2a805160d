#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

#include <json.hpp>

#include "dataset_io.hpp"
#include "fpcr/validation.hpp"

namespace fpcr::cli {

using nlohmann::json;

namespace {

class ConfigError : public Error {
 public:
  using Error::Error;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

// Manifest goes out before any heavy computation so a crashed run still
// leaves a record of what was attempted.
void write_manifest(const std::filesystem::path& output_dir, const std::string& command,
                    const json& extra) {
  json manifest{
      {"command", command},
      {"timestamp", utc_timestamp()},
      {"tool_version", kToolVersion},
      {"output_dir", output_dir.string()},
  };
  manifest.update(extra);
  std::ofstream out(output_dir / "manifest.json");
  if (!out) {
    throw Error("cannot write manifest to '" + (output_dir / "manifest.json").string() + "'");
  }
  out << manifest.dump(2) << "\n";
}

template <typename T>
std::vector<T> scalar_or_list(const json& node, const std::string& key) {
  std::vector<T> values;
  if (node.is_array()) {
    for (const auto& item : node) values.push_back(item.get<T>());
  } else {
    values.push_back(node.get<T>());
  }
  if (values.empty()) {
    throw ConfigError("config field '" + key + "': scenario list is empty");
  }
  return values;
}

struct ScenarioGrid {
  std::vector<Eigen::Index> n;
  std::vector<double> c;
  std::vector<SlopeKind> slope_kinds;
  std::vector<Space> spaces;
  ExperimentConfig base;  // shared scalar settings
};

ScenarioGrid parse_simulate_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config '" + path.string() + "'");
  }
  json config;
  try {
    config = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ConfigError("config '" + path.string() + "': " + err.what());
  }

  auto require = [&](const char* key) -> const json& {
    if (!config.contains(key)) {
      throw ConfigError("config field '" + std::string(key) + "' is missing");
    }
    return config.at(key);
  };

  try {
    ScenarioGrid grid;
    grid.n = scalar_or_list<Eigen::Index>(require("n"), "n");
    grid.c = scalar_or_list<double>(require("c"), "c");
    for (const auto& name : scalar_or_list<std::string>(require("slope_kind"), "slope_kind")) {
      grid.slope_kinds.push_back(parse_slope_kind(name));
    }
    for (const auto& name :
         scalar_or_list<std::string>(config.value("space", json("l2")), "space")) {
      grid.spaces.push_back(parse_space(name));
    }
    grid.base.m = config.value("grid_size", 50);
    grid.base.alpha = config.value("alpha", 0.05);
    grid.base.B = config.value("B", 1000);
    grid.base.reps = config.value("reps", 500);
    grid.base.fve_threshold = config.value("fve_threshold", 0.75);
    grid.base.j_max = config.value("j_max", 20);
    grid.base.seed = config.value("seed", std::uint64_t{1});
    if (config.contains("matern")) {
      const json& matern = config.at("matern");
      grid.base.matern.sigma2 = matern.value("sigma2", 1.0);
      grid.base.matern.rho = matern.value("rho", 1.0);
      grid.base.matern.nu = matern.value("nu", 1.0);
    }
    // validate every scenario up front so a bad grid fails before any work
    for (const Eigen::Index n : grid.n) {
      for (const double c : grid.c) {
        for (const SlopeKind kind : grid.slope_kinds) {
          for (const Space space : grid.spaces) {
            ExperimentConfig cfg = grid.base;
            cfg.n = n;
            cfg.c = c;
            cfg.slope_kind = kind;
            cfg.space = space;
            validate_config(cfg);
          }
        }
      }
    }
    return grid;
  } catch (const json::exception& err) {
    throw ConfigError("config '" + path.string() + "': " + err.what());
  } catch (const PreconditionError& err) {
    throw ConfigError("config '" + path.string() + "': " + err.what());
  } catch (const DomainError& err) {
    throw ConfigError("config '" + path.string() + "': " + err.what());
  }
}

json config_echo(const ScenarioGrid& grid) {
  json slope_names = json::array();
  for (const SlopeKind kind : grid.slope_kinds) slope_names.push_back(slope_kind_name(kind));
  json space_names = json::array();
  for (const Space space : grid.spaces) space_names.push_back(space_name(space));
  return json{
      {"n", grid.n},
      {"c", grid.c},
      {"slope_kind", slope_names},
      {"space", space_names},
      {"grid_size", grid.base.m},
      {"alpha", grid.base.alpha},
      {"B", grid.base.B},
      {"reps", grid.base.reps},
      {"fve_threshold", grid.base.fve_threshold},
      {"j_max", grid.base.j_max},
      {"seed", grid.base.seed},
      {"matern",
       {{"sigma2", grid.base.matern.sigma2},
        {"rho", grid.base.matern.rho},
        {"nu", grid.base.matern.nu}}},
  };
}

}  // namespace

int cmd_simulate(const SimulateArgs& args) {
  ScenarioGrid grid;
  try {
    grid = parse_simulate_config(args.config_path);
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitBadInput;
  }

  std::error_code ec;
  std::filesystem::create_directories(args.output_dir, ec);
  write_manifest(args.output_dir, "simulate",
                 json{{"config_path", args.config_path.string()}, {"config", config_echo(grid)}});

  const std::filesystem::path csv_path = args.output_dir / "rejection_rates.csv";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) {
    std::cerr << "cannot write '" << csv_path.string() << "'\n";
    return kExitError;
  }
  csv << "n,c,slope_kind,space,statistic,reject_rate,mc_se,mean_J,reps,seed\n";

  try {
    for (const Eigen::Index n : grid.n) {
      for (const double c : grid.c) {
        for (const SlopeKind kind : grid.slope_kinds) {
          for (const Space space : grid.spaces) {
            ExperimentConfig cfg = grid.base;
            cfg.n = n;
            cfg.c = c;
            cfg.slope_kind = kind;
            cfg.space = space;
            const ExperimentResult result = run_experiment(cfg, args.threads);
            const std::string prefix = std::to_string(n) + "," + format_double(c) + "," +
                                       slope_kind_name(kind) + "," + space_name(space) + ",";
            const std::string suffix = "," + format_double(result.mean_selected_J) + "," +
                                       std::to_string(cfg.reps) + "," + std::to_string(cfg.seed);
            csv << prefix << "s_sq," << format_double(result.reject_rate_sq) << ","
                << format_double(result.mc_se_sq) << suffix << "\n";
            csv << prefix << "s_sup," << format_double(result.reject_rate_sup) << ","
                << format_double(result.mc_se_sup) << suffix << "\n";
            std::cout << "n=" << n << " c=" << c << " slope=" << slope_kind_name(kind)
                      << " space=" << space_name(space)
                      << "  reject_sq=" << result.reject_rate_sq
                      << " reject_sup=" << result.reject_rate_sup
                      << " mean_J=" << result.mean_selected_J;
            if (result.n_failed > 0) std::cout << " failed_reps=" << result.n_failed;
            std::cout << "\n" << std::flush;
          }
        }
      }
    }
  } catch (const ExcessiveFailureError& err) {
    std::cerr << "aborted: " << err.what() << "\n";
    return kExitDataFailure;
  }
  std::cout << "wrote " << csv_path.string() << "\n";
  return kExitOk;
}

int cmd_test(const TestArgs& args) {
  std::optional<Dataset> parsed;
  try {
    parsed.emplace(read_dataset_csv(args.data_path));
  } catch (const CsvFormatError& err) {
    std::cerr << "csv error in '" << args.data_path.string() << "': " << err.what() << "\n";
    return kExitBadInput;
  }
  const Dataset& data = *parsed;

  std::error_code ec;
  std::filesystem::create_directories(args.output_dir, ec);
  write_manifest(args.output_dir, "test",
                 json{{"data_path", args.data_path.string()},
                      {"n", data.size()},
                      {"m", data.grid_size()},
                      {"alpha", args.alpha},
                      {"B", args.bootstrap},
                      {"space", space_name(args.space)},
                      {"fve_threshold", args.fve_threshold},
                      {"j_max", args.j_max},
                      {"seed", args.seed}});

  std::optional<TestOutcome> maybe_outcome;
  std::shared_ptr<const EigenSystem> es;
  try {
    es = std::make_shared<const EigenSystem>(
        eigen_decompose(sample_covariance(data.x, args.space)));
    maybe_outcome.emplace(significance_test(data, args.alpha, args.bootstrap, args.space,
                                            FveConfig{args.fve_threshold, args.j_max},
                                            args.seed, args.threads));
  } catch (const DegenerateDataError& err) {
    std::cerr << "degenerate data: " << err.what() << "\n";
    return kExitDataFailure;
  }
  const TestOutcome& outcome = *maybe_outcome;

  // eigenvalue / FVE table up to j_max (or the available count)
  const Eigen::VectorXd& eigenvalues = es->eigenvalues();
  const double total = eigenvalues.sum();
  const Eigen::Index table_size = std::min<Eigen::Index>(args.j_max, eigenvalues.size());
  json fve_table = json::array();
  double cumulative = 0.0;
  for (Eigen::Index j = 0; j < table_size; ++j) {
    cumulative += eigenvalues[j];
    fve_table.push_back(json{{"j", j + 1},
                             {"eigenvalue", eigenvalues[j]},
                             {"fve", total > 0.0 ? cumulative / total : 0.0}});
  }

  const json document{
      {"tool_version", kToolVersion},
      {"n", data.size()},
      {"m", data.grid_size()},
      {"alpha", args.alpha},
      {"B", args.bootstrap},
      {"space", space_name(args.space)},
      {"fve_threshold", args.fve_threshold},
      {"j_max", args.j_max},
      {"seed", args.seed},
      {"selected_J", outcome.J},
      {"s_sq", outcome.observed.s_sq},
      {"s_sup", outcome.observed.s_sup},
      {"p_sq", outcome.p_sq},
      {"p_sup", outcome.p_sup},
      {"reject_sq", outcome.reject_sq},
      {"reject_sup", outcome.reject_sup},
      {"eigenvalues", fve_table},
  };
  const std::filesystem::path result_path = args.output_dir / "test_result.json";
  std::ofstream out(result_path);
  out << document.dump(2) << "\n";

  std::printf("J=%lld  p_sq=%.4g (reject=%s)  p_sup=%.4g (reject=%s)  alpha=%g\n",
              static_cast<long long>(outcome.J), outcome.p_sq,
              outcome.reject_sq ? "yes" : "no", outcome.p_sup,
              outcome.reject_sup ? "yes" : "no", args.alpha);
  return kExitOk;
}

int cmd_validate(const ValidateArgs& args) {
  std::error_code ec;
  std::filesystem::create_directories(args.output_dir, ec);
  write_manifest(args.output_dir, "validate",
                 json{{"quick", args.quick}, {"seed", args.seed}});

  ValidationOptions options;
  options.seed = args.seed;
  options.quick = args.quick;
  const std::vector<ValidationCheck> checks = run_validation_suite(options);

  json report_checks = json::array();
  int failed = 0;
  for (const ValidationCheck& check : checks) {
    report_checks.push_back(json{{"name", check.name},
                                 {"passed", check.passed},
                                 {"value", check.value},
                                 {"detail", check.detail}});
    if (!check.passed) ++failed;
    std::printf("%-36s %s  (%.6g)\n", check.name.c_str(), check.passed ? "pass" : "FAIL",
                check.value);
  }
  const json report{{"tool_version", kToolVersion},
                    {"timestamp", utc_timestamp()},
                    {"seed", args.seed},
                    {"quick", args.quick},
                    {"n_checks", checks.size()},
                    {"n_failed", failed},
                    {"checks", report_checks}};
  std::ofstream out(args.output_dir / "validation_report.json");
  out << report.dump(2) << "\n";

  if (failed > 0) {
    std::cerr << failed << " validation check(s) failed\n";
    return kExitChecksFailed;
  }
  std::cout << "all " << checks.size() << " checks passed\n";
  return kExitOk;
}

}  // namespace fpcr::cli
