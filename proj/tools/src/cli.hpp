#pragma once

#include <cstdint>
#include <filesystem>

#include "fpcr/simulation.hpp"

namespace fpcr::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes. Test decisions are data in the result document, never exit
// status.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;        // unexpected failure
inline constexpr int kExitBadInput = 2;     // config or CSV malformed
inline constexpr int kExitDataFailure = 3;  // degenerate data / too many failed replicates
inline constexpr int kExitChecksFailed = 4; // validation checks failed

struct SimulateArgs {
  std::filesystem::path config_path;
  std::filesystem::path output_dir;
  int threads = 1;
};

struct TestArgs {
  std::filesystem::path data_path;
  std::filesystem::path output_dir;
  double alpha = 0.05;
  Eigen::Index bootstrap = 1000;
  Space space = Space::L2;
  double fve_threshold = 0.75;
  Eigen::Index j_max = 20;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct ValidateArgs {
  std::filesystem::path output_dir;
  bool quick = false;
  std::uint64_t seed = 7161;
};

/// Run the scenario grid from a JSON config and write rejection_rates.csv
/// plus manifest.json into the output directory.
int cmd_simulate(const SimulateArgs& args);

/// Test one user dataset (CSV) for a zero slope and write test_result.json.
int cmd_test(const TestArgs& args);

/// Run the validation suite and write validation_report.json.
int cmd_validate(const ValidateArgs& args);

}  // namespace fpcr::cli
