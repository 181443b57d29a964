#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "htree/boundary.hpp"
#include "htree/tree_function.hpp"

namespace htree {

inline constexpr const char* kVersion = "1.0.0";

/// Exit-code contract shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
};

struct ExperimentConfig {
  int q = 2;
  std::uint64_t seed = 1;
  int depth = 4;
  int grid = 2048;
  int samples = 100;
  double p = 1;
  double r = 2;
  double alpha = 0;
  double z_re = 0;
  double z_im = 0;
  int support_radius = 3;
  /// Rows 0..nmax in the spherical table.
  int nmax = 12;
  /// B-coefficient indices and partial-sum length.
  std::vector<int> n_list{0, 1, 5};
  int terms = 20000;
  /// restriction: "theorem-a" | "theorem-b"; eigen: "roundtrip" | "characterize".
  std::string mode;
  std::string input;
  std::string out;
  bool check = false;
  /// Worker threads; never echoed, outputs are independent of it.
  int threads = 1;
};

struct CommandResult {
  int exit_code = kExitOk;
  /// Main output: CSV or JSON text.
  std::string output;
  /// JSON summary accompanying CSV output (restriction only).
  std::string summary;
};

/// Complex Gaussian values on B(o, radius); stream depends only on
/// (seed, stream_id).
TreeFunction random_tree_function(const TreeParams& tree, int radius,
                                  std::uint64_t seed, std::uint64_t stream_id);
CylinderFunction random_cylinder_function(const TreeParams& tree, int depth,
                                          std::uint64_t seed,
                                          std::uint64_t stream_id);

/// "# ..." comment lines: version, config, q and tau.
std::string csv_header(const std::string& command, const ExperimentConfig& config);

CommandResult cmd_spherical(const ExperimentConfig& config);
CommandResult cmd_restriction(const ExperimentConfig& config);
CommandResult cmd_eigen(const ExperimentConfig& config);
CommandResult cmd_bmn(const ExperimentConfig& config);
/// Calibration and inversion round trips; with `with_parseval` also the
/// Parseval identity on `samples` random pairs.
CommandResult cmd_plancherel(const ExperimentConfig& config, bool with_parseval);
/// CylinderFunction JSON (config.input) -> P_z F on B(o, support_radius).
CommandResult cmd_poisson(const ExperimentConfig& config);
/// TreeFunction JSON (config.input) -> f~(z, .).
CommandResult cmd_hft(const ExperimentConfig& config);
/// Grid, Plancherel weights and optionally transform values of config.input.
CommandResult cmd_sample(const ExperimentConfig& config);

}  // namespace htree
