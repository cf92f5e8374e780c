#pragma once
// nkcurves front end: experiment configs, subcommands and JSON reports.
//
// Exit codes: 0 all checks pass, 1 checks ran and a tolerance failed,
// 2 usage or config error, 3 numerical failure (stall, degenerate mesh).

#include "nkc/io.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nkc {

enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitNumerical = 3 };

inline constexpr int kReportSchemaVersion = 1;
/// Environment variable naming the default output directory.
inline constexpr const char* kOutEnv = "NKCURVES_OUT";

struct BackgroundSpec {
  std::string name = "s6";      ///< s6 | s3s3 | torus
  double a = 1.0;               ///< s3s3 metric scale
  double b = -0.5;              ///< s3s3 mixing coefficient
  std::string field = "sin(x5)";  ///< torus conformal factor exponent
};

struct ExperimentConfig {
  std::string command = "verify-structure";
  BackgroundSpec background;
  int resolution = 3;            ///< icosphere level; torus grids use 2^(resolution+1) cells per side
  int steps = 20;                ///< family time steps
  std::uint64_t seed = 1;
  int samples = 100;             ///< sample points for verify-structure
  std::map<std::string, double> tolerances = default_tolerances();
  std::string out = ".";
  std::string family = "g2-orbit";  ///< g2-orbit | g2-drive | perturbed | subtorus
  double magnitude = 1e-2;       ///< RMS size of a perturbed drive per step
  double angle = 1.0;            ///< G2 path angle
  std::array<int, 3> triple{1, 2, 3};     ///< seed sphere spans (e_i, e_j, e_k)
  std::array<int, 3> triple_b{1, 4, 5};   ///< second sphere for hausdorff
  double b_lo = -0.95;
  double b_hi = 0.95;
  std::string quadrature = "degree2";  ///< centroid | degree2
  std::vector<std::string> meshes;     ///< optional mesh files (curve-volume: 1, hausdorff: 2)

  static std::map<std::string, double> default_tolerances();
};

Json config_to_json(const ExperimentConfig& c);
/// Missing keys take their defaults; unknown keys and bad values raise PreconditionError.
ExperimentConfig config_from_json(const Json& j);

struct CommandResult {
  int exit_code = kExitPass;
  Json report;                          ///< written to <out>/<command>.json
  std::map<std::string, std::string> extra_files;  ///< file name → content
};

/// Runs one subcommand; never writes files.  Throws nkc::Error subclasses on bad input.
CommandResult run_command(const ExperimentConfig& config, const std::string& timestamp);

/// Full CLI: parses argv, runs, writes the report and returns the exit code.
int run_cli(int argc, char** argv);

}  // namespace nkc
