#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "axgd/instances.hpp"
#include "axgd/mirror_maps.hpp"
#include "axgd/schedules.hpp"
#include "axgd/solvers.hpp"

namespace axgd {

enum class ProblemKind { kCycleQuadratic, kCustomQuadratic, kLipschitzNorm, kHolderPower };

std::string to_string(ProblemKind kind);

enum class GapModeKind { kOracleOptimum, kRadiusBound };

// Unconstrained cycle instances: drift when every epsilon is zero,
// regularized otherwise.
enum class UnconstrainedChoice { kAuto, kDrift, kRegularized };

struct ProblemConfig {
  ProblemKind kind = ProblemKind::kCycleQuadratic;
  int n = 100;
  double nu = 1.0;             // holder-power exponent
  double smoothness = 4.0;     // custom-quadratic lambda_max
  double lipschitz = 1.0;      // lipschitz-norm constant
  std::uint64_t seed = 0;      // instance seed (custom-quadratic, lipschitz-norm)
  UnconstrainedChoice unconstrained = UnconstrainedChoice::kAuto;
};

struct ScheduleConfig {
  ScheduleKind kind = ScheduleKind::kSmooth;
  double sigma = 1.0;
  // Missing constants fall back to the oracle's metadata or the instance.
  std::optional<double> smoothness;
  std::optional<double> holder_exponent;
  std::optional<double> holder_constant;
  std::optional<double> diameter;
  std::optional<double> c_override;
  std::optional<double> radius;
};

struct NoiseConfig {
  std::vector<double> epsilon_eta{0.0};
  int num_seeds = 1;
  std::uint64_t base_seed = 0;
};

struct OutputConfig {
  std::string csv = "run.csv";      // relative to the output directory
  std::string json = "summary.json";
  bool write_csv = true;
  bool write_json = true;
  bool record_wall_time = false;
};

struct ExperimentConfig {
  ProblemConfig problem;
  Domain domain = Domain::simplex();
  Geometry geometry = Geometry::kEntropy;
  std::vector<Method> methods{Method::kAxgd, Method::kAgd, Method::kGd};
  ScheduleConfig schedule;
  long steps = 1000;
  NoiseConfig noise;
  GapModeKind gap_mode = GapModeKind::kOracleOptimum;
  double gap_radius = 0.0;
  double inner_tol = 1e-12;
  int max_inner = 50;
  OutputConfig output;
};

/// Parses the flat `key = value` format: one pair per line, `#` starts a
/// comment, lists are comma-separated. Throws ConfigError listing every
/// unknown key, malformed value and violated constraint.
ExperimentConfig parse_config(const std::string& text);

/// Reads and parses a file. Throws IoError if it cannot be read.
ExperimentConfig load_config(const std::string& path);

/// Constraint violations of an assembled config (empty when valid).
std::vector<std::string> validate(const ExperimentConfig& config);

/// Config text that parse_config maps back to `config`.
std::string render_config(const ExperimentConfig& config);

}  // namespace axgd
