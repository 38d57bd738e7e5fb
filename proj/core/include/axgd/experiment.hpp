#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "axgd/config.hpp"
#include "axgd/gap_certificate.hpp"
#include "axgd/instances.hpp"
#include "axgd/mirror_maps.hpp"
#include "axgd/schedules.hpp"

namespace axgd {

// One CSV row. exact_gap is NaN without a reference optimum, E_k is NaN at
// k = 1.
struct CsvRow {
  std::string method;
  double eps_eta = 0.0;
  int seed = 0;  // seed index within the cell's noise level
  long k = 0;
  double a_k = 0.0;
  double A_k = 0.0;
  double f_upper = 0.0;
  double exact_gap = 0.0;
  double approx_gap = 0.0;
  double lower_bound = 0.0;
  double E_k = 0.0;
  long grad_queries = 0;
  long long wall_time_ns = 0;
};

struct CellRecord {
  Method method = Method::kAxgd;
  std::size_t eps_index = 0;
  double eps_eta = 0.0;
  int seed_index = 0;
  std::uint64_t cell_seed = 0;
  std::vector<CsvRow> rows;
  std::optional<std::string> error;  // numeric failure; rows stop there
};

struct ExperimentResult {
  std::vector<CellRecord> cells;  // ordered by (method, eps index, seed index)

  long failed_cells() const;
};

// Everything a cell needs, resolved once per experiment.
struct PreparedProblem {
  ProblemInstance instance;
  ProxSetup setup;
  StepSchedule schedule;
  Vector x0;
  GapMode gap_mode;
  std::optional<double> smoothness;  // for AGD/GD
};

/// base_seed xor a hash of (method name, eps index, seed index). Depends on
/// the method by name, so dropping a method leaves the others' seeds alone.
std::uint64_t derive_cell_seed(std::uint64_t base_seed, Method method,
                               std::size_t eps_index, int seed_index);

/// Default start: the simplex barycenter, the projection of 0 onto a box,
/// or 0.
Vector default_initial_point(const Domain& domain, int n);

/// Builds the instance, mirror setup, schedule and gap mode described by a
/// config. Throws UsageError when a needed constant cannot be resolved.
PreparedProblem prepare_problem(const ExperimentConfig& config);

/// Runs one cell. Numeric failures are caught and stored in the record.
CellRecord run_cell(const PreparedProblem& problem, const ExperimentConfig& config,
                    Method method, std::size_t eps_index, int seed_index);

/// All (method x epsilon x seed) cells. threads = 0 means one per core.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                unsigned threads = 1);

enum class Preset { kFig1, kFig2 };

Preset preset_from_string(const std::string& name);

struct PresetRun {
  std::string name;  // file stem, e.g. "fig1_simplex"
  ExperimentConfig config;
  // Write one CSV per noise level (<name>_eps<value>.csv) instead of one.
  bool split_by_noise = false;
};

/// The default configurations behind a figure: fig1 runs the noiseless
/// unconstrained (drift) and simplex panels, fig2 the noise sweep on both
/// domains.
std::vector<PresetRun> preset_runs(Preset preset);

struct ReproReport {
  std::vector<std::string> files;
  std::vector<std::pair<std::string, ExperimentResult>> runs;
  long failed_cells = 0;
};

/// Runs a preset and writes its panel CSVs plus <name>_summary.json per run
/// into out_dir (created if missing).
ReproReport reproduce_figures(Preset preset, const std::string& out_dir,
                              unsigned threads = 1,
                              std::optional<std::uint64_t> base_seed = std::nullopt);

}  // namespace axgd
