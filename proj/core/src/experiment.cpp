#include "axgd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <thread>

#include "axgd/error.hpp"
#include "axgd/oracle.hpp"
#include "axgd/output.hpp"
#include "axgd/random.hpp"
#include "axgd/solvers.hpp"

namespace axgd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double DomainDiameter(const Domain& domain, int n) {
  switch (domain.kind) {
    case DomainKind::kSimplex:
      return std::sqrt(2.0);
    case DomainKind::kBox:
      return (domain.upper - domain.lower) * std::sqrt(static_cast<double>(n));
    case DomainKind::kUnconstrained:
      break;
  }
  throw UsageError("hoelder schedule on an unbounded domain needs D");
}

ProblemInstance BuildInstance(const ExperimentConfig& c) {
  const auto& p = c.problem;
  switch (p.kind) {
    case ProblemKind::kCycleQuadratic: {
      UnconstrainedMode mode = UnconstrainedMode::kDrift;
      if (p.unconstrained == UnconstrainedChoice::kRegularized) {
        mode = UnconstrainedMode::kRegularized;
      } else if (p.unconstrained == UnconstrainedChoice::kAuto) {
        for (double e : c.noise.epsilon_eta) {
          if (e > 0.0) mode = UnconstrainedMode::kRegularized;
        }
      }
      return cycle_quadratic_instance(p.n, c.domain, mode);
    }
    case ProblemKind::kCustomQuadratic:
      return random_quadratic_instance(p.n, p.smoothness, p.seed, c.domain);
    case ProblemKind::kLipschitzNorm:
      return lipschitz_norm_instance(p.n, p.lipschitz, p.seed, c.domain);
    case ProblemKind::kHolderPower:
      return holder_power_instance(p.n, p.nu, c.domain);
  }
  throw UsageError("unknown problem kind");
}

template <typename T>
T Require(const std::optional<T>& explicit_value, const std::optional<T>& fallback,
          const char* what) {
  if (explicit_value) return *explicit_value;
  if (fallback) return *fallback;
  throw UsageError(std::string("schedule needs ") + what +
                   "; set it in the config (the instance does not provide it)");
}

}  // namespace

long ExperimentResult::failed_cells() const {
  return std::count_if(cells.begin(), cells.end(),
                       [](const CellRecord& c) { return c.error.has_value(); });
}

std::uint64_t derive_cell_seed(std::uint64_t base_seed, Method method,
                               std::size_t eps_index, int seed_index) {
  std::uint64_t h = fnv1a64(to_string(method));
  h = splitmix64(h ^ static_cast<std::uint64_t>(eps_index));
  h = splitmix64(h ^ static_cast<std::uint64_t>(seed_index));
  return base_seed ^ h;
}

Vector default_initial_point(const Domain& domain, int n) {
  switch (domain.kind) {
    case DomainKind::kSimplex:
      return Vector::Constant(n, 1.0 / n);
    case DomainKind::kBox:
      return project(domain, Vector::Zero(n));
    case DomainKind::kUnconstrained:
      break;
  }
  return Vector::Zero(n);
}

PreparedProblem prepare_problem(const ExperimentConfig& c) {
  if (auto violations = validate(c); !violations.empty()) {
    throw ConfigError(std::move(violations));
  }
  ProblemInstance instance = BuildInstance(c);
  ProxSetup setup(c.geometry, c.schedule.sigma, c.domain);
  Vector x0 = default_initial_point(c.domain, c.problem.n);
  const SmoothnessInfo& info = instance.oracle.info();
  const auto& s = c.schedule;

  std::optional<double> reference_distance;
  if (instance.reference) {
    reference_distance = bregman(setup, instance.reference->point, x0);
  }

  std::optional<StepSchedule> schedule;
  switch (s.kind) {
    case ScheduleKind::kSmooth:
      schedule = smooth_schedule(s.sigma, Require(s.smoothness, info.smoothness, "L"));
      break;
    case ScheduleKind::kHoelder: {
      const double nu = Require(s.holder_exponent, info.holder_exponent, "schedule_nu");
      const double l_nu = Require(s.holder_constant, info.holder_constant, "L_nu");
      const double d = s.diameter ? *s.diameter : DomainDiameter(c.domain, c.problem.n);
      schedule = hoelder_schedule(s.sigma, l_nu, nu, d, s.c_override);
      break;
    }
    case ScheduleKind::kLipschitz:
      schedule = lipschitz_schedule(
          s.sigma, Require(s.smoothness, info.lipschitz, "L (Lipschitz constant)"),
          Require(s.radius, reference_distance, "R"));
      break;
    case ScheduleKind::kCustom:
      throw UsageError("custom schedules cannot be configured from text");
  }

  GapMode mode;
  if (c.gap_mode == GapModeKind::kRadiusBound) {
    mode = GapMode::radius_bound(c.gap_radius);
  } else {
    if (!instance.reference) {
      throw UsageError("oracle-optimum gap mode needs a reference optimum");
    }
    mode = GapMode::oracle_optimum(instance.reference->point,
                                   instance.reference->value);
  }

  std::optional<double> smoothness = s.smoothness;
  if (!smoothness || s.kind == ScheduleKind::kLipschitz) smoothness = info.smoothness;

  return PreparedProblem{std::move(instance), std::move(setup), std::move(*schedule),
                         std::move(x0), std::move(mode), smoothness};
}

CellRecord run_cell(const PreparedProblem& problem, const ExperimentConfig& config,
                    Method method, std::size_t eps_index, int seed_index) {
  CellRecord cell;
  cell.method = method;
  cell.eps_index = eps_index;
  cell.eps_eta = config.noise.epsilon_eta.at(eps_index);
  cell.seed_index = seed_index;
  cell.cell_seed =
      derive_cell_seed(config.noise.base_seed, method, eps_index, seed_index);

  const FunctionOracle oracle =
      wrap_noisy(problem.instance.oracle, {cell.eps_eta, cell.cell_seed});
  const auto& reference = problem.instance.reference;
  GapMonitor monitor(problem.setup, problem.x0, problem.gap_mode,
                     reference ? std::optional<double>(reference->value)
                               : std::nullopt);
  const std::string name = to_string(method);

  RunOptions options;
  options.smoothness = problem.smoothness;
  options.inner_tol = config.inner_tol;
  options.max_inner = config.max_inner;
  options.record_wall_time = config.output.record_wall_time;
  options.keep_records = false;

  cell.rows.reserve(static_cast<std::size_t>(config.steps));
  auto observer = [&](const IterationRecord& rec) {
    const double exact_value =
        reference ? eval_value(problem.instance.gap_objective, rec.upper_point) : kNaN;
    // In drift mode the run's objective is unbounded below; the certificate
    // is built on the gap objective at the same points instead.
    IterationRecord shifted;
    const IterationRecord* seen = &rec;
    if (problem.instance.separate_gap_objective) {
      const FunctionOracle& h = problem.instance.gap_objective;
      shifted = rec;
      shifted.hyperplane_value = eval_value(h, rec.hyperplane_point);
      // Keep whatever noise the run saw: add the exact difference of the two
      // gradients to the gradient the solver used.
      shifted.gradient =
          rec.gradient + (eval_gradient(h, rec.hyperplane_point) -
                          eval_gradient(problem.instance.oracle, rec.hyperplane_point));
      shifted.upper_value = eval_value(h, rec.upper_point);
      shifted.z_prev.resize(0);
      shifted.z_next.resize(0);
      shifted.gradient_hat.resize(0);
      seen = &shifted;
    }
    const GapRow g = monitor.observe(*seen, exact_value);
    if (!std::isfinite(g.lower) || !std::isfinite(g.gap)) {
      throw NumericDomainError("non-finite duality-gap certificate", rec.k);
    }
    CsvRow row;
    row.method = name;
    row.eps_eta = cell.eps_eta;
    row.seed = seed_index;
    row.k = rec.k;
    row.a_k = rec.a;
    row.A_k = rec.A;
    row.f_upper = g.upper;
    row.exact_gap = reference ? exact_value - reference->value : kNaN;
    row.approx_gap = g.gap;
    row.lower_bound = g.lower;
    row.E_k = g.error;
    row.grad_queries = rec.grad_queries;
    row.wall_time_ns = rec.wall_time_ns;
    cell.rows.push_back(std::move(row));
  };

  try {
    run(method, oracle, problem.setup, problem.schedule, problem.x0, config.steps,
        observer, options);
  } catch (const NumericDomainError& e) {
    cell.error = e.what();
  }
  return cell;
}

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads) {
  const PreparedProblem problem = prepare_problem(config);

  struct Job {
    Method method;
    std::size_t eps_index;
    int seed_index;
  };
  std::vector<Job> jobs;
  for (Method m : config.methods) {
    for (std::size_t e = 0; e < config.noise.epsilon_eta.size(); ++e) {
      for (int s = 0; s < config.noise.num_seeds; ++s) jobs.push_back({m, e, s});
    }
  }

  ExperimentResult result;
  result.cells.resize(jobs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));

  // Each worker writes only its own slots, so output order is fixed.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& j = jobs[i];
      result.cells[i] = run_cell(problem, config, j.method, j.eps_index, j.seed_index);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return result;
}

Preset preset_from_string(const std::string& name) {
  if (name == "fig1") return Preset::kFig1;
  if (name == "fig2") return Preset::kFig2;
  throw UsageError("unknown preset '" + name + "' (expected fig1 or fig2)");
}

std::vector<PresetRun> preset_runs(Preset preset) {
  ExperimentConfig base;
  base.problem.kind = ProblemKind::kCycleQuadratic;
  base.problem.n = 100;
  base.schedule.kind = ScheduleKind::kSmooth;
  base.schedule.sigma = 4.0;
  base.schedule.smoothness = 4.0;
  base.steps = 1000;
  base.methods = {Method::kAxgd, Method::kAgd, Method::kGd};

  ExperimentConfig unconstrained = base;
  unconstrained.domain = Domain::unconstrained();
  unconstrained.geometry = Geometry::kEuclidean;
  ExperimentConfig simplex = base;
  simplex.domain = Domain::simplex();
  simplex.geometry = Geometry::kEntropy;

  if (preset == Preset::kFig1) {
    unconstrained.problem.unconstrained = UnconstrainedChoice::kDrift;
    return {{"fig1_unconstrained", unconstrained, false},
            {"fig1_simplex", simplex, false}};
  }
  for (ExperimentConfig* c : {&unconstrained, &simplex}) {
    c->noise.epsilon_eta = {1e-1, 1e-2, 1e-3};
    c->noise.num_seeds = 20;
  }
  unconstrained.problem.unconstrained = UnconstrainedChoice::kRegularized;
  return {{"fig2_unconstrained", unconstrained, true},
          {"fig2_simplex", simplex, true}};
}

ReproReport reproduce_figures(Preset preset, const std::string& out_dir,
                              unsigned threads,
                              std::optional<std::uint64_t> base_seed) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError(out_dir, "cannot create directory: " + ec.message());
  const std::filesystem::path dir(out_dir);

  ReproReport report;
  for (PresetRun& r : preset_runs(preset)) {
    if (base_seed) r.config.noise.base_seed = *base_seed;
    ExperimentResult result = run_experiment(r.config, threads);
    report.failed_cells += result.failed_cells();

    if (r.split_by_noise) {
      for (std::size_t e = 0; e < r.config.noise.epsilon_eta.size(); ++e) {
        std::vector<CellRecord> panel;
        for (const auto& cell : result.cells) {
          if (cell.eps_index == e) panel.push_back(cell);
        }
        char eps[32];
        std::snprintf(eps, sizeof eps, "%g", r.config.noise.epsilon_eta[e]);
        const std::string file = (dir / (r.name + "_eps" + eps + ".csv")).string();
        emit_csv(panel, file);
        report.files.push_back(file);
      }
    } else {
      const std::string file = (dir / (r.name + ".csv")).string();
      emit_csv(result.cells, file);
      report.files.push_back(file);
    }
    const std::string json = (dir / (r.name + "_summary.json")).string();
    emit_json(summarize(result.cells), json);
    report.files.push_back(json);
    report.runs.emplace_back(r.name, std::move(result));
  }
  return report;
}

}  // namespace axgd
