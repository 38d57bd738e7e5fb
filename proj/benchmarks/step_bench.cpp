#include <benchmark/benchmark.h>

#include "axgd/gap_certificate.hpp"
#include "axgd/instances.hpp"
#include "axgd/mirror_maps.hpp"
#include "axgd/schedules.hpp"
#include "axgd/solvers.hpp"

namespace {

struct Fixture {
  axgd::ProblemInstance instance;
  axgd::ProxSetup setup;
  axgd::StepSchedule schedule = axgd::smooth_schedule(4.0, 4.0);
  axgd::Vector x0;
};

Fixture Simplex(int n) {
  return {axgd::cycle_quadratic_instance(n, axgd::Domain::simplex(),
                                         axgd::UnconstrainedMode::kDrift),
          axgd::entropy_simplex_setup(4.0), axgd::smooth_schedule(4.0, 4.0),
          axgd::Vector::Constant(n, 1.0 / n)};
}

Fixture Unconstrained(int n) {
  return {axgd::cycle_quadratic_instance(n, axgd::Domain::unconstrained(),
                                         axgd::UnconstrainedMode::kRegularized),
          axgd::euclidean_setup(4.0), axgd::smooth_schedule(4.0, 4.0),
          axgd::Vector::Zero(n)};
}

void BM_AxgdStepSimplex(benchmark::State& state) {
  const Fixture f = Simplex(static_cast<int>(state.range(0)));
  axgd::SolverState s = axgd::init_state(f.x0, f.setup);
  for (auto _ : state) {
    s = axgd::axgd_step(s, f.instance.oracle, f.setup, f.schedule).state;
    benchmark::DoNotOptimize(s.x.data());
  }
}
BENCHMARK(BM_AxgdStepSimplex)->Arg(100)->Arg(1000);

void BM_AgdStepSimplex(benchmark::State& state) {
  const Fixture f = Simplex(static_cast<int>(state.range(0)));
  axgd::SolverState s = axgd::init_state(f.x0, f.setup);
  for (auto _ : state) {
    s = axgd::agd_step(s, f.instance.oracle, f.setup, f.schedule, 4.0).state;
    benchmark::DoNotOptimize(s.x.data());
  }
}
BENCHMARK(BM_AgdStepSimplex)->Arg(100)->Arg(1000);

void BM_AxgdStepUnconstrained(benchmark::State& state) {
  const Fixture f = Unconstrained(static_cast<int>(state.range(0)));
  axgd::SolverState s = axgd::init_state(f.x0, f.setup);
  for (auto _ : state) {
    s = axgd::axgd_step(s, f.instance.oracle, f.setup, f.schedule).state;
    benchmark::DoNotOptimize(s.x.data());
  }
}
BENCHMARK(BM_AxgdStepUnconstrained)->Arg(100)->Arg(1000);

void BM_ProjectSimplex(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const axgd::Vector y = axgd::Vector::LinSpaced(n, -1.0, 2.0);
  for (auto _ : state) {
    axgd::Vector p = axgd::project_simplex(y);
    benchmark::DoNotOptimize(p.data());
  }
}
BENCHMARK(BM_ProjectSimplex)->Arg(100)->Arg(10000);

// Full run with the certificate monitor attached, as bench_cli does it.
void BM_MonitoredRun(benchmark::State& state) {
  const Fixture f = Simplex(100);
  const auto& ref = *f.instance.reference;
  for (auto _ : state) {
    axgd::GapMonitor monitor(f.setup, f.x0,
                             axgd::GapMode::oracle_optimum(ref.point, ref.value));
    double last = 0.0;
    axgd::RunOptions options;
    options.keep_records = false;
    axgd::run(axgd::Method::kAxgd, f.instance.oracle, f.setup, f.schedule, f.x0,
              state.range(0),
              [&](const axgd::IterationRecord& r) { last = monitor.observe(r).gap; },
              options);
    benchmark::DoNotOptimize(last);
  }
}
BENCHMARK(BM_MonitoredRun)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
