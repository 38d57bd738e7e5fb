// axgd_bench: run configured experiments and regenerate the figure data.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "axgd/config.hpp"
#include "axgd/error.hpp"
#include "axgd/experiment.hpp"
#include "axgd/output.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

void ReportFailures(const axgd::ExperimentResult& result) {
  for (const auto& cell : result.cells) {
    if (!cell.error) continue;
    std::cerr << "cell failed: method=" << axgd::to_string(cell.method)
              << " eps_eta=" << axgd::format_double(cell.eps_eta)
              << " seed=" << cell.seed_index << ": " << *cell.error << "\n";
  }
}

int RunCommand(const std::string& config_path, const std::string& out_dir,
               unsigned threads, std::optional<std::uint64_t> seed) {
  axgd::ExperimentConfig config = axgd::load_config(config_path);
  if (seed) config.noise.base_seed = *seed;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw axgd::IoError(out_dir, "cannot create directory: " + ec.message());

  for (double eps : config.noise.epsilon_eta) {
    if (eps > 0.0) {
      std::cerr << "note: with eps_eta > 0, approx_gap and lower_bound certify the "
                   "noisy linearizations the solver saw, not f itself\n";
      break;
    }
  }
  const axgd::ExperimentResult result = axgd::run_experiment(config, threads);
  const std::filesystem::path dir(out_dir);
  if (config.output.write_csv) {
    const std::string path = (dir / config.output.csv).string();
    axgd::emit_csv(result.cells, path);
    std::cout << "wrote " << path << "\n";
  }
  if (config.output.write_json) {
    const std::string path = (dir / config.output.json).string();
    axgd::emit_json(axgd::summarize(result.cells), path);
    std::cout << "wrote " << path << "\n";
  }
  ReportFailures(result);
  return result.failed_cells() > 0 ? kExitNumeric : 0;
}

int ReproCommand(const std::string& preset_name, std::string out_dir,
                 unsigned threads, std::optional<std::uint64_t> seed) {
  const axgd::Preset preset = axgd::preset_from_string(preset_name);
  if (out_dir.empty()) out_dir = "repro_" + preset_name;
  const auto start = std::chrono::steady_clock::now();
  const axgd::ReproReport report =
      axgd::reproduce_figures(preset, out_dir, threads, seed);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& f : report.files) std::cout << "wrote " << f << "\n";
  for (const auto& [name, result] : report.runs) ReportFailures(result);
  std::cout << "done in " << seconds << " s\n";
  return report.failed_cells > 0 ? kExitNumeric : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accelerated extra-gradient descent experiments"};
  app.require_subcommand(1);

  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  app.add_option("--threads", threads, "Worker threads (0 = one per core)");
  app.add_option("--seed", seed, "Override the config's base_seed");

  std::string config_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory")->default_val(".");

  std::string preset;
  std::string repro_out;
  auto* repro = app.add_subcommand("repro", "Regenerate figure data");
  repro->add_option("--preset", preset, "fig1 or fig2")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2"}));
  repro->add_option("--out", repro_out, "Output directory (default repro_<preset>)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a config without running");
  validate->add_option("--config", validate_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return RunCommand(config_path, out_dir, threads, seed);
    if (*repro) return ReproCommand(preset, repro_out, threads, seed);
    if (*validate) {
      axgd::load_config(validate_path);
      std::cout << validate_path << ": ok\n";
      return 0;
    }
  } catch (const axgd::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const axgd::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const axgd::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const axgd::NumericDomainError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
