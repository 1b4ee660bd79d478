// slweno: preset runs and convergence studies for the SL WENO Vlasov solver.
//
//   slweno run <preset> [--override k=v ...] [--config file] [--workers n] [--output-dir d]
//   slweno converge <preset> --meshes 40,80,160,320 [--cfl c] [--limiter on|off]
//   slweno list-presets
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "slweno/config.hpp"
#include "slweno/convergence.hpp"
#include "slweno/errors.hpp"
#include "slweno/presets.hpp"
#include "slweno/series_io.hpp"
#include "slweno/vlasov_driver.hpp"

namespace fs = std::filesystem;
using namespace slweno;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string default_output_dir(const RunConfig& c) {
  if (!c.output_dir.empty()) return c.output_dir;
  if (const char* env = std::getenv("SLWENO_OUTPUT_DIR")) return (fs::path(env) / c.preset).string();
  return (fs::path("out") / c.preset).string();
}

std::string snapshot_name(const std::string& species, double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_%s_t%.6f.dat", species.c_str(), t);
  return buf;
}

int do_run(RunConfig cfg, int workers) {
  const fs::path dir = default_output_dir(cfg);
  fs::create_directories(dir);
  {
    std::ofstream m(dir / "manifest.cfg");
    m << manifest(cfg);
    if (!m) throw std::runtime_error("cannot write " + (dir / "manifest.cfg").string());
  }
  auto sim = make_simulation(cfg);
  VlasovDriver driver(sim.model, sim.options, sim.state.grid, workers);
  std::vector<std::string> names;
  for (const auto& sp : sim.state.species) names.push_back(sp.name);
  const bool two = sim.state.species.size() == 2;
  std::ofstream series(dir / "series.csv");
  if (!series) throw std::runtime_error("cannot write " + (dir / "series.csv").string());
  SeriesWriter writer(series, names, two);
  DiagnosticsRecord first, last;
  RunObserver obs;
  obs.on_record = [&](const DiagnosticsRecord& r) {
    for (double x : {r.l1, r.l2, r.total_energy, r.e_l2, r.f_min, r.f_max})
      if (!std::isfinite(x)) throw NonFiniteState("non-finite diagnostic at t = " + std::to_string(r.t));
    if (writer.rows() == 0) first = r;
    writer.write(r);
    last = r;
  };
  obs.on_snapshot = [&](const SimState& s) {
    for (const auto& sp : s.species)
      write_snapshot((dir / snapshot_name(sp.name, s.t)).string(), s.grid, sp.f, s.t);
  };
  SimState& state = sim.state;
  try {
    const auto res = run(state, driver, run_settings(cfg), obs);
    std::printf("%s: %lld steps to t = %.6g, rel L1 drift %.3e, f_min %.3e, output %s\n",
                cfg.preset.c_str(), res.steps, state.t, relative_deviation(last.l1, first.l1),
                last.f_min, dir.string().c_str());
  } catch (const std::exception&) {
    // Leave the state at the point of failure for inspection.
    for (const auto& sp : state.species)
      write_snapshot((dir / ("failure_" + sp.name + ".dat")).string(), state.grid, sp.f, state.t);
    throw;
  }
  return 0;
}

int do_converge(RunConfig cfg, const std::vector<int>& meshes, int workers) {
  const auto rows = convergence_study(cfg, meshes, workers);
  const fs::path dir = default_output_dir(cfg);
  fs::create_directories(dir);
  std::ofstream csv(dir / "convergence.csv");
  csv << "n,l1_error,l1_order,linf_error,linf_order,f_min\n";
  std::printf("%6s %12s %8s %12s %8s %12s\n", "N", "L1 error", "order", "Linf error", "order",
              "f_min");
  for (const auto& r : rows) {
    char line[256];
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.n, r.l1, r.l1_order,
                  r.linf, r.linf_order, r.f_min);
    csv << line;
    std::printf("%6d %12.3e %8.2f %12.3e %8.2f %12.3e\n", r.n, r.l1, r.l1_order, r.linf,
                r.linf_order, r.f_min);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-Lagrangian WENO Vlasov solver with MPP flux limiter"};
  app.require_subcommand(1);

  std::string run_preset, config_file, output_dir;
  std::vector<std::string> overrides;
  int workers = 1;
  auto* run_cmd = app.add_subcommand("run", "Run a preset and write series, snapshots and manifest");
  run_cmd->add_option("preset", run_preset, "Preset name (omit when using --config)");
  run_cmd->add_option("--override,-o", overrides, "key=value override (repeatable)");
  run_cmd->add_option("--config", config_file, "Config or manifest file");
  run_cmd->add_option("--workers,-j", workers, "Worker threads")->check(CLI::PositiveNumber);
  run_cmd->add_option("--output-dir", output_dir, "Output directory");

  std::string conv_preset, meshes_arg = "40,80,160,320", limiter_arg;
  double conv_cfl = 0.0;
  auto* conv_cmd = app.add_subcommand("converge", "Mesh-doubling accuracy study");
  conv_cmd->add_option("preset", conv_preset, "Preset name")->required();
  conv_cmd->add_option("--meshes", meshes_arg, "Comma-separated doubling mesh list");
  conv_cmd->add_option("--cfl", conv_cfl, "CFL number");
  conv_cmd->add_option("--limiter", limiter_arg, "on|off");
  conv_cmd->add_option("--override,-o", overrides, "key=value override (repeatable)");
  conv_cmd->add_option("--workers,-j", workers, "Worker threads")->check(CLI::PositiveNumber);
  conv_cmd->add_option("--output-dir", output_dir, "Output directory");

  auto* list_cmd = app.add_subcommand("list-presets", "List preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& n : preset_names()) std::printf("%s\n", n.c_str());
      return 0;
    }
    if (run_cmd->parsed()) {
      RunConfig cfg;
      if (!config_file.empty()) {
        std::ifstream in(config_file);
        if (!in) throw ConfigError("cannot open config file " + config_file);
        cfg = parse_config(in);
        if (!run_preset.empty() && run_preset != cfg.preset)
          throw ConfigError("preset argument '" + run_preset + "' does not match config section '" +
                            cfg.preset + "'");
      } else {
        if (run_preset.empty()) throw ConfigError("run needs a preset name or --config");
        cfg = preset(run_preset);
      }
      for (const auto& o : overrides) apply_override(cfg, o);
      if (!output_dir.empty()) apply_override(cfg, "output_dir", output_dir);
      return do_run(cfg, workers);
    }
    if (conv_cmd->parsed()) {
      RunConfig cfg = preset(conv_preset);
      for (const auto& o : overrides) apply_override(cfg, o);
      if (conv_cfl > 0.0) apply_override(cfg, "cfl", detail::fmt(conv_cfl));
      if (!limiter_arg.empty()) apply_override(cfg, "limiter", limiter_arg);
      if (!output_dir.empty()) apply_override(cfg, "output_dir", output_dir);
      std::vector<int> meshes;
      for (const double m : detail::parse_list("meshes", meshes_arg)) {
        if (m != std::floor(m) || m < kMinCells) throw ConfigError("invalid mesh size in --meshes");
        meshes.push_back(static_cast<int>(m));
      }
      return do_converge(cfg, meshes, workers);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const GridError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const MonotoneViolation& e) {
    std::fprintf(stderr, "numerical error: %s (gamma = %.3e)\n", e.what(), e.gamma());
    return kExitNumerical;
  } catch (const NonFiniteState& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const NonNeutral& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const DegenerateDensity& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
