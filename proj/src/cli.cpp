#include "qscat/cli.hpp"

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qscat/io.hpp"

namespace qscat {

namespace {

using nlohmann::ordered_json;

void write_echo(const RunConfig& config) {
  write_text_file(config.output.directory + "/config_echo.json", config.echo);
}

void write_trajectory(const RunConfig& config, const TrajectoryDataset& data) {
  if (config.output.format == "json") {
    write_text_file(config.output.directory + "/trajectory.json",
                    trajectory_to_json(data, config.run.model.n_sites));
  } else {
    write_text_file(config.output.directory + "/trajectory.csv",
                    trajectory_to_csv(data, config.run.model.n_sites));
  }
}

int guarded(const RunConfig& config, CommandKind kind, int (*body)(const RunConfig&)) {
  try {
    config.validate(kind);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    return body(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

int cmd_prepare(const RunConfig& config) {
  return guarded(config, CommandKind::Prepare, [](const RunConfig& cfg) {
    const PrepResult prep = prepare_scattering_state(cfg.run);
    write_echo(cfg);

    ordered_json metrics;
    metrics["variant"] = cfg.run.variant == PrepVariant::Exact ? "exact"
                         : cfg.run.variant == PrepVariant::Truncated ? "truncated"
                                                                     : "truncated_unitary";
    metrics["n_sites"] = cfg.run.model.n_sites;
    metrics["circuit_width"] = prep.circuit_width;
    metrics["cnot_depth"] = prep.circuit_cnot_depth;
    if (prep.packet_term_count >= 0) metrics["term_count"] = prep.packet_term_count;
    metrics["post_selection_probability"] = prep.post_selection_probability;
    metrics["state_norm"] = prep.state.norm();
    write_text_file(cfg.output.directory + "/metrics.json", metrics.dump(2) + "\n");
    write_state_dump(cfg.output.directory, prep.state, cfg.echo);
    std::cout << "prepared state written to " << cfg.output.directory << "\n";
    return kExitOk;
  });
}

int cmd_evolve(const RunConfig& config) {
  return guarded(config, CommandKind::Evolve, [](const RunConfig& cfg) {
    ScatteringRunResult result = run_scattering_experiment(cfg.run);
    result.trajectory.config_echo = cfg.echo;
    write_echo(cfg);
    write_trajectory(cfg, result.trajectory);

    ordered_json metrics;
    metrics["post_selection_probability"] = result.prep.post_selection_probability;
    metrics["cnot_depth"] = result.prep.circuit_cnot_depth;
    metrics["n_steps"] = cfg.run.trotter.n_steps;
    metrics["dt"] = cfg.run.trotter.dt;
    write_text_file(cfg.output.directory + "/metrics.json", metrics.dump(2) + "\n");
    std::cout << "trajectory written to " << cfg.output.directory << "\n";
    return kExitOk;
  });
}

int cmd_table(const RunConfig& config) {
  return guarded(config, CommandKind::Table, [](const RunConfig& cfg) {
    const ErrorTableReport report =
        truncation_error_table(cfg.run, cfg.table_cells, cfg.convention, cfg.jobs);
    write_echo(cfg);
    write_text_file(cfg.output.directory + "/error_table.csv", error_report_to_csv(report));
    write_text_file(cfg.output.directory + "/error_table.txt", error_report_to_text(report));
    std::cout << error_report_to_text(report);
    for (const ErrorTableRow& row : report.rows) {
      if (row.failed) {
        std::cerr << "cell (J=" << row.j_coupling << ", g=" << row.g_coupling
                  << ") failed: " << row.message << "\n";
        return kExitPartial;
      }
    }
    return kExitOk;
  });
}

int cmd_export(const RunConfig& config) {
  return guarded(config, CommandKind::Export, [](const RunConfig& cfg) {
    const Circuit circuit = build_packet_circuit(cfg.run.packets, cfg.run.model.n_sites);
    QasmOptions options;
    options.expand_toffoli = cfg.export_options.expand_toffoli;
    write_echo(cfg);
    write_text_file(cfg.output.directory + "/circuit.qasm", export_qasm(circuit, options));

    ordered_json metrics;
    metrics["circuit_width"] = circuit.width;
    metrics["cnot_depth"] = cnot_depth(circuit);
    metrics["gate_count"] = circuit.gates.size();
    write_text_file(cfg.output.directory + "/metrics.json", metrics.dump(2) + "\n");
    std::cout << "circuit written to " << cfg.output.directory << "/circuit.qasm\n";
    return kExitOk;
  });
}

int cmd_vqe(const RunConfig& config) {
  return guarded(config, CommandKind::Vqe, [](const RunConfig& cfg) {
    const VqeResult result = vqe_ground_state(cfg.run.model, cfg.run.vqe);
    write_echo(cfg);

    ordered_json out;
    out["energy"] = result.energy;
    out["evaluations"] = result.evaluations;
    out["n_layers"] = cfg.run.vqe.n_layers;
    out["seed"] = cfg.run.vqe.seed;
    if (cfg.run.model.n_sites <= kDenseOperatorCap) {
      const GroundState exact = exact_ground_state(cfg.run.model);
      out["exact_energy"] = exact.energy;
      out["relative_error"] =
          std::abs(result.energy - exact.energy) / std::abs(exact.energy);
      out["fidelity_with_exact"] = fidelity(result.state, exact.state);
    }
    write_text_file(cfg.output.directory + "/vqe.json", out.dump(2) + "\n");
    std::cout << "vqe energy " << format_double(result.energy) << " written to "
              << cfg.output.directory << "\n";
    return kExitOk;
  });
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Fermionic wave-packet scattering on a transverse-field Ising chain"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string output_dir;
  std::string format;
  int jobs = 0;
  long long seed = -1;

  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--output", output_dir, "output directory (overrides config)");
  app.add_option("--format", format, "csv or json (overrides config)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", jobs, "worker threads for sweeps (overrides config)");
  app.add_option("--seed", seed, "seed override for randomized components");

  CLI::App* prepare = app.add_subcommand("prepare", "build a scattering state and dump it");
  CLI::App* evolve = app.add_subcommand("evolve", "prepare and time-evolve, writing a trajectory");
  CLI::App* table = app.add_subcommand("table", "exact-vs-truncated error sweep over (J, g)");
  CLI::App* exp = app.add_subcommand("export", "export the preparation circuit as OpenQASM 3");
  CLI::App* vqe = app.add_subcommand("vqe", "variational ground-state search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  RunConfig config;
  try {
    config = load_run_config(config_path);
    if (!output_dir.empty()) config.output.directory = output_dir;
    if (!format.empty()) config.output.format = format;
    if (jobs > 0) config.jobs = jobs;
    if (seed >= 0) config.run.vqe.seed = static_cast<unsigned long long>(seed);
    config.echo = run_config_to_json(config);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (prepare->parsed()) return cmd_prepare(config);
  if (evolve->parsed()) return cmd_evolve(config);
  if (table->parsed()) return cmd_table(config);
  if (exp->parsed()) return cmd_export(config);
  if (vqe->parsed()) return cmd_vqe(config);
  return kExitConfig;
}

}  // namespace qscat
