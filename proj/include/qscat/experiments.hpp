#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qscat/evolution.hpp"
#include "qscat/model.hpp"
#include "qscat/observables.hpp"
#include "qscat/wavepacket.hpp"

namespace qscat {

enum class VacuumSource { Trivial, ExactGround, Adiabatic, Vqe };

/// Trotterized adiabatic ramp of J and g from zero at fixed field.
struct AdiabaticConfig {
  double ramp_time = 30.0;
  double dt = 0.05;

  void validate() const;
};

/// Hardware-efficient ansatz + SPSA settings. Gain schedules follow the
/// canonical exponents a_k = a / (k+1+A)^0.602, c_k = c / (k+1)^0.101.
/// a_gain <= 0 calibrates a from the probed slope at the initial point so
/// the first update moves by about target_step; stability_offset < 0 picks
/// the customary A = 0.1 * max_iterations.
struct VqeConfig {
  int n_layers = 1;
  int max_iterations = 3000;
  double a_gain = 0.0;             // <= 0: auto-calibrated
  double c_gain = 0.2;
  double stability_offset = -1.0;  // A; < 0: 0.1 * max_iterations
  double target_step = 0.3;        // first-step magnitude for calibration
  int resamplings = 2;             // gradient estimates averaged per iteration
  double init_spread = kPi / 2.0;  // stddev of the initial angles
  unsigned long long seed = 1;

  void validate() const;
};

struct VqeResult {
  StateVector state;
  double energy = 0.0;
  std::vector<double> parameters;
  int evaluations = 0;
};

/// <psi| H |psi> evaluated matrix-free (no dense Hamiltonian).
double hamiltonian_expectation(const StateVector& state, const ModelParams& params);

/// Ansatz: RY+RZ on every qubit, then per layer a CNOT ladder (depth N-1)
/// followed by another RY+RZ block; 2 N (n_layers + 1) parameters.
Circuit vqe_ansatz_circuit(int n_sites, int n_layers, const std::vector<double>& parameters);

/// SPSA minimization of the ansatz energy; deterministic per seed, returns
/// the best evaluated point. Non-convergence is not an error.
VqeResult vqe_ground_state(const ModelParams& params, const VqeConfig& config);

/// Trivial vacuum evolved under a Trotterized linear ramp of (J, g) from zero.
/// Requires h > 0 so the trivial vacuum is the initial ground state.
StateVector adiabatic_vacuum(const ModelParams& params, const AdiabaticConfig& config);

struct ScatteringRunSpec {
  ModelParams model;
  std::vector<WavePacketSpec> packets;
  PrepVariant variant = PrepVariant::Truncated;
  TrotterConfig trotter;
  VacuumSource vacuum = VacuumSource::Trivial;
  AdiabaticConfig adiabatic;
  VqeConfig vqe;
  TrajectoryObservers observers;

  void validate() const;
};

StateVector prepare_vacuum(const ModelParams& params, VacuumSource source,
                           const AdiabaticConfig& adiabatic, const VqeConfig& vqe);

struct PrepResult {
  StateVector state;  // system qubits only; ancillas/controls projected out
  double post_selection_probability = 1.0;
  int circuit_width = 0;
  int circuit_cnot_depth = 0;      // TruncatedUnitary only, excluding vacuum prep
  long long packet_term_count = -1;
};

/// Vacuum + packet application for any variant. For TruncatedUnitary the
/// ancillas are post-selected onto |0> (controls onto |1>) and removed.
/// `vacuum_override` skips the internal vacuum preparation when supplied.
PrepResult prepare_scattering_state(const ScatteringRunSpec& spec,
                                    const StateVector* vacuum_override = nullptr);

struct ScatteringRunResult {
  TrajectoryDataset trajectory;
  PrepResult prep;
};

ScatteringRunResult run_scattering_experiment(const ScatteringRunSpec& spec,
                                              const StateVector* vacuum_override = nullptr);

/// Aggregation convention for the per-step relative error over sites/cuts.
enum class ErrorConvention { L2Ratio, L1Ratio };

std::string error_convention_name(ErrorConvention convention);

struct RelativeErrors {
  double occupation_pct = 0.0;
  double entropy_pct = 0.0;
};

/// Time-averaged relative percent error between two datasets on identical
/// grids. The initial snapshot is excluded by default.
RelativeErrors trajectory_relative_errors(const TrajectoryDataset& reference,
                                          const TrajectoryDataset& approx,
                                          ErrorConvention convention, bool skip_initial = true);

struct ErrorTableCell {
  double j_coupling = 0.0;
  double g_coupling = 0.0;
  std::optional<VacuumSource> vacuum_override;
};

struct ErrorTableRow {
  double j_coupling = 0.0;
  double g_coupling = 0.0;
  double occ_error_truncated_pct = 0.0;
  double entropy_error_truncated_pct = 0.0;
  double occ_error_truncated_unitary_pct = 0.0;
  double post_selection_probability = 0.0;
  bool failed = false;
  std::string message;
};

struct ErrorTableReport {
  ErrorConvention convention = ErrorConvention::L2Ratio;
  std::vector<ErrorTableRow> rows;
};

/// Exact-vs-truncated error study over (J, g) cells: per cell one shared
/// vacuum, three runs (exact reference, truncated, truncated-unitary) and the
/// three error columns. Cells run on `jobs` worker threads; a failing cell
/// marks its row instead of aborting the sweep.
ErrorTableReport truncation_error_table(const ScatteringRunSpec& base,
                                        const std::vector<ErrorTableCell>& cells,
                                        ErrorConvention convention, int jobs = 1);

}  // namespace qscat
