#include "qscat/experiments.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace qscat {

void AdiabaticConfig::validate() const {
  if (!(ramp_time > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("adiabatic ramp_time and dt must be positive");
  }
}

void VqeConfig::validate() const {
  if (n_layers < 1) throw std::invalid_argument("vqe n_layers must be >= 1");
  if (max_iterations < 0) throw std::invalid_argument("vqe max_iterations must be >= 0");
  if (!(c_gain > 0.0)) throw std::invalid_argument("vqe c_gain must be positive");
  if (a_gain <= 0.0 && !(target_step > 0.0)) {
    throw std::invalid_argument("vqe target_step must be positive when a_gain is auto");
  }
  if (resamplings < 1) throw std::invalid_argument("vqe resamplings must be >= 1");
  if (init_spread < 0.0) throw std::invalid_argument("vqe init_spread must be >= 0");
}

void ScatteringRunSpec::validate() const {
  model.validate();
  trotter.validate();
  if (packets.empty() || packets.size() > 2) {
    throw std::invalid_argument("a run needs one or two packets");
  }
  for (const WavePacketSpec& p : packets) p.validate(model.n_sites);
  if (packets.size() == 2) {
    const bool disjoint = packets[0].window_hi < packets[1].window_lo ||
                          packets[1].window_hi < packets[0].window_lo;
    if (!disjoint && variant != PrepVariant::Exact) {
      throw std::invalid_argument("two-packet windows must be disjoint");
    }
  }
  if (vacuum == VacuumSource::Adiabatic) adiabatic.validate();
  if (vacuum == VacuumSource::Vqe) vqe.validate();
}

double hamiltonian_expectation(const StateVector& state, const ModelParams& params) {
  if (state.n_qubits != params.n_sites) {
    throw std::invalid_argument("state width does not match n_sites");
  }
  const auto bonds = params.bonds();
  double diag = 0.0;
  for (std::uint64_t b = 0; b < state.dim(); ++b) {
    const double w = std::norm(state.amplitudes(static_cast<Eigen::Index>(b)));
    if (w == 0.0) continue;
    double local = 0.0;
    for (int site = 1; site <= params.n_sites; ++site) {
      local -= params.h_field * (((b >> (site - 1)) & 1) ? -1.0 : 1.0);
    }
    for (const auto& [s1, s2] : bonds) {
      const double z1 = ((b >> (s1 - 1)) & 1) ? -1.0 : 1.0;
      const double z2 = ((b >> (s2 - 1)) & 1) ? -1.0 : 1.0;
      local -= params.g_coupling * z1 * z2;
    }
    diag += w * local;
  }
  double xx = 0.0;
  if (params.j_coupling != 0.0) {
    for (const auto& [s1, s2] : bonds) {
      const std::uint64_t mask =
          (std::uint64_t{1} << (s1 - 1)) | (std::uint64_t{1} << (s2 - 1));
      Complex acc = 0.0;
      for (std::uint64_t b = 0; b < state.dim(); ++b) {
        acc += std::conj(state.amplitudes(static_cast<Eigen::Index>(b ^ mask))) *
               state.amplitudes(static_cast<Eigen::Index>(b));
      }
      xx -= params.j_coupling * acc.real();
    }
  }
  return diag + xx;
}

Circuit vqe_ansatz_circuit(int n_sites, int n_layers, const std::vector<double>& parameters) {
  const std::size_t expected = 2 * static_cast<std::size_t>(n_sites) *
                               (static_cast<std::size_t>(n_layers) + 1);
  if (parameters.size() != expected) {
    throw std::invalid_argument("ansatz expects " + std::to_string(expected) + " parameters, got " +
                                std::to_string(parameters.size()));
  }
  Circuit c(n_sites);
  std::size_t p = 0;
  for (int block = 0; block <= n_layers; ++block) {
    if (block > 0) {
      for (int q = 0; q + 1 < n_sites; ++q) {
        c.append(Gate::cnot(q, q + 1));
      }
    }
    for (int q = 0; q < n_sites; ++q) c.append(Gate::ry(q, parameters[p++]));
    for (int q = 0; q < n_sites; ++q) c.append(Gate::rz(q, parameters[p++]));
  }
  return c;
}

VqeResult vqe_ground_state(const ModelParams& params, const VqeConfig& config) {
  params.validate();
  config.validate();
  const int n = params.n_sites;
  const std::size_t n_params =
      2 * static_cast<std::size_t>(n) * (static_cast<std::size_t>(config.n_layers) + 1);

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> init(0.0, config.init_spread);
  std::vector<double> theta(n_params);
  for (double& v : theta) v = config.init_spread > 0.0 ? init(rng) : 0.0;

  int evaluations = 0;
  auto energy_of = [&](const std::vector<double>& point) {
    ++evaluations;
    StateVector s = apply_circuit(StateVector::zero_state(n),
                                  vqe_ansatz_circuit(n, config.n_layers, point));
    return hamiltonian_expectation(s, params);
  };

  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<double> delta(n_params);
  std::vector<double> plus(n_params);
  std::vector<double> minus(n_params);
  auto draw_pair = [&](double c) {
    for (std::size_t i = 0; i < n_params; ++i) {
      delta[i] = coin(rng) ? 1.0 : -1.0;
      plus[i] = theta[i] + c * delta[i];
      minus[i] = theta[i] - c * delta[i];
    }
  };

  const double big_a =
      config.stability_offset >= 0.0 ? config.stability_offset : 0.1 * config.max_iterations;
  double a_gain = config.a_gain;
  if (a_gain <= 0.0) {
    // Probe the slope magnitude at the initial point so the first update
    // moves by roughly target_step.
    const int probes = 16;
    double slope_sum = 0.0;
    for (int probe = 0; probe < probes; ++probe) {
      draw_pair(config.c_gain);
      slope_sum += std::abs(energy_of(plus) - energy_of(minus)) / (2.0 * config.c_gain);
    }
    const double slope = std::max(slope_sum / probes, 1e-9);
    a_gain = config.target_step / slope * std::pow(1.0 + big_a, 0.602);
  }

  std::vector<double> best_theta = theta;
  double best_energy = energy_of(theta);
  std::vector<double> grad(n_params);
  for (int k = 0; k < config.max_iterations; ++k) {
    const double ck = config.c_gain / std::pow(k + 1.0, 0.101);
    const double ak = a_gain / std::pow(k + 1.0 + big_a, 0.602);
    std::fill(grad.begin(), grad.end(), 0.0);
    for (int r = 0; r < config.resamplings; ++r) {
      draw_pair(ck);
      const double ep = energy_of(plus);
      const double em = energy_of(minus);
      if (ep < best_energy) {
        best_energy = ep;
        best_theta = plus;
      }
      if (em < best_energy) {
        best_energy = em;
        best_theta = minus;
      }
      const double slope = (ep - em) / (2.0 * ck);
      for (std::size_t i = 0; i < n_params; ++i) {
        grad[i] += slope * delta[i] / config.resamplings;
      }
    }
    for (std::size_t i = 0; i < n_params; ++i) {
      theta[i] -= ak * grad[i];
    }
    const double e = energy_of(theta);
    if (e < best_energy) {
      best_energy = e;
      best_theta = theta;
    }
  }

  VqeResult result;
  result.parameters = best_theta;
  result.energy = best_energy;
  result.evaluations = evaluations;
  result.state = apply_circuit(StateVector::zero_state(n),
                               vqe_ansatz_circuit(n, config.n_layers, best_theta));
  return result;
}

StateVector adiabatic_vacuum(const ModelParams& params, const AdiabaticConfig& config) {
  params.validate();
  config.validate();
  if (!(params.h_field > 0.0)) {
    throw std::invalid_argument("adiabatic vacuum requires h > 0");
  }
  const int n_steps = std::max(1, static_cast<int>(std::ceil(config.ramp_time / config.dt)));
  StateVector state = StateVector::zero_state(params.n_sites);
  for (int i = 0; i < n_steps; ++i) {
    const double s = (i + 0.5) / n_steps;  // midpoint ramp value
    ModelParams ramped = params;
    ramped.j_coupling = params.j_coupling * s;
    ramped.g_coupling = params.g_coupling * s;
    apply_circuit_in_place(state, build_trotter_step(ramped, config.dt));
  }
  return state;
}

StateVector prepare_vacuum(const ModelParams& params, VacuumSource source,
                           const AdiabaticConfig& adiabatic, const VqeConfig& vqe) {
  switch (source) {
    case VacuumSource::Trivial:
      return StateVector::zero_state(params.n_sites);
    case VacuumSource::ExactGround:
      return exact_ground_state(params).state;
    case VacuumSource::Adiabatic:
      return adiabatic_vacuum(params, adiabatic);
    case VacuumSource::Vqe:
      return vqe_ground_state(params, vqe).state;
  }
  throw std::logic_error("unhandled vacuum source");
}

PrepResult prepare_scattering_state(const ScatteringRunSpec& spec,
                                    const StateVector* vacuum_override) {
  spec.validate();
  const int n = spec.model.n_sites;
  StateVector vacuum = vacuum_override
                           ? *vacuum_override
                           : prepare_vacuum(spec.model, spec.vacuum, spec.adiabatic, spec.vqe);
  if (vacuum.n_qubits != n) {
    throw std::invalid_argument("vacuum width does not match n_sites");
  }

  PrepResult result;
  result.packet_term_count = (n % 2 == 0) ? term_count(spec.variant, n) : -1;

  if (spec.variant == PrepVariant::TruncatedUnitary) {
    const Circuit circuit = build_packet_circuit(spec.packets, n);
    result.circuit_width = circuit.width;
    result.circuit_cnot_depth = cnot_depth(circuit);
    StateVector wide = append_zero_qubits(vacuum, 2 * static_cast<int>(spec.packets.size()));
    apply_circuit_in_place(wide, circuit);
    // Strip ancillas (|0>) and controls (|1>) from the top down.
    double probability = 1.0;
    for (std::size_t k = spec.packets.size(); k-- > 0;) {
      const int control = n + 2 * static_cast<int>(k);
      const int ancilla = control + 1;
      {
        ProjectionResult projected = project_qubit(wide, ancilla, 0);
        probability *= projected.probability;
        wide = remove_qubit(wide, ancilla, 0);
      }
      ProjectionResult control_check = project_qubit(wide, control, 1);
      if (std::abs(control_check.probability - 1.0) > 1e-9) {
        throw std::runtime_error("control qubit left its prepared state");
      }
      wide = remove_qubit(wide, control, 1);
    }
    result.post_selection_probability = probability;
    result.state = std::move(wide);
  } else {
    // The accumulated pre-normalization weight equals the post-selection
    // probability the unitary variant would see on the same vacuum.
    double probability = 1.0;
    StateVector state = std::move(vacuum);
    for (std::size_t idx = spec.packets.size(); idx-- > 0;) {
      double weight = 1.0;
      state = apply_packet_operator(std::move(state), spec.packets[idx], spec.variant, n, &weight);
      probability *= weight;
    }
    result.post_selection_probability = probability;
    result.state = std::move(state);
  }
  return result;
}

ScatteringRunResult run_scattering_experiment(const ScatteringRunSpec& spec,
                                              const StateVector* vacuum_override) {
  ScatteringRunResult result;
  result.prep = prepare_scattering_state(spec, vacuum_override);
  result.trajectory =
      evolve_trajectory(result.prep.state, spec.model, spec.trotter, spec.observers);
  return result;
}

std::string error_convention_name(ErrorConvention convention) {
  return convention == ErrorConvention::L2Ratio ? "l2_ratio" : "l1_ratio";
}

namespace {

double aggregate(const std::vector<double>& values, ErrorConvention convention) {
  double acc = 0.0;
  for (double v : values) {
    acc += convention == ErrorConvention::L2Ratio ? v * v : std::abs(v);
  }
  return convention == ErrorConvention::L2Ratio ? std::sqrt(acc) : acc;
}

double series_error_pct(const std::vector<std::vector<double>>& ref,
                        const std::vector<std::vector<double>>& approx,
                        ErrorConvention convention, std::size_t first) {
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t t = first; t < ref.size(); ++t) {
    if (ref[t].size() != approx[t].size()) {
      throw std::invalid_argument("observable grids do not match");
    }
    std::vector<double> diff(ref[t].size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ref[t][i] - approx[t][i];
    const double denom = aggregate(ref[t], convention);
    const double numer = aggregate(diff, convention);
    if (denom == 0.0) {
      total += numer == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      total += 100.0 * numer / denom;
    }
    ++count;
  }
  return count ? total / static_cast<double>(count) : 0.0;
}

}  // namespace

RelativeErrors trajectory_relative_errors(const TrajectoryDataset& reference,
                                          const TrajectoryDataset& approx,
                                          ErrorConvention convention, bool skip_initial) {
  if (reference.times.size() != approx.times.size()) {
    throw std::invalid_argument("trajectory lengths do not match");
  }
  for (std::size_t t = 0; t < reference.times.size(); ++t) {
    if (std::abs(reference.times[t] - approx.times[t]) > 1e-12) {
      throw std::invalid_argument("trajectory time grids do not match");
    }
  }
  const std::size_t first = (skip_initial && reference.times.size() > 1) ? 1 : 0;
  RelativeErrors errors;
  if (!reference.occupations.empty()) {
    if (reference.occupations.size() != approx.occupations.size()) {
      throw std::invalid_argument("occupation series lengths do not match");
    }
    errors.occupation_pct =
        series_error_pct(reference.occupations, approx.occupations, convention, first);
  }
  if (!reference.entropies.empty()) {
    if (reference.entropies.size() != approx.entropies.size()) {
      throw std::invalid_argument("entropy series lengths do not match");
    }
    errors.entropy_pct = series_error_pct(reference.entropies, approx.entropies, convention, first);
  }
  return errors;
}

namespace {

ErrorTableRow run_table_cell(const ScatteringRunSpec& base, const ErrorTableCell& cell,
                             ErrorConvention convention) {
  ErrorTableRow row;
  row.j_coupling = cell.j_coupling;
  row.g_coupling = cell.g_coupling;
  try {
    ScatteringRunSpec spec = base;
    spec.model.j_coupling = cell.j_coupling;
    spec.model.g_coupling = cell.g_coupling;
    if (cell.vacuum_override) spec.vacuum = *cell.vacuum_override;

    const StateVector vacuum =
        prepare_vacuum(spec.model, spec.vacuum, spec.adiabatic, spec.vqe);

    spec.variant = PrepVariant::Exact;
    const ScatteringRunResult exact = run_scattering_experiment(spec, &vacuum);
    spec.variant = PrepVariant::Truncated;
    const ScatteringRunResult truncated = run_scattering_experiment(spec, &vacuum);
    spec.variant = PrepVariant::TruncatedUnitary;
    const ScatteringRunResult unitary = run_scattering_experiment(spec, &vacuum);

    const RelativeErrors twp =
        trajectory_relative_errors(exact.trajectory, truncated.trajectory, convention);
    const RelativeErrors tuwp =
        trajectory_relative_errors(exact.trajectory, unitary.trajectory, convention);
    row.occ_error_truncated_pct = twp.occupation_pct;
    row.entropy_error_truncated_pct = twp.entropy_pct;
    row.occ_error_truncated_unitary_pct = tuwp.occupation_pct;
    row.post_selection_probability = unitary.prep.post_selection_probability;
  } catch (const std::exception& e) {
    row.failed = true;
    row.message = e.what();
  }
  return row;
}

}  // namespace

ErrorTableReport truncation_error_table(const ScatteringRunSpec& base,
                                        const std::vector<ErrorTableCell>& cells,
                                        ErrorConvention convention, int jobs) {
  if (jobs < 1) jobs = 1;
  ErrorTableReport report;
  report.convention = convention;
  report.rows.resize(cells.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      report.rows[i] = run_table_cell(base, cells[i], convention);
    }
  };
  if (jobs == 1 || cells.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(jobs, static_cast<int>(cells.size()));
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return report;
}

}  // namespace qscat
