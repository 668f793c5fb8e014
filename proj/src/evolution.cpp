#include "qscat/evolution.hpp"

#include <cmath>

namespace qscat {

void TrotterConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("trotter dt must be positive");
  }
  if (n_steps < 0) {
    throw std::invalid_argument("trotter n_steps must be nonnegative");
  }
}

namespace {

// Even bonds first, then odd, by the 1-based index of the left site.
std::vector<std::pair<int, int>> layered_bonds(const ModelParams& params) {
  std::vector<std::pair<int, int>> out;
  const auto all = params.bonds();
  for (int parity = 0; parity < 2; ++parity) {
    for (const auto& bond : all) {
      if (bond.first % 2 == parity) out.push_back(bond);
    }
  }
  return out;
}

}  // namespace

Circuit build_trotter_step(const ModelParams& params, double dt) {
  params.validate();
  Circuit step(params.n_sites);
  const auto bonds = layered_bonds(params);

  if (params.g_coupling != 0.0) {
    const double theta_zz = -2.0 * params.g_coupling * dt;
    for (const auto& [s1, s2] : bonds) {
      step.append(Gate::rzz(s1 - 1, s2 - 1, theta_zz));
    }
  }
  if (params.h_field != 0.0) {
    const double theta_z = -2.0 * params.h_field * dt;
    for (int site = 1; site <= params.n_sites; ++site) {
      step.append(Gate::rz(site - 1, theta_z));
    }
  }
  if (params.j_coupling != 0.0) {
    const double theta_xx = -2.0 * params.j_coupling * dt;
    for (int site = 1; site <= params.n_sites; ++site) {
      step.append(Gate::h(site - 1));
    }
    for (const auto& [s1, s2] : bonds) {
      step.append(Gate::rzz(s1 - 1, s2 - 1, theta_xx));
    }
    for (int site = 1; site <= params.n_sites; ++site) {
      step.append(Gate::h(site - 1));
    }
  }
  return step;
}

TrajectoryDataset evolve_trajectory(StateVector state, const ModelParams& params,
                                    const TrotterConfig& config,
                                    const TrajectoryObservers& observers) {
  config.validate();
  if (state.n_qubits != params.n_sites) {
    throw std::invalid_argument("state width does not match n_sites");
  }
  const Circuit step = build_trotter_step(params, config.dt);

  TrajectoryDataset data;
  auto record = [&](double t) {
    data.times.push_back(t);
    if (observers.occupations) {
      data.occupations.push_back(site_occupations(state, params.n_sites));
    }
    if (observers.entropies) {
      std::vector<double> cuts;
      cuts.reserve(static_cast<std::size_t>(params.n_sites - 1));
      for (int cut = 1; cut < params.n_sites; ++cut) {
        cuts.push_back(bipartite_entropy(state, cut));
      }
      data.entropies.push_back(std::move(cuts));
    }
  };

  record(0.0);
  for (int i = 1; i <= config.n_steps; ++i) {
    apply_circuit_in_place(state, step);
    record(i * config.dt);
  }
  return data;
}

}  // namespace qscat
