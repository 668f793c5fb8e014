#pragma once

#include <string>
#include <vector>

#include "qscat/statevector.hpp"

namespace qscat {

/// Per-site occupations <c_j^dag c_j> = (1 - <Z_j>)/2 for the first
/// `n_system` qubits; any further qubits must already be inert.
std::vector<double> site_occupations(const StateVector& state, int n_system);

/// Von Neumann entropy (natural log) of the reduced state on qubits [0, cut).
double bipartite_entropy(const StateVector& state, int cut);

/// Time series of occupations and cut entropies recorded along an evolution.
/// entropies[t] holds cuts 1 .. n_sites-1 in order.
struct TrajectoryDataset {
  std::vector<double> times;
  std::vector<std::vector<double>> occupations;
  std::vector<std::vector<double>> entropies;
  std::string config_echo;
};

struct TrajectoryObservers {
  bool occupations = true;
  bool entropies = true;
};

}  // namespace qscat
