#pragma once

#include "qscat/circuit.hpp"
#include "qscat/model.hpp"
#include "qscat/observables.hpp"

namespace qscat {

struct TrotterConfig {
  double dt = 0.1;
  int n_steps = 1;

  void validate() const;
};

/// One first-order Trotter step for exp(-i H dt): RZZ layers for the g term,
/// an RZ layer for the field, and H.RZZ.H sandwiches for the XX term, with
/// even/odd bond layers so disjoint bonds parallelize. Angles follow
/// RP(theta) = exp(-i P theta/2), so theta_zz = -2 g dt, theta_z = -2 h dt,
/// theta_xx = -2 J dt. The boundary bond is included iff Periodic.
Circuit build_trotter_step(const ModelParams& params, double dt);

/// Applies the step circuit n_steps times, recording the requested
/// observables after every step (and at t = 0).
TrajectoryDataset evolve_trajectory(StateVector state, const ModelParams& params,
                                    const TrotterConfig& config,
                                    const TrajectoryObservers& observers = {});

}  // namespace qscat
