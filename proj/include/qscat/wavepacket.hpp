#pragma once

#include <vector>

#include "qscat/circuit.hpp"
#include "qscat/statevector.hpp"

namespace qscat {

/// Gaussian wave packet with mean position `center`, mean momentum `momentum`
/// and width `width` (amplitude exp(-|j - center|^2 / width^2)), supported on
/// the 1-based site window [window_lo, window_hi]. Distances never wrap.
struct WavePacketSpec {
  double center = 0.0;
  double momentum = 0.0;  // radians in (-pi, pi]
  double width = 1.0;
  int window_lo = 1;
  int window_hi = 1;

  void validate(int n_sites) const;
  int window_size() const { return window_hi - window_lo + 1; }
};

enum class PrepVariant { Exact, Truncated, TruncatedUnitary };

/// Window-restricted packet coefficients: amplitudes are L2-normalized over
/// the window, phases[i] = momentum * site for the 1-based site window_lo + i.
struct PacketCoefficients {
  std::vector<double> amplitudes;
  std::vector<double> phases;
};

PacketCoefficients gaussian_coefficients(const WavePacketSpec& spec);

/// Rotation angles that reduce a normalized real amplitude vector onto its
/// first entry. Pairs are processed from the bottom, (m-1, m) down to (1, 2);
/// theta[p-1] = atan2(-a[p], a[p-1]) (1-based pair (p, p+1)) with the upper
/// entry updated to hypot(a[p-1], a[p]) after each elimination. Running the
/// rotations in reverse order on e_1 reconstructs the input vector.
std::vector<double> givens_angles(std::vector<double> amplitudes);

/// Phases, angles and target amplitudes for one packet.
struct GivensSchedule {
  std::vector<double> phases;
  std::vector<double> angles;
  std::vector<double> target_amplitudes;
};

GivensSchedule make_givens_schedule(const WavePacketSpec& spec);

/// One RZ(beta[i]) on each window qubit: the phase-cancelling layer, equal to
/// exp(-(i/2) sum_j beta_j Z_j) on the window.
Circuit build_phase_layer(const std::vector<double>& betas, int window_lo, int width);

/// GivensBlock(theta[p]) on descending neighbor pairs of the window: the
/// coefficient-cancelling ladder. theta must have window size - 1 entries.
Circuit build_givens_ladder(const std::vector<double>& thetas, int window_lo, int window_hi,
                            int width);

/// Block-encoded sigma^- on `target`: Toffoli(control, target -> ancilla)
/// followed by X(target). With the control prepared in |1> and the ancilla in
/// |0>, projecting the ancilla back onto |0> leaves the normalized
/// sigma^--applied target state; the success probability is the weight of the
/// target's |0> component. The discarded branch ends flagged by ancilla |1>.
Circuit build_lobe_block(int target, int control, int ancilla, int width);

/// Full unitary preparation circuit for one or two packets on disjoint
/// windows. Width = n_sites + 2 per packet (control then ancilla, in packet
/// order, after the system qubits). Packet blocks are emitted rightmost
/// operator first, so specs[0] acts last; each block carries a Pauli-Z string
/// over all sites before its window to preserve fermionic anticommutation.
Circuit build_packet_circuit(const std::vector<WavePacketSpec>& specs, int n_sites);

/// Applies sum_j a_j exp(-i beta_j) c_j^dag to the state (matrix-free
/// Jordan-Wigner strings) and renormalizes. Exact uses the full lattice as
/// window; Truncated uses the spec window. Throws when the packet
/// annihilates the state. When given, weight_out receives the squared norm
/// before renormalization (the block-encoded success probability).
StateVector apply_packet_operator(StateVector state, const WavePacketSpec& spec,
                                  PrepVariant variant, int n_sites,
                                  double* weight_out = nullptr);

/// Reported creation-operator term counts for the two-packet product.
long long term_count(PrepVariant variant, int n_sites);

}  // namespace qscat
