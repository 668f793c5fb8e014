#include "qscat/wavepacket.hpp"

#include <cmath>

namespace qscat {

void WavePacketSpec::validate(int n_sites) const {
  if (width <= 0.0 || !std::isfinite(width)) {
    throw std::invalid_argument("packet width must be positive");
  }
  if (!std::isfinite(center) || !std::isfinite(momentum)) {
    throw std::invalid_argument("packet center and momentum must be finite");
  }
  if (momentum <= -kPi - 1e-12 || momentum > kPi + 1e-12) {
    throw std::invalid_argument("packet momentum must lie in (-pi, pi]");
  }
  if (window_lo < 1 || window_hi > n_sites || window_lo > window_hi) {
    throw std::invalid_argument("packet window must satisfy 1 <= lo <= hi <= n_sites");
  }
}

PacketCoefficients gaussian_coefficients(const WavePacketSpec& spec) {
  if (spec.window_lo > spec.window_hi) {
    throw std::invalid_argument("empty packet window");
  }
  PacketCoefficients out;
  const int m = spec.window_size();
  out.amplitudes.resize(static_cast<std::size_t>(m));
  out.phases.resize(static_cast<std::size_t>(m));
  double norm_sq = 0.0;
  for (int i = 0; i < m; ++i) {
    const double site = static_cast<double>(spec.window_lo + i);
    const double d = site - spec.center;
    const double a = std::exp(-(d * d) / (spec.width * spec.width));
    out.amplitudes[static_cast<std::size_t>(i)] = a;
    out.phases[static_cast<std::size_t>(i)] = spec.momentum * site;
    norm_sq += a * a;
  }
  if (norm_sq == 0.0) {
    throw std::invalid_argument("packet coefficients vanish on the window");
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& a : out.amplitudes) a *= inv;
  return out;
}

std::vector<double> givens_angles(std::vector<double> amplitudes) {
  const int m = static_cast<int>(amplitudes.size());
  if (m < 1) {
    throw std::invalid_argument("givens_angles needs at least one amplitude");
  }
  double norm_sq = 0.0;
  for (double a : amplitudes) norm_sq += a * a;
  if (norm_sq == 0.0) {
    throw std::invalid_argument("givens_angles: zero amplitude vector");
  }
  std::vector<double> thetas(static_cast<std::size_t>(m > 0 ? m - 1 : 0), 0.0);
  for (int p = m - 1; p >= 1; --p) {
    const double upper = amplitudes[static_cast<std::size_t>(p - 1)];
    const double lower = amplitudes[static_cast<std::size_t>(p)];
    if (upper == 0.0 && lower == 0.0) {
      thetas[static_cast<std::size_t>(p - 1)] = 0.0;
      continue;
    }
    thetas[static_cast<std::size_t>(p - 1)] = std::atan2(-lower, upper);
    amplitudes[static_cast<std::size_t>(p - 1)] = std::hypot(upper, lower);
  }
  return thetas;
}

GivensSchedule make_givens_schedule(const WavePacketSpec& spec) {
  GivensSchedule schedule;
  PacketCoefficients coeffs = gaussian_coefficients(spec);
  schedule.target_amplitudes = coeffs.amplitudes;
  schedule.phases = std::move(coeffs.phases);
  schedule.angles = givens_angles(schedule.target_amplitudes);
  return schedule;
}

Circuit build_phase_layer(const std::vector<double>& betas, int window_lo, int width) {
  Circuit c(width);
  for (std::size_t i = 0; i < betas.size(); ++i) {
    c.append(Gate::rz(window_lo - 1 + static_cast<int>(i), betas[i]));
  }
  return c;
}

Circuit build_givens_ladder(const std::vector<double>& thetas, int window_lo, int window_hi,
                            int width) {
  const int m = window_hi - window_lo + 1;
  if (static_cast<int>(thetas.size()) != m - 1) {
    throw std::invalid_argument("givens ladder needs window size - 1 angles");
  }
  Circuit c(width);
  // Pair (p, p+1) of the window, bottom pair first; qubits are site - 1.
  for (int p = m - 1; p >= 1; --p) {
    const int qa = window_lo - 1 + (p - 1);
    c.append(Gate::givens(qa, qa + 1, thetas[static_cast<std::size_t>(p - 1)]));
  }
  return c;
}

Circuit build_lobe_block(int target, int control, int ancilla, int width) {
  Circuit c(width);
  c.append(Gate::toffoli(control, target, ancilla));
  c.append(Gate::x(target));
  return c;
}

namespace {

// One packet's unitary block V(beta) V(theta) [string . sigma^-] V(theta)^dag
// V(beta)^dag, emitted in application order.
Circuit packet_block(const WavePacketSpec& spec, int n_sites, int control, int ancilla,
                     int width) {
  const GivensSchedule schedule = make_givens_schedule(spec);
  Circuit block(width);
  block.append(Gate::x(control));
  block.append(build_phase_layer(schedule.phases, spec.window_lo, width));
  block.append(build_givens_ladder(schedule.angles, spec.window_lo, spec.window_hi, width));
  for (int site = 1; site < spec.window_lo; ++site) {
    block.append(Gate::z(site - 1));
  }
  block.append(build_lobe_block(spec.window_lo - 1, control, ancilla, width));
  // Inverse ladder and phase layer (ascending pairs, negated angles).
  const int m = spec.window_size();
  for (int p = 1; p <= m - 1; ++p) {
    const int qa = spec.window_lo - 1 + (p - 1);
    block.append(Gate::givens(qa, qa + 1, -schedule.angles[static_cast<std::size_t>(p - 1)]));
  }
  std::vector<double> neg_phases(schedule.phases);
  for (double& b : neg_phases) b = -b;
  block.append(build_phase_layer(neg_phases, spec.window_lo, width));
  return block;
}

}  // namespace

Circuit build_packet_circuit(const std::vector<WavePacketSpec>& specs, int n_sites) {
  if (specs.empty() || specs.size() > 2) {
    throw std::invalid_argument("build_packet_circuit takes one or two packets");
  }
  for (const WavePacketSpec& spec : specs) {
    spec.validate(n_sites);
  }
  if (specs.size() == 2) {
    const bool disjoint = specs[0].window_hi < specs[1].window_lo ||
                          specs[1].window_hi < specs[0].window_lo;
    if (!disjoint) {
      throw std::invalid_argument("two-packet windows must be disjoint");
    }
  }

  const int width = n_sites + 2 * static_cast<int>(specs.size());
  Circuit circuit(width);
  for (std::size_t k = 0; k < specs.size(); ++k) {
    circuit.roles[static_cast<std::size_t>(n_sites) + 2 * k] = QubitRole::Control;
    circuit.roles[static_cast<std::size_t>(n_sites) + 2 * k + 1] = QubitRole::Ancilla;
  }
  // Rightmost creation operator acts first: emit blocks in reverse spec order.
  for (std::size_t idx = specs.size(); idx-- > 0;) {
    const int control = n_sites + 2 * static_cast<int>(idx);
    const int ancilla = control + 1;
    circuit.append(packet_block(specs[idx], n_sites, control, ancilla, width));
  }
  return circuit;
}

StateVector apply_packet_operator(StateVector state, const WavePacketSpec& spec,
                                  PrepVariant variant, int n_sites, double* weight_out) {
  if (variant == PrepVariant::TruncatedUnitary) {
    throw std::invalid_argument("apply_packet_operator handles Exact and Truncated variants only");
  }
  if (state.n_qubits != n_sites) {
    throw std::invalid_argument("state width does not match n_sites");
  }
  WavePacketSpec window_spec = spec;
  if (variant == PrepVariant::Exact) {
    window_spec.window_lo = 1;
    window_spec.window_hi = n_sites;
  }
  window_spec.validate(n_sites);
  const PacketCoefficients coeffs = gaussian_coefficients(window_spec);

  StateVector out;
  out.n_qubits = state.n_qubits;
  out.amplitudes = Vector::Zero(state.amplitudes.size());
  for (int i = 0; i < window_spec.window_size(); ++i) {
    const int site = window_spec.window_lo + i;
    const int qubit = site - 1;
    const Complex coeff =
        coeffs.amplitudes[static_cast<std::size_t>(i)] *
        std::exp(Complex(0.0, -coeffs.phases[static_cast<std::size_t>(i)]));
    const std::uint64_t qmask = std::uint64_t{1} << qubit;
    const std::uint64_t string_mask = qmask - 1;  // qubits below `qubit`
    for (std::uint64_t b = 0; b < state.dim(); ++b) {
      if (b & qmask) continue;  // sigma^- kills occupied sites
      const Complex amp = state.amplitudes(static_cast<Eigen::Index>(b));
      if (amp == Complex(0.0, 0.0)) continue;
      // (prod_{i<j} -Z_i): -1 per unoccupied site below j.
      const int unoccupied = qubit - static_cast<int>(__builtin_popcountll(b & string_mask));
      const double sign = (unoccupied & 1) ? -1.0 : 1.0;
      out.amplitudes(static_cast<Eigen::Index>(b | qmask)) += coeff * sign * amp;
    }
  }
  const double norm = out.norm();
  if (weight_out) *weight_out = norm * norm;
  if (norm < 1e-12) {
    throw std::invalid_argument("packet operator annihilates the state");
  }
  out.amplitudes /= norm;
  return out;
}

long long term_count(PrepVariant variant, int n_sites) {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw std::invalid_argument("term_count requires even n_sites >= 2");
  }
  const long long n = n_sites;
  if (variant == PrepVariant::Exact) {
    return n * (n - 1) / 2;
  }
  return n * (n / 2 - 1) / 4;
}

}  // namespace qscat
