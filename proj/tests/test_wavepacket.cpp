#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qscat/model.hpp"
#include "qscat/wavepacket.hpp"
#include "support/dense_reference.hpp"

using namespace qscat;
namespace ref = qscat::testsupport;

namespace {

// Test-side reconstruction oracle: run the rotation sequence forward on e_1
// in the two-dimensional amplitude picture.
std::vector<double> reconstruct_from_angles(const std::vector<double>& thetas) {
  std::vector<double> v(thetas.size() + 1, 0.0);
  v[0] = 1.0;
  for (std::size_t p = 0; p < thetas.size(); ++p) {
    const double c = std::cos(thetas[p]);
    const double s = std::sin(thetas[p]);
    const double upper = v[p];
    const double lower = v[p + 1];
    v[p] = c * upper + s * lower;
    v[p + 1] = -s * upper + c * lower;
  }
  return v;
}

// Normalized sum_j a_j e^{-i beta_j} c_j^dag |vacuum> via dense JW matrices.
Vector dense_packet_state(const WavePacketSpec& spec, int n_sites, const Vector& vacuum) {
  const PacketCoefficients coeffs = gaussian_coefficients(spec);
  Vector out = Vector::Zero(vacuum.size());
  for (int i = 0; i < spec.window_size(); ++i) {
    const int site = spec.window_lo + i;
    const Complex c = coeffs.amplitudes[static_cast<std::size_t>(i)] *
                      std::exp(Complex(0, -coeffs.phases[static_cast<std::size_t>(i)]));
    out += c * (jw_creation(site, n_sites) * vacuum);
  }
  out.normalize();
  return out;
}

StateVector random_state(int n_qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes = Vector(std::uint64_t{1} << n_qubits);
  for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
    s.amplitudes(i) = Complex(gauss(rng), gauss(rng));
  }
  s.normalize();
  return s;
}

}  // namespace

TEST_CASE("gaussian coefficients") {
  SUBCASE("peak sits at the center and follows the stated profile") {
    WavePacketSpec spec{3.0, 0.0, 1.5, 1, 8};
    const PacketCoefficients c = gaussian_coefficients(spec);
    REQUIRE(c.amplitudes.size() == 8);
    const auto max_it = std::max_element(c.amplitudes.begin(), c.amplitudes.end());
    CHECK(max_it - c.amplitudes.begin() == 2);  // site 3
    for (int i = 0; i < 8; ++i) {
      const double site = 1.0 + i;
      const double expect = std::exp(-std::pow(site - 3.0, 2) / (1.5 * 1.5));
      CHECK(c.amplitudes[i] / *max_it == doctest::Approx(expect).epsilon(1e-12));
    }
    double norm_sq = 0.0;
    for (double a : c.amplitudes) norm_sq += a * a;
    CHECK(norm_sq == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("symmetric window gives a symmetric profile") {
    WavePacketSpec spec{4.5, 0.0, 2.0, 1, 8};
    const PacketCoefficients c = gaussian_coefficients(spec);
    for (int d = 0; d < 4; ++d) {
      CHECK(c.amplitudes[3 - d] == doctest::Approx(c.amplitudes[4 + d]).epsilon(1e-12));
    }
  }
  SUBCASE("phase is momentum times 1-based site") {
    WavePacketSpec spec{3.0, 7.0 * kPi / 16.0, 1.5, 1, 8};
    const PacketCoefficients c = gaussian_coefficients(spec);
    CHECK(c.phases[1] == doctest::Approx(7.0 * kPi / 8.0).epsilon(1e-12));  // site 2
  }
}

TEST_CASE("givens angles and reconstruction") {
  SUBCASE("(1, 0) needs no rotation") {
    const std::vector<double> thetas = givens_angles({1.0, 0.0});
    REQUIRE(thetas.size() == 1);
    CHECK(thetas[0] == 0.0);
  }
  SUBCASE("equal superposition reconstructs") {
    const double r = 1.0 / std::sqrt(2.0);
    const std::vector<double> thetas = givens_angles({r, r});
    const std::vector<double> v = reconstruct_from_angles(thetas);
    CHECK(v[0] == doctest::Approx(r).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(r).epsilon(1e-12));
  }
  SUBCASE("length-8 gaussian reconstructs below 1e-10") {
    const PacketCoefficients c = gaussian_coefficients({3.0, 0.0, 1.5, 1, 8});
    const std::vector<double> thetas = givens_angles(c.amplitudes);
    const std::vector<double> v = reconstruct_from_angles(thetas);
    for (int i = 0; i < 8; ++i) {
      CHECK(std::abs(v[i] - c.amplitudes[i]) < 1e-10);
    }
  }
  SUBCASE("random normalized vectors reconstruct (property)") {
    std::mt19937_64 rng(37);
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<int> length(2, 16);
    for (int trial = 0; trial < 200; ++trial) {
      const int m = length(rng);
      std::vector<double> a(static_cast<std::size_t>(m));
      double norm_sq = 0.0;
      for (double& x : a) {
        x = gauss(rng);
        norm_sq += x * x;
      }
      for (double& x : a) x /= std::sqrt(norm_sq);
      const std::vector<double> v = reconstruct_from_angles(givens_angles(a));
      for (int i = 0; i < m; ++i) {
        CHECK(std::abs(v[i] - a[i]) < 1e-10);
      }
    }
  }
  SUBCASE("vectors with interior zeros reconstruct") {
    const std::vector<double> a = {0.0, 0.6, 0.0, -0.8, 0.0};
    const std::vector<double> v = reconstruct_from_angles(givens_angles(a));
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(v[i] - a[i]) < 1e-12);
    }
  }
  SUBCASE("zero vector is rejected") {
    CHECK_THROWS_AS((void)givens_angles({0.0, 0.0, 0.0}), std::invalid_argument);
  }
}

TEST_CASE("phase layer") {
  SUBCASE("zero phases act as the identity up to global phase") {
    const Circuit c = build_phase_layer({0.0, 0.0, 0.0}, 1, 3);
    CHECK(ref::deviation_up_to_phase(Matrix::Identity(8, 8), ref::circuit_unitary(c)) < 1e-12);
    CHECK(cnot_depth(c) == 0);
  }
  SUBCASE("pi phase flips |1> relative to |0>") {
    const Circuit c = build_phase_layer({kPi}, 1, 1);
    Matrix expect = Matrix::Zero(2, 2);
    expect(0, 0) = 1.0;
    expect(1, 1) = -1.0;
    CHECK(ref::deviation_up_to_phase(expect, ref::circuit_unitary(c)) < 1e-12);
  }
  SUBCASE("dense form equals exp(-(i/2) sum beta_j Z_j)") {
    const std::vector<double> betas = {0.3, -1.1, 2.4};
    const Circuit c = build_phase_layer(betas, 2, 4);  // window sites 2..4
    Matrix gen = Matrix::Zero(16, 16);
    for (std::size_t i = 0; i < betas.size(); ++i) {
      gen += betas[i] * ref::embed(ref::pauli('Z'), {static_cast<int>(i) + 1}, 4);
    }
    const Matrix expect = (Complex(0, -0.5) * gen).exp();
    CHECK((expect - ref::circuit_unitary(c)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("givens ladder") {
  SUBCASE("zero angles act as the identity") {
    const Circuit c = build_givens_ladder({0.0, 0.0, 0.0}, 1, 4, 4);
    CHECK((ref::circuit_unitary(c) - Matrix::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("ladder conserves particle number") {
    const Circuit c = build_givens_ladder({0.4, -0.9, 1.3}, 1, 4, 4);
    Matrix number = Matrix::Zero(16, 16);
    for (int q = 0; q < 4; ++q) number += ref::embed(ref::pauli('Z'), {q}, 4);
    const Matrix u = ref::circuit_unitary(c);
    CHECK((u * number - number * u).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("four-site ladder alone has CNOT depth 6") {
    const Circuit c = build_givens_ladder({0.4, -0.9, 1.3}, 1, 4, 4);
    CHECK(cnot_depth(c) == 6);
  }
  SUBCASE("angle count must match the window") {
    CHECK_THROWS_AS((void)build_givens_ladder({0.1}, 1, 4, 4), std::invalid_argument);
  }
}

TEST_CASE("lobe block semantics") {
  // Register layout: target = qubit 0, control = 1, ancilla = 2.
  const Circuit block = build_lobe_block(0, 1, 2, 3);
  SUBCASE("unoccupied target: success with certainty, site filled") {
    StateVector s = StateVector::zero_state(3);
    s = apply_gate(s, Gate::x(1));  // arm the control
    s = apply_circuit(s, block);
    const ProjectionResult r = project_qubit(s, 2, 0);
    CHECK(r.probability == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(std::abs(r.state.amplitudes(0b011)) - 1.0) < 1e-12);  // target + control set
  }
  SUBCASE("occupied target: post-selection impossible") {
    StateVector s = StateVector::basis_state(3, 0b001);  // target occupied
    s = apply_gate(s, Gate::x(1));
    s = apply_circuit(s, block);
    CHECK_THROWS_AS((void)project_qubit(s, 2, 0), PostSelectionError);
  }
  SUBCASE("0.6|0> + 0.8|1> succeeds with probability 0.36") {
    StateVector s = StateVector::zero_state(3);
    s.amplitudes(0b000) = 0.6;
    s.amplitudes(0b001) = 0.8;
    s = apply_gate(s, Gate::x(1));
    s = apply_circuit(s, block);
    const ProjectionResult r = project_qubit(s, 2, 0);
    CHECK(r.probability == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(std::abs(std::abs(r.state.amplitudes(0b011)) - 1.0) < 1e-12);
  }
  SUBCASE("entangled registers: post-selected block equals sigma^- (property)") {
    std::mt19937_64 rng(55);
    const int n = 6;  // 4 system qubits + control 4 + ancilla 5
    const Matrix sigma_minus_full =
        ref::embed((Matrix(2, 2) << 0, 0, 1, 0).finished(), {2}, 4);
    const Circuit lobe = build_lobe_block(2, 4, 5, n);
    for (int trial = 0; trial < 200; ++trial) {
      const StateVector system = random_state(4, rng);
      StateVector wide = append_zero_qubits(system, 2);
      wide = apply_gate(wide, Gate::x(4));
      wide = apply_circuit(wide, lobe);

      const Vector direct_raw = sigma_minus_full * system.amplitudes;
      const double weight = direct_raw.squaredNorm();
      if (weight < 1e-12) continue;
      const ProjectionResult r = project_qubit(wide, 5, 0);
      CHECK(r.probability == doctest::Approx(weight).epsilon(1e-12));
      StateVector collapsed = remove_qubit(wide, 5, 0);
      collapsed = remove_qubit(collapsed, 4, 1);
      StateVector direct;
      direct.n_qubits = 4;
      direct.amplitudes = direct_raw / std::sqrt(weight);
      CHECK(std::abs(std::abs(inner_product(collapsed, direct)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("packet circuit depth claims") {
  SUBCASE("two packets on an 8-site chain: depth 18 excluding vacuum prep") {
    const std::vector<WavePacketSpec> packets = {{2.0, 3 * kPi / 8, 1.5, 1, 4},
                                                 {6.0, -3 * kPi / 8, 1.5, 5, 8}};
    const Circuit c = build_packet_circuit(packets, 8);
    CHECK(c.width == 12);
    CHECK(cnot_depth(c) == 18);
    CHECK(std::count(c.roles.begin(), c.roles.end(), QubitRole::Control) == 2);
    CHECK(std::count(c.roles.begin(), c.roles.end(), QubitRole::Ancilla) == 2);
  }
  SUBCASE("single packet on an N/2 window: depth 4(N/2-1)+6") {
    for (int n : {8, 12, 16}) {
      const WavePacketSpec packet{n / 4.0, kPi / 3, 1.5, 1, n / 2};
      const Circuit c = build_packet_circuit({packet}, n);
      CHECK(cnot_depth(c) == 4 * (n / 2 - 1) + 6);
    }
  }
  SUBCASE("overlapping windows are rejected") {
    const std::vector<WavePacketSpec> packets = {{2.0, 0.3, 1.5, 1, 5},
                                                 {6.0, -0.3, 1.5, 5, 8}};
    CHECK_THROWS_AS((void)build_packet_circuit(packets, 8), std::invalid_argument);
  }
}

TEST_CASE("single-packet circuit equals the fermionic target on the trivial vacuum") {
  for (int lo_half : {0, 1}) {
    const int n = 8;
    const WavePacketSpec spec = lo_half == 0
                                    ? WavePacketSpec{2.0, 3 * kPi / 8, 1.5, 1, 4}
                                    : WavePacketSpec{6.0, -3 * kPi / 8, 1.5, 5, 8};
    CAPTURE(lo_half);
    const Circuit c = build_packet_circuit({spec}, n);
    StateVector wide = append_zero_qubits(StateVector::zero_state(n), 2);
    wide = apply_circuit(wide, c);
    const ProjectionResult r = project_qubit(wide, n + 1, 0);
    CHECK(r.probability == doctest::Approx(1.0).epsilon(1e-10));
    StateVector prepared = remove_qubit(wide, n + 1, 0);
    prepared = remove_qubit(prepared, n, 1);

    Vector vacuum = Vector::Zero(1 << n);
    vacuum(0) = 1.0;
    StateVector target;
    target.n_qubits = n;
    target.amplitudes = dense_packet_state(spec, n, vacuum);
    CHECK(fidelity(prepared, target) >= 1.0 - 1e-9);
  }
}

TEST_CASE("two-packet circuit matches the truncated operator pipeline") {
  const int n = 8;
  const std::vector<WavePacketSpec> packets = {{2.0, 3 * kPi / 8, 1.5, 1, 4},
                                               {6.0, -3 * kPi / 8, 1.5, 5, 8}};
  const Circuit c = build_packet_circuit(packets, n);
  StateVector wide = append_zero_qubits(StateVector::zero_state(n), 4);
  wide = apply_circuit(wide, c);
  // Strip ancillas/controls from the top down.
  double probability = 1.0;
  for (int k = 1; k >= 0; --k) {
    const int control = n + 2 * k;
    const int ancilla = control + 1;
    probability *= project_qubit(wide, ancilla, 0).probability;
    wide = remove_qubit(wide, ancilla, 0);
    wide = remove_qubit(wide, control, 1);
  }
  CHECK(probability == doctest::Approx(1.0).epsilon(1e-9));

  StateVector oracle = StateVector::zero_state(n);
  oracle = apply_packet_operator(oracle, packets[1], PrepVariant::Truncated, n);
  oracle = apply_packet_operator(oracle, packets[0], PrepVariant::Truncated, n);
  CHECK(fidelity(wide, oracle) >= 1.0 - 1e-9);
}

TEST_CASE("packet operator basics") {
  SUBCASE("single-site window occupies exactly that site") {
    const WavePacketSpec spec{3.0, 0.9, 1.0, 3, 3};
    StateVector s = apply_packet_operator(StateVector::zero_state(6), spec,
                                          PrepVariant::Truncated, 6);
    CHECK(std::abs(std::abs(s.amplitudes(0b000100)) - 1.0) < 1e-12);
  }
  SUBCASE("matches dense JW application on a random state") {
    std::mt19937_64 rng(91);
    const int n = 6;
    const WavePacketSpec spec{2.0, 1.1, 1.3, 1, 3};
    const StateVector in = random_state(n, rng);
    StateVector out;
    // The packet can annihilate unlucky random states; keep the valid one.
    out = apply_packet_operator(in, spec, PrepVariant::Truncated, n);
    StateVector expect;
    expect.n_qubits = n;
    expect.amplitudes = dense_packet_state(spec, n, in.amplitudes);
    CHECK(std::abs(std::abs(inner_product(out, expect)) - 1.0) < 1e-12);
  }
  SUBCASE("exact variant ignores the window") {
    const WavePacketSpec spec{3.0, 0.0, 1.5, 1, 4};
    StateVector a = apply_packet_operator(StateVector::zero_state(8), spec,
                                          PrepVariant::Exact, 8);
    WavePacketSpec full = spec;
    full.window_lo = 1;
    full.window_hi = 8;
    StateVector b = apply_packet_operator(StateVector::zero_state(8), full,
                                          PrepVariant::Truncated, 8);
    CHECK(fidelity(a, b) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("fully occupied window annihilates the packet") {
    const WavePacketSpec spec{1.0, 0.0, 1.0, 1, 1};
    StateVector s = StateVector::basis_state(2, 0b01);
    CHECK_THROWS_AS(
        (void)apply_packet_operator(std::move(s), spec, PrepVariant::Truncated, 2),
        std::invalid_argument);
  }
}

TEST_CASE("two-packet exchange antisymmetry") {
  const int n = 8;
  const std::vector<WavePacketSpec> packets = {{2.0, 3 * kPi / 8, 1.5, 1, 4},
                                               {6.0, -3 * kPi / 8, 1.5, 5, 8}};
  StateVector ab = StateVector::zero_state(n);
  ab = apply_packet_operator(ab, packets[1], PrepVariant::Truncated, n);
  ab = apply_packet_operator(ab, packets[0], PrepVariant::Truncated, n);
  StateVector ba = StateVector::zero_state(n);
  ba = apply_packet_operator(ba, packets[0], PrepVariant::Truncated, n);
  ba = apply_packet_operator(ba, packets[1], PrepVariant::Truncated, n);
  const Complex overlap = inner_product(ab, ba);
  CHECK(std::abs(overlap - Complex(-1.0)) < 1e-10);
}

TEST_CASE("exact and truncated packets on the fig-4 configuration") {
  // Overlap deviates from 1 by the truncation loss; recorded, not asserted.
  const int n = 16;
  const std::vector<WavePacketSpec> packets = {{3.0, 7 * kPi / 16, 1.5, 1, 8},
                                               {11.0, -7 * kPi / 16, 1.5, 9, 16}};
  StateVector exact = StateVector::zero_state(n);
  StateVector truncated = StateVector::zero_state(n);
  for (int k = 1; k >= 0; --k) {
    exact = apply_packet_operator(exact, packets[k], PrepVariant::Exact, n);
    truncated = apply_packet_operator(truncated, packets[k], PrepVariant::Truncated, n);
  }
  const double overlap = std::abs(inner_product(exact, truncated));
  MESSAGE("fig-4 exact/truncated overlap deficit: ", 1.0 - overlap);
  CHECK(overlap > 0.99);   // sanity floor: truncation loss is small
  CHECK(overlap < 1.0);    // but nonzero
}

TEST_CASE("term counts") {
  CHECK(term_count(PrepVariant::Exact, 8) == 28);
  CHECK(term_count(PrepVariant::Truncated, 8) == 6);
  CHECK(term_count(PrepVariant::Truncated, 16) == 28);
  CHECK(term_count(PrepVariant::Exact, 16) == 120);
  CHECK_THROWS_AS((void)term_count(PrepVariant::Exact, 7), std::invalid_argument);
}

TEST_CASE("packet spec validation") {
  WavePacketSpec bad{3.0, 0.0, -1.0, 1, 8};
  CHECK_THROWS_AS(bad.validate(8), std::invalid_argument);
  bad = {3.0, 0.0, 1.0, 0, 8};
  CHECK_THROWS_AS(bad.validate(8), std::invalid_argument);
  bad = {3.0, 0.0, 1.0, 5, 9};
  CHECK_THROWS_AS(bad.validate(8), std::invalid_argument);
  bad = {3.0, 4.0, 1.0, 1, 8};  // momentum outside (-pi, pi]
  CHECK_THROWS_AS(bad.validate(8), std::invalid_argument);
}
