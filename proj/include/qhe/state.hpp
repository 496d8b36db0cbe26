// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qhe/pauli.hpp"

namespace qhe {

using Amplitudes = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

// Qubit ordering convention used throughout: amplitude vectors are Kronecker
// products taken in qubit order, so qubit 0 is the MOST significant bit of the
// amplitude index. kron(a, b) places `a` on the high bits.
Amplitudes kron(const Amplitudes& a, const Amplitudes& b);
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);

Amplitudes ket(std::string_view label);  // "0", "1", "+", "-", "i", "-i"
Amplitudes random_pure_state(std::size_t num_qubits, std::mt19937_64& rng);
DensityMatrix pure_density(const Amplitudes& v);
DensityMatrix maximally_mixed(std::size_t num_qubits);

// Applies a PauliString (including its global phase) to an n-qubit amplitude
// vector in the ordering convention above.
Amplitudes apply_pauli_to_state(const Amplitudes& v, const PauliString& p);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
// Uhlmann fidelity F(a, b) = (tr sqrt(sqrt(a) b sqrt(a)))^2; for a pure `b`
// this reduces to <b|a|b>.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);
double fidelity_with_pure(const DensityMatrix& a, const Amplitudes& b);

// Reorders the qubits of a density matrix: qubit at source position s moves to
// position perm[s]. `perm` must be a permutation of 0..q-1.
DensityMatrix permute_qubits(const DensityMatrix& rho, const std::vector<std::size_t>& perm);

enum class GateKind { X, Y, Z, H, S, Sdg, T, Tdg, Cnot, Swap };

int gate_arity(GateKind kind);
const char* gate_name(GateKind kind);
GateKind gate_inverse(GateKind kind);
Eigen::Matrix2cd gate_matrix_1q(GateKind kind);

struct GateOp {
  GateKind kind;
  std::vector<std::size_t> targets;

  static GateOp single(GateKind kind, std::size_t pos) { return {kind, {pos}}; }
  static GateOp cnot(std::size_t control, std::size_t target) {
    return {GateKind::Cnot, {control, target}};
  }
  static GateOp swap(std::size_t a, std::size_t b) { return {GateKind::Swap, {a, b}}; }
};

enum class SlotKind : std::uint8_t { Dense, Mms, Consumed };

struct LayoutEntry {
  SlotKind kind = SlotKind::Dense;
  std::size_t index = 0;  // dense qubit ordinal, meaningful for Dense entries

  static LayoutEntry dense(std::size_t index) { return {SlotKind::Dense, index}; }
  static LayoutEntry mms() { return {SlotKind::Mms, 0}; }
};

// Hybrid register: a list of positions, each holding either a simulated dense
// qubit, an exact single-qubit maximally mixed state (MMS), or the remnant of
// a measured-and-discarded qubit. Dense qubits live in independent amplitude
// fragments that merge lazily when an entangling gate couples them.
//
// Trajectory semantics: a two-qubit gate touching an MMS position first
// promotes that position to a dense qubit in a uniformly random computational
// basis state (one trajectory of the mixed state). Single-qubit unitaries and
// SWAPs never promote: they act on MMS positions exactly (unitary invariance
// for 1q gates, relabeling for SWAP).
class QuantumRegister {
 public:
  QuantumRegister() = default;

  std::size_t num_positions() const { return slots_.size(); }
  std::size_t num_dense() const;
  std::size_t num_mms() const;
  std::size_t num_fragments() const { return fragments_.size(); }

  bool is_dense(std::size_t pos) const { return slot(pos).kind == SlotKind::Dense; }
  bool is_mms(std::size_t pos) const { return slot(pos).kind == SlotKind::Mms; }
  bool is_consumed(std::size_t pos) const { return slot(pos).kind == SlotKind::Consumed; }

  // Joint amplitude vector over all dense qubits in dense-id order (small
  // registers only; primarily for tests and serialization of fresh states).
  Amplitudes amplitudes() const;

  // Appends another register; its positions follow the existing ones.
  // Returns the position offset assigned to `other`.
  std::size_t append(QuantumRegister&& other);

  void apply_gate(const GateOp& g);

  // Depolarizing channel at one position: with probability p, applies X, Y or
  // Z chosen uniformly. Returns the sampled Pauli. On an MMS position the
  // state is unchanged (the MMS is invariant) but the sample is still drawn
  // and reported for introspection.
  PauliOp apply_depolarizing(std::size_t pos, double p, std::mt19937_64& rng);

  // Z-basis measurement of each listed position. Dense outcomes follow the
  // Born rule and collapse persistently; an MMS outcome is a fair coin and
  // consumes the slot. Measuring a consumed slot throws.
  std::vector<int> measure_z_all(const std::vector<std::size_t>& positions, std::mt19937_64& rng);

  // Removes a measured (definite-basis-state) dense qubit or a consumed/MMS
  // slot from the simulation, shrinking its fragment. The position itself
  // remains, marked Consumed. Throws if a dense qubit is still in
  // superposition.
  void discard(std::size_t pos);

  // Reduced density matrix of the listed positions, in the listed order.
  // MMS positions contribute exact I/2 factors. Throws if more than
  // `max_qubits` positions are requested or if any position is consumed.
  DensityMatrix densify(const std::vector<std::size_t>& positions,
                        std::size_t max_qubits = kDensifyLimit) const;

  double norm_error() const;  // |1 - total probability|, per fragment maximum

  nlohmann::json to_json() const;
  static QuantumRegister from_json(const nlohmann::json& j);

  void seed_promotions(std::uint64_t seed) { promo_rng_.seed(seed); }

  static constexpr std::size_t kDensifyLimit = 12;

 private:
  struct Slot {
    SlotKind kind = SlotKind::Consumed;
    std::size_t dense_id = 0;
  };
  struct Fragment {
    Amplitudes amps;
    std::vector<std::size_t> members;  // dense ids; members[0] is the MSB
  };

  friend QuantumRegister init_register(const std::vector<Amplitudes>&, std::size_t,
                                       const std::vector<LayoutEntry>&, std::uint64_t);

  const Slot& slot(std::size_t pos) const;
  Slot& slot(std::size_t pos);
  std::pair<std::size_t, std::size_t> locate(std::size_t dense_id) const;  // (fragment, member)
  std::size_t merge_fragments(std::size_t fa, std::size_t fb);             // returns merged index
  std::size_t promote_mms(std::size_t pos);                                // returns dense id
  void apply_1q(std::size_t dense_id, const Eigen::Matrix2cd& u);
  void apply_cnot_dense(std::size_t control_id, std::size_t target_id);
  int measure_dense(std::size_t dense_id, std::mt19937_64& rng);

  std::vector<Slot> slots_;
  std::vector<Fragment> fragments_;
  std::size_t next_dense_id_ = 0;
  std::mt19937_64 promo_rng_{0x9E3779B97F4A7C15ull};
};

// Builds a register from pure dense blocks plus `mms_count` maximally mixed
// positions, arranged according to `layout`. Dense block i of q qubits
// occupies dense ordinals [sum of previous block sizes, +q); layout entries
// reference those ordinals. Layout must cover every dense ordinal exactly once
// and contain exactly `mms_count` MMS entries.
QuantumRegister init_register(const std::vector<Amplitudes>& dense_states, std::size_t mms_count,
                              const std::vector<LayoutEntry>& layout, std::uint64_t seed = 0);

// Convenience: dense blocks first (in order), then the MMS positions.
QuantumRegister init_register(const std::vector<Amplitudes>& dense_states, std::size_t mms_count,
                              std::uint64_t seed = 0);

}  // namespace qhe
