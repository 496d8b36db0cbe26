// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhe/css_code.hpp"
#include "qhe/messages.hpp"
#include "qhe/state.hpp"

namespace qhe {

struct ProtocolViolation : std::runtime_error {
  explicit ProtocolViolation(const std::string& what) : std::runtime_error(what) {}
};

// Secret placement key: for each of the n code qubits, the slot (0..2m-1)
// it occupies within its group of 2m positions; the other 2m-1 positions of
// the group hold maximally mixed decoys.
struct PermutationKey {
  std::size_t m = 1;
  std::size_t n = 1;
  std::vector<std::size_t> slots;

  std::size_t group_size() const { return 2 * m; }
  std::size_t block_positions() const { return n * group_size(); }
  double log2_key_count() const;

  nlohmann::json to_json() const;
  static PermutationKey from_json(const nlohmann::json& j);
};

PermutationKey keygen(std::size_t m, std::size_t n, std::mt19937_64& rng);

// Independent, reproducible RNG stream: the same (seed, stream) pair always
// yields the same generator, and distinct streams are decorrelated. Used to
// keep multi-threaded experiments deterministic per trial.
std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t stream);

// A ciphertext: one encoded logical qubit hidden among maximally mixed
// positions inside a (possibly shared) register.
struct CipherBlock {
  int block_id = 0;
  std::shared_ptr<QuantumRegister> reg;
  std::size_t base = 0;
  std::size_t group_count = 1;  // n
  std::size_t group_size = 2;   // 2m

  std::size_t num_positions() const { return group_count * group_size; }
  std::size_t position(std::size_t local) const { return base + local; }
  std::vector<std::size_t> all_positions() const;
};

// Encrypts a single-qubit message: encodes it into the code block and places
// code qubit i at slot key.slots[i] of group i; every other position is an
// exact maximally mixed state. `seed` seeds the register's promotion stream.
CipherBlock encrypt(const PermutationKey& key, const CssCode& code, const Amplitudes& message,
                    std::uint64_t seed = 0, int block_id = 0);

// Cost model constant for decryption-by-relocation: moving a code qubit from
// slot s to slot 0 is counted as s adjacent swaps, and the documented bound
// swap_count <= kSwapCostConstant * (t_rounds + 1) * n * m holds because
// each block contributes at most n * (2m - 1) < 2nm.
inline constexpr std::size_t kSwapCostConstant = 2;

std::size_t swap_count_of(const PermutationKey& key);
std::size_t swap_count_bound(const PermutationKey& key, std::size_t t_rounds);

struct DecryptResult {
  DensityMatrix state;  // reduced state of the logical message qubit
  std::size_t swap_count = 0;
};

// Undoes the placement and the encoding on a block and returns the message
// qubit's reduced density matrix. The block's register is consumed.
DecryptResult decrypt(const PermutationKey& key, const CssCode& code, CipherBlock& block);

// Joint decryption of blocks that may be mutually entangled; returns the
// reduced state over the message qubits in block order (block 0 on the most
// significant bit).
DensityMatrix decrypt_joint(const PermutationKey& key, const CssCode& code,
                            std::vector<CipherBlock>& blocks, std::size_t* swap_count = nullptr);

// Transversal logical gates (X, Z, H, S): the same physical gate on every
// position of the block; for S the physical gate is code.phase_unit().
void apply_transversal(CipherBlock& block, const CssCode& code, LogicalGate g);

// Transversal CNOT between two equally shaped blocks. Merges the registers if
// they are distinct. Pairs of maximally mixed positions are exact fixed points
// and stay symbolic; mismatched keys are not detectable here (the evaluator is
// oblivious) and simply corrupt the ciphertext.
void apply_transversal_cnot(CipherBlock& control, CipherBlock& target);

// Applies a received per-position instruction string over {I, S, X, Z};
// 'S' means the code's phase unit.
void apply_instruction(CipherBlock& block, const CssCode& code, const std::string& ops);

enum class CorrectionPurpose { TGate, SyndromeX, SyndromeZ };

// Client-side interpretation of a server readout. For TGate the bits are the
// Z-basis readout of the measured magic block: the key extracts the code
// bits, the decoded logical bit selects the S correction on the hidden code
// positions, and every decoy position receives an independent uniform I/S.
// For SyndromeX / SyndromeZ the bits are the ancilla readout; the decoded
// single-qubit correction is broadcast as X / Z over the whole group of the
// affected code qubit (decoys are invariant, so the instruction reveals
// nothing about the slot).
CorrectionInstructionMsg client_interpret_and_correct(const PermutationKey& key,
                                                      const CssCode& code,
                                                      const std::vector<int>& bits,
                                                      CorrectionPurpose purpose,
                                                      std::mt19937_64& rng, int data_block_id,
                                                      LogicalReadout* readout = nullptr);

struct ChannelClosed : std::runtime_error {
  ChannelClosed() : std::runtime_error("channel closed") {}
};

class Channel {
 public:
  virtual ~Channel() = default;
  virtual void send(const ClassicalMessage& msg) = 0;
  virtual ClassicalMessage receive() = 0;
};

// Synchronous in-process channel: send() invokes a handler which may queue
// replies; receive() pops them. Suits strict request/reply exchanges.
class CallbackChannel : public Channel {
 public:
  using Replier = std::function<void(const ClassicalMessage&)>;
  using Handler = std::function<void(const ClassicalMessage&, const Replier&)>;

  explicit CallbackChannel(Handler handler) : handler_(std::move(handler)) {}

  void send(const ClassicalMessage& msg) override {
    handler_(msg, [this](const ClassicalMessage& reply) { inbox_.push_back(reply); });
  }
  ClassicalMessage receive() override {
    if (inbox_.empty()) throw ChannelClosed();
    ClassicalMessage msg = std::move(inbox_.front());
    inbox_.pop_front();
    return msg;
  }

 private:
  Handler handler_;
  std::deque<ClassicalMessage> inbox_;
};

// Thread-safe duplex queue pair for running a client and a server as two
// threads in one process.
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_inproc_channel_pair();

enum class SyndromePolicy { Auto, Off, AfterTransmission };

struct SessionConfig {
  std::size_t m = 1;
  std::string n_code = "steane";  // "steane" or "identity"
  std::uint64_t seed = 0;
  double noise_p = 0.0;
  std::string transport = "inproc";  // "inproc" or "tcp"
  std::string address = "127.0.0.1:7733";
  SyndromePolicy syndrome = SyndromePolicy::Auto;

  CssCode make_code() const;
  bool syndrome_enabled() const {
    return syndrome == SyndromePolicy::AfterTransmission ||
           (syndrome == SyndromePolicy::Auto && noise_p > 0.0);
  }

  nlohmann::json to_json() const;
  static SessionConfig from_json(const nlohmann::json& j);
  static SessionConfig load(const std::string& path);
};

enum class BlockRole { Data, Magic, Zero, Plus };
const char* block_role_name(BlockRole role);
BlockRole block_role_from_name(const std::string& name);

// Evaluation-side state machine. Owns the quantum memory; receives blocks,
// runs the circuit with transversal gates plus interactive T-gate and
// syndrome-extraction rounds, and never sees the placement key.
class Server {
 public:
  explicit Server(const SessionConfig& cfg);

  int add_block(QuantumRegister&& reg, BlockRole role, int block_id);
  CipherBlock& block(int id);
  const CssCode& code() const { return code_; }
  std::shared_ptr<QuantumRegister> memory() { return memory_; }

  void apply_gate_transversal(int block_id, LogicalGate g);
  void apply_cnot_transversal(int control_id, int target_id);
  void t_gate_round(int data_id, int magic_id, Channel& ch);
  void syndrome_round(int data_id, int zero_id, int plus_id, Channel& ch);

  // Runs a received circuit over the data blocks (wire w on data_ids[w]),
  // consuming magic/zero/plus ancillas in order.
  void evaluate(const LogicalCircuit& circuit, Channel& ch);

  // Full session over a channel: handshake, block reception, evaluation,
  // output transfer.
  void run_session(Channel& ch);

 private:
  void apply_transmission_noise(CipherBlock& blk);

  SessionConfig cfg_;
  CssCode code_;
  std::shared_ptr<QuantumRegister> memory_;
  std::map<int, CipherBlock> blocks_;
  std::vector<int> data_ids_, magic_ids_, zero_ids_, plus_ids_;
  std::size_t next_magic_ = 0, next_zero_ = 0, next_plus_ = 0;
  std::mt19937_64 rng_;
};

struct TRoundRecord {
  int magic_block_id = 0;
  int data_block_id = 0;
  int outcome = 0;
  bool detected_error = false;
};

struct SessionResult {
  DensityMatrix output_state;  // joint reduced state, wire 0 on the MSB
  std::size_t swap_count = 0;
  std::vector<TRoundRecord> t_rounds;
  std::size_t syndrome_rounds = 0;
};

// Key-holding state machine. Reactive: interprets server reports and answers
// with correction instructions; the active loop drives a full session.
class Client {
 public:
  explicit Client(const SessionConfig& cfg);

  const PermutationKey& key() const { return key_; }
  const CssCode& code() const { return code_; }
  std::mt19937_64& rng() { return rng_; }

  // Registers the data block a forthcoming measurement report refers to.
  void expect_t_round(int data_block_id);

  void handle_message(const ClassicalMessage& msg,
                      const std::function<void(const ClassicalMessage&)>& reply);

  // Drives a complete session over the channel and returns the decrypted
  // joint output state of all wires.
  SessionResult run_session(const LogicalCircuit& circuit,
                            const std::vector<Amplitudes>& inputs, Channel& ch);

  const std::vector<TRoundRecord>& t_round_log() const { return t_rounds_; }
  std::size_t syndrome_round_count() const { return syndrome_rounds_; }
  bool output_ready() const { return output_.has_value(); }

 private:
  CipherBlock make_encrypted_block(const Amplitudes& message, int block_id);

  SessionConfig cfg_;
  CssCode code_;
  PermutationKey key_;
  std::mt19937_64 rng_;
  std::deque<int> pending_t_data_;
  std::vector<TRoundRecord> t_rounds_;
  std::size_t syndrome_rounds_ = 0;
  std::optional<BlockTransferMsg> output_;
};

// Convenience: runs client and server as two threads over an in-process
// channel pair and returns the client's decrypted result.
SessionResult run_inproc_session(const SessionConfig& cfg, const LogicalCircuit& circuit,
                                 const std::vector<Amplitudes>& inputs);

// Plain (unencrypted) reference evaluation of the same logical circuit on a
// dense simulator; returns the exact output state for fidelity comparisons.
Amplitudes plain_circuit_output(const LogicalCircuit& circuit,
                                const std::vector<Amplitudes>& inputs);

}  // namespace qhe
