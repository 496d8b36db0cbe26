// SPDX-License-Identifier: Apache-2.0
#include "qhe/protocol.hpp"

#include <cmath>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <thread>

namespace qhe {

std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

double PermutationKey::log2_key_count() const {
  return static_cast<double>(n) * std::log2(2.0 * static_cast<double>(m));
}

nlohmann::json PermutationKey::to_json() const {
  return {{"m", m}, {"n", n}, {"slots", slots}};
}

PermutationKey PermutationKey::from_json(const nlohmann::json& j) {
  PermutationKey k;
  k.m = j.at("m").get<std::size_t>();
  k.n = j.at("n").get<std::size_t>();
  k.slots = j.at("slots").get<std::vector<std::size_t>>();
  if (k.slots.size() != k.n) throw std::invalid_argument("key slot count mismatch");
  for (auto s : k.slots)
    if (s >= k.group_size()) throw std::invalid_argument("key slot out of range");
  return k;
}

PermutationKey keygen(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  if (m < 1 || n < 1) throw std::invalid_argument("keygen requires m >= 1 and n >= 1");
  PermutationKey key;
  key.m = m;
  key.n = n;
  key.slots.resize(n);
  std::uniform_int_distribution<std::size_t> pick(0, 2 * m - 1);
  for (auto& s : key.slots) s = pick(rng);
  return key;
}

std::vector<std::size_t> CipherBlock::all_positions() const {
  std::vector<std::size_t> out(num_positions());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = base + i;
  return out;
}

namespace {

std::size_t code_position(const PermutationKey& key, std::size_t code_qubit) {
  return code_qubit * key.group_size() + key.slots[code_qubit];
}

GateOp translate_gate(const GateOp& g, const PermutationKey& key, std::size_t base) {
  GateOp out = g;
  for (auto& t : out.targets) t = base + code_position(key, t);
  return out;
}

}  // namespace

CipherBlock encrypt(const PermutationKey& key, const CssCode& code, const Amplitudes& message,
                    std::uint64_t seed, int block_id) {
  if (key.n != code.n) throw std::invalid_argument("key length does not match code length");
  if (code.k != 1)
    throw ProtocolViolation("only k = 1 codes are supported for encryption");
  if (message.size() != 2) throw std::invalid_argument("message must be a single qubit");

  std::vector<Amplitudes> blocks;
  blocks.push_back(message);
  for (std::size_t i = 1; i < code.n; ++i) blocks.push_back(ket("0"));

  std::vector<LayoutEntry> layout(key.block_positions(), LayoutEntry::mms());
  for (std::size_t i = 0; i < code.n; ++i)
    layout[code_position(key, i)] = LayoutEntry::dense(i);

  auto reg = std::make_shared<QuantumRegister>(
      init_register(blocks, key.block_positions() - code.n, layout, seed));
  for (const auto& g : code.encoding_circuit) reg->apply_gate(translate_gate(g, key, 0));

  CipherBlock blk;
  blk.block_id = block_id;
  blk.reg = std::move(reg);
  blk.base = 0;
  blk.group_count = key.n;
  blk.group_size = key.group_size();
  return blk;
}

std::size_t swap_count_of(const PermutationKey& key) {
  std::size_t total = 0;
  for (auto s : key.slots) total += s;
  return total;
}

std::size_t swap_count_bound(const PermutationKey& key, std::size_t t_rounds) {
  return kSwapCostConstant * (t_rounds + 1) * key.n * key.m;
}

namespace {

void check_block_matches_key(const PermutationKey& key, const CipherBlock& block) {
  if (block.group_count != key.n || block.group_size != key.group_size())
    throw ProtocolViolation("block geometry does not match key");
  for (std::size_t i = 0; i < key.n; ++i) {
    if (!block.reg->is_dense(block.position(code_position(key, i))))
      throw ProtocolViolation("key does not match block layout");
  }
}

void inverse_encode(const PermutationKey& key, const CssCode& code, CipherBlock& block) {
  check_block_matches_key(key, block);
  for (auto it = code.encoding_circuit.rbegin(); it != code.encoding_circuit.rend(); ++it) {
    GateOp g = *it;
    g.kind = gate_inverse(g.kind);
    block.reg->apply_gate(translate_gate(g, key, block.base));
  }
}

}  // namespace

DecryptResult decrypt(const PermutationKey& key, const CssCode& code, CipherBlock& block) {
  inverse_encode(key, code, block);
  DecryptResult out;
  out.state = block.reg->densify({block.position(code_position(key, 0))});
  out.swap_count = swap_count_of(key);
  return out;
}

DensityMatrix decrypt_joint(const PermutationKey& key, const CssCode& code,
                            std::vector<CipherBlock>& blocks, std::size_t* swap_count) {
  if (blocks.empty()) throw std::invalid_argument("no blocks to decrypt");
  // Unify registers (cheap concatenation) so one reduced state can be taken.
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (blocks[i].reg == blocks[0].reg) continue;
    std::shared_ptr<QuantumRegister> moved = blocks[i].reg;
    std::size_t offset = blocks[0].reg->append(std::move(*moved));
    for (std::size_t j = i; j < blocks.size(); ++j) {
      if (blocks[j].reg == moved) {
        blocks[j].base += offset;
        blocks[j].reg = blocks[0].reg;
      }
    }
  }
  std::vector<std::size_t> message_positions;
  std::size_t swaps = 0;
  for (auto& blk : blocks) {
    inverse_encode(key, code, blk);
    message_positions.push_back(blk.position(code_position(key, 0)));
    swaps += swap_count_of(key);
  }
  if (swap_count) *swap_count = swaps;
  return blocks[0].reg->densify(message_positions);
}

void apply_transversal(CipherBlock& block, const CssCode& code, LogicalGate g) {
  GateKind kind;
  switch (g) {
    case LogicalGate::X: kind = GateKind::X; break;
    case LogicalGate::Z: kind = GateKind::Z; break;
    case LogicalGate::H: kind = GateKind::H; break;
    case LogicalGate::S: kind = code.phase_unit(); break;
    default:
      throw std::invalid_argument("gate is not transversal in this scheme");
  }
  for (auto pos : block.all_positions()) block.reg->apply_gate(GateOp::single(kind, pos));
}

void apply_transversal_cnot(CipherBlock& control, CipherBlock& target) {
  if (control.group_count != target.group_count || control.group_size != target.group_size)
    throw ProtocolViolation("transversal CNOT requires equally shaped blocks");
  if (control.reg != target.reg) {
    std::size_t offset = control.reg->append(std::move(*target.reg));
    target.reg = control.reg;
    target.base += offset;
  }
  auto& reg = *control.reg;
  for (std::size_t j = 0; j < control.num_positions(); ++j) {
    std::size_t c = control.position(j);
    std::size_t t = target.position(j);
    if (reg.is_consumed(c) || reg.is_consumed(t))
      throw ProtocolViolation("transversal CNOT on consumed positions");
    // A CNOT between two maximally mixed positions leaves I/2 x I/2 exactly
    // invariant: keep both symbolic instead of sampling a trajectory, so
    // decoys survive arbitrarily many interactive rounds.
    if (reg.is_mms(c) && reg.is_mms(t)) continue;
    reg.apply_gate(GateOp::cnot(c, t));
  }
}

void apply_instruction(CipherBlock& block, const CssCode& code, const std::string& ops) {
  if (ops.size() != block.num_positions())
    throw ProtocolViolation("instruction length does not match block");
  for (std::size_t j = 0; j < ops.size(); ++j) {
    GateKind kind;
    switch (ops[j]) {
      case 'I': continue;
      case 'S': kind = code.phase_unit(); break;
      case 'X': kind = GateKind::X; break;
      case 'Z': kind = GateKind::Z; break;
      default: throw ProtocolViolation("instruction ops must be I, S, X or Z");
    }
    block.reg->apply_gate(GateOp::single(kind, block.position(j)));
  }
}

CorrectionInstructionMsg client_interpret_and_correct(const PermutationKey& key,
                                                      const CssCode& code,
                                                      const std::vector<int>& bits,
                                                      CorrectionPurpose purpose,
                                                      std::mt19937_64& rng, int data_block_id,
                                                      LogicalReadout* readout) {
  if (bits.size() != key.block_positions())
    throw std::invalid_argument("readout length does not match block geometry");
  std::vector<int> code_bits(key.n);
  for (std::size_t i = 0; i < key.n; ++i) code_bits[i] = bits[code_position(key, i)];

  CorrectionInstructionMsg out;
  out.block_id = data_block_id;
  out.ops.assign(key.block_positions(), 'I');

  if (purpose == CorrectionPurpose::TGate) {
    LogicalReadout ro = decode_logical_z_readout(code, code_bits);
    if (readout) *readout = ro;
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::size_t pos = 0; pos < key.block_positions(); ++pos)
      out.ops[pos] = coin(rng) ? 'S' : 'I';
    for (std::size_t i = 0; i < key.n; ++i)
      out.ops[code_position(key, i)] = ro.logical_bit ? 'S' : 'I';
    return out;
  }

  BitVector word(key.n);
  for (std::size_t i = 0; i < key.n; ++i) word[i] = code_bits[i] & 1;
  BitVector support;
  char op_char;
  if (purpose == CorrectionPurpose::SyndromeX) {
    Syndrome s;
    s.x_bits = code.h_z.rows() ? code.h_z.multiply(word) : BitVector{};
    s.z_bits = BitVector(code.h_x.rows(), 0);
    support = decode_syndrome(code, s).x_support();
    op_char = 'X';
  } else {
    Syndrome s;
    s.x_bits = BitVector(code.h_z.rows(), 0);
    s.z_bits = code.h_x.rows() ? code.h_x.multiply(word) : BitVector{};
    support = decode_syndrome(code, s).z_support();
    op_char = 'Z';
  }
  for (std::size_t i = 0; i < key.n; ++i) {
    if (!support[i]) continue;
    for (std::size_t s = 0; s < key.group_size(); ++s)
      out.ops[i * key.group_size() + s] = op_char;
  }
  return out;
}

// --- in-process duplex channel ---------------------------------------------

namespace {

class MessageQueue {
 public:
  void push(ClassicalMessage msg) {
    {
      std::lock_guard<std::mutex> lk(mu_);
      q_.push_back(std::move(msg));
    }
    cv_.notify_one();
  }

  ClassicalMessage pop() {
    std::unique_lock<std::mutex> lk(mu_);
    cv_.wait(lk, [this] { return !q_.empty() || closed_; });
    if (q_.empty()) throw ChannelClosed();
    ClassicalMessage msg = std::move(q_.front());
    q_.pop_front();
    return msg;
  }

  void close() {
    {
      std::lock_guard<std::mutex> lk(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<ClassicalMessage> q_;
  bool closed_ = false;
};

class QueueChannel : public Channel {
 public:
  QueueChannel(std::shared_ptr<MessageQueue> in, std::shared_ptr<MessageQueue> out)
      : in_(std::move(in)), out_(std::move(out)) {}
  ~QueueChannel() override {
    in_->close();
    out_->close();
  }
  void send(const ClassicalMessage& msg) override { out_->push(msg); }
  ClassicalMessage receive() override { return in_->pop(); }

 private:
  std::shared_ptr<MessageQueue> in_;
  std::shared_ptr<MessageQueue> out_;
};

}  // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_inproc_channel_pair() {
  auto ab = std::make_shared<MessageQueue>();
  auto ba = std::make_shared<MessageQueue>();
  return {std::make_unique<QueueChannel>(ba, ab), std::make_unique<QueueChannel>(ab, ba)};
}

// --- session configuration --------------------------------------------------

CssCode SessionConfig::make_code() const {
  if (n_code == "steane") return steane_code();
  if (n_code == "identity") return identity_code();
  throw std::invalid_argument("unknown code name: " + n_code);
}

namespace {

std::string syndrome_policy_name(SyndromePolicy p) {
  switch (p) {
    case SyndromePolicy::Auto: return "auto";
    case SyndromePolicy::Off: return "off";
    case SyndromePolicy::AfterTransmission: return "after_transmission";
  }
  throw std::logic_error("bad SyndromePolicy");
}

SyndromePolicy syndrome_policy_from_name(const std::string& s) {
  if (s == "auto") return SyndromePolicy::Auto;
  if (s == "off") return SyndromePolicy::Off;
  if (s == "after_transmission") return SyndromePolicy::AfterTransmission;
  throw std::invalid_argument("unknown syndrome policy: " + s);
}

}  // namespace

nlohmann::json SessionConfig::to_json() const {
  return {{"m", m},
          {"n_code", n_code},
          {"seed", seed},
          {"noise_p", noise_p},
          {"transport", transport},
          {"address", address},
          {"syndrome", syndrome_policy_name(syndrome)}};
}

SessionConfig SessionConfig::from_json(const nlohmann::json& j) {
  SessionConfig cfg;
  cfg.m = j.value("m", std::size_t{1});
  cfg.n_code = j.value("n_code", std::string("steane"));
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.noise_p = j.value("noise_p", 0.0);
  cfg.transport = j.value("transport", std::string("inproc"));
  cfg.address = j.value("address", std::string("127.0.0.1:7733"));
  cfg.syndrome = syndrome_policy_from_name(j.value("syndrome", std::string("auto")));
  if (cfg.m < 1) throw std::invalid_argument("m must be at least 1");
  if (cfg.transport != "inproc" && cfg.transport != "tcp")
    throw std::invalid_argument("transport must be inproc or tcp");
  if (!(cfg.noise_p >= 0.0 && cfg.noise_p <= 1.0))
    throw std::invalid_argument("noise_p must lie in [0, 1]");
  cfg.make_code();  // validates the code name
  return cfg;
}

SessionConfig SessionConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open session config: " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

const char* block_role_name(BlockRole role) {
  switch (role) {
    case BlockRole::Data: return "data";
    case BlockRole::Magic: return "magic";
    case BlockRole::Zero: return "zero";
    case BlockRole::Plus: return "plus";
  }
  throw std::logic_error("bad BlockRole");
}

BlockRole block_role_from_name(const std::string& name) {
  if (name == "data") return BlockRole::Data;
  if (name == "magic") return BlockRole::Magic;
  if (name == "zero") return BlockRole::Zero;
  if (name == "plus") return BlockRole::Plus;
  throw std::invalid_argument("unknown block role: " + name);
}

// --- server ------------------------------------------------------------------

Server::Server(const SessionConfig& cfg)
    : cfg_(cfg),
      code_(cfg.make_code()),
      memory_(std::make_shared<QuantumRegister>()),
      rng_(derived_rng(cfg.seed, 0x5e3a11)) {
  memory_->seed_promotions(derived_rng(cfg.seed, 0x9a0b0)());
}

int Server::add_block(QuantumRegister&& reg, BlockRole role, int block_id) {
  if (blocks_.count(block_id)) throw ProtocolViolation("duplicate block id");
  std::size_t expected = code_.n * 2 * cfg_.m;
  if (reg.num_positions() != expected)
    throw ProtocolViolation("block has the wrong number of positions");
  std::size_t base = memory_->append(std::move(reg));
  CipherBlock blk;
  blk.block_id = block_id;
  blk.reg = memory_;
  blk.base = base;
  blk.group_count = code_.n;
  blk.group_size = 2 * cfg_.m;
  auto [it, ok] = blocks_.emplace(block_id, std::move(blk));
  (void)ok;
  switch (role) {
    case BlockRole::Data:
      data_ids_.push_back(block_id);
      apply_transmission_noise(it->second);
      break;
    case BlockRole::Magic: magic_ids_.push_back(block_id); break;
    case BlockRole::Zero: zero_ids_.push_back(block_id); break;
    case BlockRole::Plus: plus_ids_.push_back(block_id); break;
  }
  return block_id;
}

CipherBlock& Server::block(int id) {
  auto it = blocks_.find(id);
  if (it == blocks_.end()) throw ProtocolViolation("unknown block id");
  return it->second;
}

void Server::apply_transmission_noise(CipherBlock& blk) {
  if (cfg_.noise_p <= 0.0) return;
  for (auto pos : blk.all_positions()) memory_->apply_depolarizing(pos, cfg_.noise_p, rng_);
}

void Server::apply_gate_transversal(int block_id, LogicalGate g) {
  apply_transversal(block(block_id), code_, g);
}

void Server::apply_cnot_transversal(int control_id, int target_id) {
  apply_transversal_cnot(block(control_id), block(target_id));
}

namespace {

CorrectionInstructionMsg expect_instruction(Channel& ch, int block_id) {
  ClassicalMessage msg = ch.receive();
  auto* instr = std::get_if<CorrectionInstructionMsg>(&msg);
  if (!instr) throw ProtocolViolation("expected a correction_instruction message");
  if (instr->block_id != block_id)
    throw ProtocolViolation("correction instruction references the wrong block");
  return *instr;
}

}  // namespace

void Server::t_gate_round(int data_id, int magic_id, Channel& ch) {
  CipherBlock& data = block(data_id);
  CipherBlock& magic = block(magic_id);
  apply_transversal_cnot(data, magic);
  MeasurementReportMsg report;
  report.block_id = magic_id;
  report.bits = memory_->measure_z_all(magic.all_positions(), rng_);
  ch.send(report);
  CorrectionInstructionMsg instr = expect_instruction(ch, data_id);
  apply_instruction(data, code_, instr.ops);
  for (auto pos : magic.all_positions()) memory_->discard(pos);
}

void Server::syndrome_round(int data_id, int zero_id, int plus_id, Channel& ch) {
  CipherBlock& data = block(data_id);
  CipherBlock& zero = block(zero_id);
  CipherBlock& plus = block(plus_id);

  // Bit-flip pass: data errors copy onto the |+> ancilla, read out in Z.
  apply_transversal_cnot(data, plus);
  SyndromeReportMsg report;
  report.block_id = data_id;
  report.x_bits = memory_->measure_z_all(plus.all_positions(), rng_);
  for (auto pos : plus.all_positions()) memory_->discard(pos);

  // Phase-flip pass: data phases copy onto the |0> ancilla, read out in X.
  apply_transversal_cnot(zero, data);
  for (auto pos : zero.all_positions()) memory_->apply_gate(GateOp::single(GateKind::H, pos));
  report.z_bits = memory_->measure_z_all(zero.all_positions(), rng_);
  for (auto pos : zero.all_positions()) memory_->discard(pos);

  ch.send(report);
  apply_instruction(data, code_, expect_instruction(ch, data_id).ops);
  apply_instruction(data, code_, expect_instruction(ch, data_id).ops);
}

void Server::evaluate(const LogicalCircuit& circuit, Channel& ch) {
  if (data_ids_.size() != circuit.wires)
    throw ProtocolViolation("data block count does not match circuit wires");
  auto next_of = [](std::vector<int>& ids, std::size_t& cursor, const char* what) {
    if (cursor >= ids.size())
      throw ProtocolViolation(std::string("ran out of ") + what + " blocks");
    return ids[cursor++];
  };
  if (cfg_.syndrome_enabled()) {
    for (int data_id : data_ids_) {
      int zero_id = next_of(zero_ids_, next_zero_, "zero");
      int plus_id = next_of(plus_ids_, next_plus_, "plus");
      syndrome_round(data_id, zero_id, plus_id, ch);
    }
  }
  for (const auto& g : circuit.gates) {
    switch (g.kind) {
      case LogicalGate::X:
      case LogicalGate::Z:
      case LogicalGate::H:
      case LogicalGate::S:
        apply_gate_transversal(data_ids_[g.wire_a], g.kind);
        break;
      case LogicalGate::Cnot:
        apply_cnot_transversal(data_ids_[g.wire_a], data_ids_[g.wire_b]);
        break;
      case LogicalGate::T:
        t_gate_round(data_ids_[g.wire_a], next_of(magic_ids_, next_magic_, "magic"), ch);
        break;
    }
  }
}

void Server::run_session(Channel& ch) {
  ClassicalMessage msg = ch.receive();
  auto* hello = std::get_if<HelloMsg>(&msg);
  if (!hello) throw ProtocolViolation("expected hello");
  if (hello->m != cfg_.m || hello->code != cfg_.n_code)
    throw ProtocolViolation("session parameters do not match server configuration");
  ch.send(AckMsg{});

  msg = ch.receive();
  auto* circ = std::get_if<CircuitMsg>(&msg);
  if (!circ) throw ProtocolViolation("expected circuit");
  const LogicalCircuit circuit = circ->circuit;
  if (circuit.wires != hello->wires)
    throw ProtocolViolation("circuit wire count does not match hello");

  std::size_t sc = cfg_.syndrome_enabled() ? circuit.wires : 0;
  TGateCountMsg counts;
  counts.t_count = circuit.t_count();
  counts.zero_count = sc;
  counts.plus_count = sc;
  ch.send(counts);

  std::size_t expected = circuit.wires + counts.t_count + counts.zero_count + counts.plus_count;
  for (std::size_t i = 0; i < expected; ++i) {
    msg = ch.receive();
    auto* bt = std::get_if<BlockTransferMsg>(&msg);
    if (!bt) throw ProtocolViolation("expected block_transfer");
    if (bt->blocks.size() != 1)
      throw ProtocolViolation("inbound transfers carry exactly one block");
    QuantumRegister reg = QuantumRegister::from_json(bt->register_state);
    add_block(std::move(reg), block_role_from_name(bt->role), bt->blocks.front().block_id);
  }

  evaluate(circuit, ch);

  BlockTransferMsg out;
  out.role = "output";
  for (int id : data_ids_) out.blocks.push_back({id, block(id).base});
  out.register_state = memory_->to_json();
  ch.send(out);
}

// --- client ------------------------------------------------------------------

Client::Client(const SessionConfig& cfg)
    : cfg_(cfg), code_(cfg.make_code()), rng_(derived_rng(cfg.seed, 0xc11e47)) {
  key_ = keygen(cfg_.m, code_.n, rng_);
}

void Client::expect_t_round(int data_block_id) { pending_t_data_.push_back(data_block_id); }

CipherBlock Client::make_encrypted_block(const Amplitudes& message, int block_id) {
  return encrypt(key_, code_, message, rng_(), block_id);
}

void Client::handle_message(const ClassicalMessage& msg,
                            const std::function<void(const ClassicalMessage&)>& reply) {
  if (const auto* report = std::get_if<MeasurementReportMsg>(&msg)) {
    if (pending_t_data_.empty())
      throw ProtocolViolation("unexpected measurement report");
    int data_id = pending_t_data_.front();
    pending_t_data_.pop_front();
    LogicalReadout ro;
    CorrectionInstructionMsg instr = client_interpret_and_correct(
        key_, code_, report->bits, CorrectionPurpose::TGate, rng_, data_id, &ro);
    t_rounds_.push_back({report->block_id, data_id, ro.logical_bit, ro.detected_error});
    reply(instr);
    return;
  }
  if (const auto* report = std::get_if<SyndromeReportMsg>(&msg)) {
    reply(client_interpret_and_correct(key_, code_, report->x_bits, CorrectionPurpose::SyndromeX,
                                       rng_, report->block_id));
    reply(client_interpret_and_correct(key_, code_, report->z_bits, CorrectionPurpose::SyndromeZ,
                                       rng_, report->block_id));
    ++syndrome_rounds_;
    return;
  }
  if (const auto* bt = std::get_if<BlockTransferMsg>(&msg)) {
    if (bt->role != "output") throw ProtocolViolation("unexpected block transfer role");
    output_ = *bt;
    return;
  }
  if (std::holds_alternative<AckMsg>(msg) || std::holds_alternative<TGateCountMsg>(msg) ||
      std::holds_alternative<EvalDoneMsg>(msg))
    return;  // handshake/bookkeeping messages carry no action here
  throw ProtocolViolation("client received an unexpected message of type " + message_type(msg));
}

SessionResult Client::run_session(const LogicalCircuit& circuit,
                                  const std::vector<Amplitudes>& inputs, Channel& ch) {
  if (inputs.size() != circuit.wires)
    throw std::invalid_argument("input count does not match circuit wires");

  HelloMsg hello;
  hello.m = cfg_.m;
  hello.code = cfg_.n_code;
  hello.wires = circuit.wires;
  hello.noise_p = cfg_.noise_p;
  ch.send(hello);
  ClassicalMessage msg = ch.receive();
  if (!std::holds_alternative<AckMsg>(msg)) throw ProtocolViolation("expected ack");

  ch.send(CircuitMsg{circuit});
  msg = ch.receive();
  auto* counts = std::get_if<TGateCountMsg>(&msg);
  if (!counts) throw ProtocolViolation("expected t_gate_count");
  if (counts->t_count != circuit.t_count())
    throw ProtocolViolation("server t-gate count disagrees with the circuit");

  int next_id = 0;
  auto send_block = [&](const Amplitudes& state, BlockRole role) {
    CipherBlock blk = make_encrypted_block(state, next_id++);
    BlockTransferMsg bt;
    bt.role = block_role_name(role);
    bt.blocks.push_back({blk.block_id, 0});
    bt.register_state = blk.reg->to_json();
    ch.send(bt);
    return blk.block_id;
  };

  std::vector<int> wire_block(circuit.wires);
  for (std::size_t w = 0; w < circuit.wires; ++w) wire_block[w] = send_block(inputs[w], BlockRole::Data);

  Amplitudes magic(2);
  magic << 1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), M_PI / 4);
  for (std::size_t t = 0; t < counts->t_count; ++t) send_block(magic, BlockRole::Magic);
  for (std::size_t i = 0; i < counts->zero_count; ++i) send_block(ket("0"), BlockRole::Zero);
  for (std::size_t i = 0; i < counts->plus_count; ++i) send_block(ket("+"), BlockRole::Plus);

  for (const auto& g : circuit.gates)
    if (g.kind == LogicalGate::T) expect_t_round(wire_block[g.wire_a]);

  while (!output_) {
    msg = ch.receive();
    handle_message(msg, [&ch](const ClassicalMessage& reply) { ch.send(reply); });
  }

  auto reg = std::make_shared<QuantumRegister>(QuantumRegister::from_json(output_->register_state));
  std::vector<CipherBlock> out_blocks;
  for (std::size_t w = 0; w < circuit.wires; ++w) {
    const BlockRef* ref = nullptr;
    for (const auto& r : output_->blocks)
      if (r.block_id == wire_block[w]) ref = &r;
    if (!ref) throw ProtocolViolation("output transfer is missing a wire block");
    CipherBlock blk;
    blk.block_id = ref->block_id;
    blk.reg = reg;
    blk.base = ref->base;
    blk.group_count = key_.n;
    blk.group_size = key_.group_size();
    out_blocks.push_back(blk);
  }

  SessionResult result;
  std::size_t decrypt_swaps = 0;
  result.output_state = decrypt_joint(key_, code_, out_blocks, &decrypt_swaps);
  // Each T round's magic readout is aligned with the same slot offsets the
  // key assigns, so it is costed like a block decryption.
  result.swap_count = decrypt_swaps + t_rounds_.size() * swap_count_of(key_);
  result.t_rounds = t_rounds_;
  result.syndrome_rounds = syndrome_rounds_;
  return result;
}

SessionResult run_inproc_session(const SessionConfig& cfg, const LogicalCircuit& circuit,
                                 const std::vector<Amplitudes>& inputs) {
  auto [client_end, server_end] = make_inproc_channel_pair();
  std::shared_ptr<Channel> client_ch = std::move(client_end);
  std::shared_ptr<Channel> server_ch = std::move(server_end);

  std::exception_ptr server_err;
  std::thread server_thread([cfg, server_ch, &server_err] {
    try {
      Server server(cfg);
      server.run_session(*server_ch);
    } catch (...) {
      server_err = std::current_exception();
    }
  });

  SessionResult result;
  std::exception_ptr client_err;
  try {
    Client client(cfg);
    result = client.run_session(circuit, inputs, *client_ch);
  } catch (...) {
    client_err = std::current_exception();
  }
  client_ch.reset();  // closes the queues so a blocked server unwinds
  server_thread.join();
  if (server_err && !client_err) std::rethrow_exception(server_err);
  if (client_err) std::rethrow_exception(client_err);
  return result;
}

Amplitudes plain_circuit_output(const LogicalCircuit& circuit,
                                const std::vector<Amplitudes>& inputs) {
  if (inputs.size() != circuit.wires)
    throw std::invalid_argument("input count does not match circuit wires");
  QuantumRegister reg = init_register(inputs, 0);
  for (const auto& g : circuit.gates) {
    switch (g.kind) {
      case LogicalGate::X: reg.apply_gate(GateOp::single(GateKind::X, g.wire_a)); break;
      case LogicalGate::Z: reg.apply_gate(GateOp::single(GateKind::Z, g.wire_a)); break;
      case LogicalGate::H: reg.apply_gate(GateOp::single(GateKind::H, g.wire_a)); break;
      case LogicalGate::S: reg.apply_gate(GateOp::single(GateKind::S, g.wire_a)); break;
      case LogicalGate::T: reg.apply_gate(GateOp::single(GateKind::T, g.wire_a)); break;
      case LogicalGate::Cnot: reg.apply_gate(GateOp::cnot(g.wire_a, g.wire_b)); break;
    }
  }
  return reg.amplitudes();
}

}  // namespace qhe
