// SPDX-License-Identifier: Apache-2.0
#include "qhe/messages.hpp"

#include <stdexcept>

namespace qhe {

std::string bits_to_string(const std::vector<int>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("bit values must be 0 or 1");
    s.push_back(b ? '1' : '0');
  }
  return s;
}

std::vector<int> bits_from_string(const std::string& s) {
  std::vector<int> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string must be 0/1");
    bits.push_back(c - '0');
  }
  return bits;
}

std::string message_type(const ClassicalMessage& msg) {
  struct Visitor {
    std::string operator()(const TGateCountMsg&) const { return "t_gate_count"; }
    std::string operator()(const MeasurementReportMsg&) const { return "measurement_report"; }
    std::string operator()(const CorrectionInstructionMsg&) const { return "correction_instruction"; }
    std::string operator()(const SyndromeReportMsg&) const { return "syndrome_report"; }
    std::string operator()(const AckMsg&) const { return "ack"; }
    std::string operator()(const HelloMsg&) const { return "hello"; }
    std::string operator()(const CircuitMsg&) const { return "circuit"; }
    std::string operator()(const BlockTransferMsg&) const { return "block_transfer"; }
    std::string operator()(const EvalDoneMsg&) const { return "eval_done"; }
  };
  return std::visit(Visitor{}, msg);
}

nlohmann::json message_to_json(const ClassicalMessage& msg) {
  nlohmann::json j;
  j["type"] = message_type(msg);
  struct Visitor {
    nlohmann::json& j;
    void operator()(const TGateCountMsg& m) const {
      j["t_count"] = m.t_count;
      j["zero_count"] = m.zero_count;
      j["plus_count"] = m.plus_count;
    }
    void operator()(const MeasurementReportMsg& m) const {
      j["block_id"] = m.block_id;
      j["bits"] = bits_to_string(m.bits);
    }
    void operator()(const CorrectionInstructionMsg& m) const {
      j["block_id"] = m.block_id;
      j["ops"] = m.ops;
    }
    void operator()(const SyndromeReportMsg& m) const {
      j["block_id"] = m.block_id;
      j["x_bits"] = bits_to_string(m.x_bits);
      j["z_bits"] = bits_to_string(m.z_bits);
    }
    void operator()(const AckMsg&) const {}
    void operator()(const HelloMsg& m) const {
      j["m"] = m.m;
      j["code"] = m.code;
      j["wires"] = m.wires;
      j["noise_p"] = m.noise_p;
    }
    void operator()(const CircuitMsg& m) const { j["circuit"] = m.circuit.to_json(); }
    void operator()(const BlockTransferMsg& m) const {
      j["role"] = m.role;
      auto& blocks = j["blocks"] = nlohmann::json::array();
      for (const auto& b : m.blocks) blocks.push_back({{"block_id", b.block_id}, {"base", b.base}});
      j["register"] = m.register_state;
    }
    void operator()(const EvalDoneMsg& m) const { j["output_block_ids"] = m.output_block_ids; }
  };
  std::visit(Visitor{j}, msg);
  return j;
}

ClassicalMessage message_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "t_gate_count") {
    TGateCountMsg m;
    m.t_count = j.at("t_count").get<std::size_t>();
    m.zero_count = j.at("zero_count").get<std::size_t>();
    m.plus_count = j.at("plus_count").get<std::size_t>();
    return m;
  }
  if (type == "measurement_report") {
    MeasurementReportMsg m;
    m.block_id = j.at("block_id").get<int>();
    m.bits = bits_from_string(j.at("bits").get<std::string>());
    return m;
  }
  if (type == "correction_instruction") {
    CorrectionInstructionMsg m;
    m.block_id = j.at("block_id").get<int>();
    m.ops = j.at("ops").get<std::string>();
    for (char c : m.ops)
      if (c != 'I' && c != 'S' && c != 'X' && c != 'Z')
        throw std::invalid_argument("correction ops must be I, S, X or Z");
    return m;
  }
  if (type == "syndrome_report") {
    SyndromeReportMsg m;
    m.block_id = j.at("block_id").get<int>();
    m.x_bits = bits_from_string(j.at("x_bits").get<std::string>());
    m.z_bits = bits_from_string(j.at("z_bits").get<std::string>());
    return m;
  }
  if (type == "ack") return AckMsg{};
  if (type == "hello") {
    HelloMsg m;
    m.m = j.at("m").get<std::size_t>();
    m.code = j.at("code").get<std::string>();
    m.wires = j.at("wires").get<std::size_t>();
    m.noise_p = j.at("noise_p").get<double>();
    return m;
  }
  if (type == "circuit") {
    CircuitMsg m;
    m.circuit = LogicalCircuit::from_json(j.at("circuit"));
    return m;
  }
  if (type == "block_transfer") {
    BlockTransferMsg m;
    m.role = j.at("role").get<std::string>();
    for (const auto& b : j.at("blocks"))
      m.blocks.push_back({b.at("block_id").get<int>(), b.at("base").get<std::size_t>()});
    m.register_state = j.at("register");
    return m;
  }
  if (type == "eval_done") {
    EvalDoneMsg m;
    m.output_block_ids = j.at("output_block_ids").get<std::vector<int>>();
    return m;
  }
  throw std::invalid_argument("unknown message type: " + type);
}

std::string encode_message_line(const ClassicalMessage& msg) {
  return message_to_json(msg).dump();
}

ClassicalMessage decode_message_line(const std::string& line) {
  return message_from_json(nlohmann::json::parse(line));
}

}  // namespace qhe
