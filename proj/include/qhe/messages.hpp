// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "qhe/circuit.hpp"

namespace qhe {

// Classical wire messages exchanged during an evaluation session. Bit vectors
// travel as strings of '0'/'1'; per-position gate instructions travel as
// strings over {I, S, X, Z} with one character per block position.

struct TGateCountMsg {
  std::size_t t_count = 0;
  std::size_t zero_count = 0;
  std::size_t plus_count = 0;
};

struct MeasurementReportMsg {
  int block_id = 0;
  std::vector<int> bits;
};

struct CorrectionInstructionMsg {
  int block_id = 0;
  std::string ops;  // one of I/S/X/Z per position
};

struct SyndromeReportMsg {
  int block_id = 0;
  std::vector<int> x_bits;  // Z-basis readout of the |+> ancilla block
  std::vector<int> z_bits;  // X-basis readout of the |0> ancilla block
};

struct AckMsg {};

// Session-plumbing messages. These carry the simulated quantum channel and
// session setup over the same transport as the protocol messages above.
struct HelloMsg {
  std::size_t m = 1;
  std::string code = "steane";
  std::size_t wires = 1;
  double noise_p = 0.0;
};

struct CircuitMsg {
  LogicalCircuit circuit;
};

struct BlockRef {
  int block_id = 0;
  std::size_t base = 0;
};

struct BlockTransferMsg {
  std::string role;  // "data", "magic", "zero", "plus", "output"
  std::vector<BlockRef> blocks;
  nlohmann::json register_state;
};

struct EvalDoneMsg {
  std::vector<int> output_block_ids;
};

using ClassicalMessage =
    std::variant<TGateCountMsg, MeasurementReportMsg, CorrectionInstructionMsg, SyndromeReportMsg,
                 AckMsg, HelloMsg, CircuitMsg, BlockTransferMsg, EvalDoneMsg>;

std::string message_type(const ClassicalMessage& msg);
nlohmann::json message_to_json(const ClassicalMessage& msg);
ClassicalMessage message_from_json(const nlohmann::json& j);

// One-line wire codec: compact JSON, no embedded newlines.
std::string encode_message_line(const ClassicalMessage& msg);
ClassicalMessage decode_message_line(const std::string& line);

std::string bits_to_string(const std::vector<int>& bits);
std::vector<int> bits_from_string(const std::string& s);

}  // namespace qhe
