// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "qhe/circuit.hpp"
#include "qhe/messages.hpp"
#include "qhe/state.hpp"

namespace qhe {
namespace {

TEST(CircuitParse, GatesCommentsAndWireCount) {
  LogicalCircuit c = LogicalCircuit::parse_text(
      "# prepare and rotate\n"
      "H 0\n"
      "T 0\n"
      "\n"
      "CNOT 0 1\n"
      "S 1\n");
  EXPECT_EQ(c.wires, 2u);
  ASSERT_EQ(c.gates.size(), 4u);
  EXPECT_EQ(c.gates[0], (LogicalGateOp{LogicalGate::H, 0, 0}));
  EXPECT_EQ(c.gates[2], (LogicalGateOp{LogicalGate::Cnot, 0, 1}));
  EXPECT_EQ(c.t_count(), 1u);
}

TEST(CircuitParse, MinWiresAndInlineComment) {
  LogicalCircuit c = LogicalCircuit::parse_text("X 0  # flip\n", 3);
  EXPECT_EQ(c.wires, 3u);
  EXPECT_EQ(c.gates.size(), 1u);
}

TEST(CircuitParse, RejectsMalformedLines) {
  EXPECT_THROW(LogicalCircuit::parse_text("FOO 0\n"), CircuitParseError);
  EXPECT_THROW(LogicalCircuit::parse_text("H\n"), CircuitParseError);
  EXPECT_THROW(LogicalCircuit::parse_text("H 0 1\n"), CircuitParseError);
  EXPECT_THROW(LogicalCircuit::parse_text("CNOT 2 2\n"), CircuitParseError);
  EXPECT_THROW(LogicalCircuit::parse_text("CNOT 0\n"), CircuitParseError);
  EXPECT_THROW(LogicalCircuit::parse_text("H x\n"), CircuitParseError);
}

TEST(CircuitParse, ErrorsNameTheLine) {
  try {
    LogicalCircuit::parse_text("H 0\nBAD 1\n");
    FAIL() << "expected a parse error";
  } catch (const CircuitParseError& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
}

TEST(CircuitParse, TextAndJsonRoundTrip) {
  LogicalCircuit c = LogicalCircuit::parse_text("H 0\nCNOT 0 1\nT 1\nZ 0\n");
  LogicalCircuit from_text = LogicalCircuit::parse_text(c.to_text());
  EXPECT_EQ(from_text, c);
  LogicalCircuit from_json = LogicalCircuit::from_json(c.to_json());
  EXPECT_EQ(from_json, c);
}

TEST(WireMessages, TypeNames) {
  EXPECT_EQ(message_type(TGateCountMsg{}), "t_gate_count");
  EXPECT_EQ(message_type(MeasurementReportMsg{}), "measurement_report");
  EXPECT_EQ(message_type(CorrectionInstructionMsg{}), "correction_instruction");
  EXPECT_EQ(message_type(SyndromeReportMsg{}), "syndrome_report");
  EXPECT_EQ(message_type(AckMsg{}), "ack");
  EXPECT_EQ(message_type(HelloMsg{}), "hello");
  EXPECT_EQ(message_type(CircuitMsg{}), "circuit");
  EXPECT_EQ(message_type(BlockTransferMsg{}), "block_transfer");
  EXPECT_EQ(message_type(EvalDoneMsg{}), "eval_done");
}

TEST(WireMessages, TGateCountRoundTrip) {
  TGateCountMsg msg{3, 2, 2};
  auto back = std::get<TGateCountMsg>(message_from_json(message_to_json(msg)));
  EXPECT_EQ(back.t_count, 3u);
  EXPECT_EQ(back.zero_count, 2u);
  EXPECT_EQ(back.plus_count, 2u);
}

TEST(WireMessages, MeasurementReportBitsAsString) {
  MeasurementReportMsg msg{4, {1, 0, 1, 1}};
  nlohmann::json j = message_to_json(msg);
  EXPECT_EQ(j.at("bits").get<std::string>(), "1011");
  auto back = std::get<MeasurementReportMsg>(message_from_json(j));
  EXPECT_EQ(back.block_id, 4);
  EXPECT_EQ(back.bits, msg.bits);
}

TEST(WireMessages, CorrectionOpsValidated) {
  CorrectionInstructionMsg msg{1, "ISXZ"};
  auto back = std::get<CorrectionInstructionMsg>(message_from_json(message_to_json(msg)));
  EXPECT_EQ(back.ops, "ISXZ");
  nlohmann::json bad = message_to_json(msg);
  bad["ops"] = "ISQZ";
  EXPECT_THROW(message_from_json(bad), std::invalid_argument);
}

TEST(WireMessages, SyndromeReportRoundTrip) {
  SyndromeReportMsg msg{2, {1, 1, 1, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0}};
  auto back = std::get<SyndromeReportMsg>(message_from_json(message_to_json(msg)));
  EXPECT_EQ(back.block_id, 2);
  EXPECT_EQ(back.x_bits, msg.x_bits);
  EXPECT_EQ(back.z_bits, msg.z_bits);
}

TEST(WireMessages, SessionPlumbingRoundTrip) {
  HelloMsg hello{2, "steane", 3, 0.01};
  auto h = std::get<HelloMsg>(message_from_json(message_to_json(hello)));
  EXPECT_EQ(h.m, 2u);
  EXPECT_EQ(h.code, "steane");
  EXPECT_EQ(h.wires, 3u);
  EXPECT_DOUBLE_EQ(h.noise_p, 0.01);

  CircuitMsg cm{LogicalCircuit::parse_text("H 0\nT 0\n")};
  auto c = std::get<CircuitMsg>(message_from_json(message_to_json(cm)));
  EXPECT_EQ(c.circuit, cm.circuit);

  BlockTransferMsg bt{"data", {{0, 0}, {1, 14}}, init_register({ket("0")}, 1, 3).to_json()};
  auto b = std::get<BlockTransferMsg>(message_from_json(message_to_json(bt)));
  EXPECT_EQ(b.role, "data");
  ASSERT_EQ(b.blocks.size(), 2u);
  EXPECT_EQ(b.blocks[1].block_id, 1);
  EXPECT_EQ(b.blocks[1].base, 14u);
  EXPECT_EQ(QuantumRegister::from_json(b.register_state).num_positions(), 2u);

  EvalDoneMsg done{{0, 1}};
  auto d = std::get<EvalDoneMsg>(message_from_json(message_to_json(done)));
  EXPECT_EQ(d.output_block_ids, done.output_block_ids);
}

TEST(WireMessages, LineCodecIsSingleLine) {
  MeasurementReportMsg msg{0, {0, 1}};
  std::string line = encode_message_line(msg);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  auto back = std::get<MeasurementReportMsg>(decode_message_line(line));
  EXPECT_EQ(back.bits, msg.bits);
}

TEST(WireMessages, UnknownTypeRejected) {
  EXPECT_THROW(message_from_json(nlohmann::json{{"type", "bogus"}}), std::invalid_argument);
  EXPECT_THROW(decode_message_line("not json"), nlohmann::json::exception);
}

TEST(BitStrings, RoundTrip) {
  std::vector<int> bits = {1, 0, 0, 1, 1};
  EXPECT_EQ(bits_to_string(bits), "10011");
  EXPECT_EQ(bits_from_string("10011"), bits);
  EXPECT_THROW(bits_from_string("10201"), std::invalid_argument);
}

}  // namespace
}  // namespace qhe
