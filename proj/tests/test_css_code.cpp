// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "qhe/css_code.hpp"

namespace qhe {
namespace {

TEST(SteaneCode, Parameters) {
  CssCode code = steane_code();
  EXPECT_EQ(code.n, 7u);
  EXPECT_EQ(code.k, 1u);
  EXPECT_EQ(code.d, 3u);
  EXPECT_EQ(code.correctable_weight(), 1u);
  EXPECT_EQ(code.h_x.rows(), 3u);
  EXPECT_EQ(code.h_x, code.h_z);
  EXPECT_EQ(code.logical_x[0].weight(), 7u);
  EXPECT_EQ(code.logical_z[0].weight(), 7u);
}

TEST(SteaneCode, ValidationPassesEveryCheck) {
  ValidationReport report = validate_css_properties(steane_code());
  for (const auto& check : report.checks) {
    EXPECT_TRUE(check.passed) << check.name << ": " << check.detail;
  }
  EXPECT_TRUE(report.all_passed());
  // All six structural checks ran.
  EXPECT_NE(report.find("shapes"), nullptr);
  EXPECT_NE(report.find("css_commutation"), nullptr);
  EXPECT_NE(report.find("self_dual"), nullptr);
  EXPECT_NE(report.find("doubly_even"), nullptr);
  EXPECT_NE(report.find("logical_commutation"), nullptr);
  EXPECT_NE(report.find("encoding_circuit"), nullptr);
}

TEST(IdentityCode, ValidationPasses) {
  ValidationReport report = validate_css_properties(identity_code());
  EXPECT_TRUE(report.all_passed());
}

TEST(Validation, DetectsBrokenCommutation) {
  CssCode code = steane_code();
  code.h_x.set(0, 0, 0);  // damage one check bit
  ValidationReport report = validate_css_properties(code);
  EXPECT_FALSE(report.all_passed());
  EXPECT_FALSE(report.find("css_commutation")->passed);
}

TEST(Validation, DetectsBrokenLogicalCommutation) {
  CssCode code = steane_code();
  code.logical_x[0] = PauliString::from_string("XXXXXXI");  // even overlap with logical Z
  ValidationReport report = validate_css_properties(code);
  EXPECT_FALSE(report.all_passed());
  EXPECT_FALSE(report.find("logical_commutation")->passed);
}

TEST(Validation, DetectsBrokenEncoder) {
  CssCode code = steane_code();
  code.encoding_circuit.push_back(GateOp::cnot(0, 1));  // extra gate ruins the state
  ValidationReport report = validate_css_properties(code);
  EXPECT_FALSE(report.all_passed());
  EXPECT_FALSE(report.find("encoding_circuit")->passed);
  // The purely algebraic checks still pass.
  EXPECT_TRUE(report.find("css_commutation")->passed);
  EXPECT_TRUE(report.find("doubly_even")->passed);
}

TEST(SteaneCode, EncoderPreparesUniformCodewordSuperposition) {
  CssCode code = steane_code();
  QuantumRegister reg = init_register({kron(kron(ket("0"), ket("0")), ket("0"))}, 0);
  QuantumRegister rest = init_register({kron(kron(ket("0"), ket("0")),
                                             kron(ket("0"), ket("0")))},
                                       0);
  reg.append(std::move(rest));
  for (const GateOp& g : code.encoding_circuit) reg.apply_gate(g);
  Amplitudes v = reg.amplitudes();
  ASSERT_EQ(v.size(), 128);
  const double amp = 1.0 / std::sqrt(8.0);
  // |0000000> and the check row 1110100 (index 116) are codewords.
  EXPECT_NEAR(std::abs(v(0)), amp, 1e-12);
  EXPECT_NEAR(std::abs(v(116)), amp, 1e-12);
  // A non-codeword has amplitude zero.
  EXPECT_NEAR(std::abs(v(1)), 0.0, 1e-12);
  int support = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > 1e-9) ++support;
  EXPECT_EQ(support, 8);
}

TEST(Syndromes, WeightOneErrorsMapToCheckColumns) {
  CssCode code = steane_code();
  Syndrome s = syndrome_of(code, PauliString::single(7, 0, PauliOp::X));
  EXPECT_EQ(bitvec_to_string(s.x_bits), "111");
  EXPECT_EQ(bitvec_weight(s.z_bits), 0u);
  s = syndrome_of(code, PauliString::single(7, 5, PauliOp::Z));
  EXPECT_EQ(bitvec_weight(s.x_bits), 0u);
  EXPECT_EQ(bitvec_to_string(s.z_bits), "010");
  s = syndrome_of(code, PauliString::single(7, 6, PauliOp::Y));
  EXPECT_EQ(bitvec_to_string(s.x_bits), "001");
  EXPECT_EQ(bitvec_to_string(s.z_bits), "001");
}

TEST(Syndromes, StabilizersAreInvisible) {
  CssCode code = steane_code();
  PauliString stab = pauli_from_supports(code.h_x.row(1), BitVector(7, 0));
  EXPECT_TRUE(syndrome_of(code, stab).is_zero());
  EXPECT_TRUE(in_stabilizer_group(code, stab));
}

TEST(Decoding, AllWeightOneErrorsExactly) {
  CssCode code = steane_code();
  for (std::size_t pos = 0; pos < 7; ++pos) {
    for (PauliOp op : {PauliOp::X, PauliOp::Y, PauliOp::Z}) {
      PauliString error = PauliString::single(7, pos, op);
      PauliString correction = decode_syndrome(code, syndrome_of(code, error));
      EXPECT_TRUE(correction.equals_up_to_phase(error))
          << "pos " << pos << " op " << pauli_char(op);
    }
  }
}

TEST(Decoding, ZeroSyndromeMeansIdentity) {
  CssCode code = steane_code();
  Syndrome zero{BitVector(3, 0), BitVector(3, 0)};
  EXPECT_EQ(decode_syndrome(code, zero).weight(), 0u);
}

TEST(Decoding, ResidualAfterWeightTwoIsStabilizerOrLogical) {
  // Weight-2 X errors exceed the correction radius; the decoder picks some
  // weight-1 representative and the residual is a nontrivial logical exactly
  // when the product lies outside the stabilizer group.
  CssCode code = steane_code();
  PauliString error = PauliString::from_string("XXIIIII");
  PauliString corr = decode_syndrome(code, syndrome_of(code, error));
  PauliString residual = error * corr;
  EXPECT_TRUE(syndrome_of(code, residual).is_zero());
  EXPECT_FALSE(in_stabilizer_group(code, residual));
}

TEST(LogicalReadoutDecoding, CleanAndCorrectedWords) {
  CssCode code = steane_code();
  LogicalReadout r = decode_logical_z_readout(code, {0, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(r.logical_bit, 0);
  EXPECT_FALSE(r.detected_error);
  // 1110100 ^ 1111111 = 0001011 encodes logical one.
  r = decode_logical_z_readout(code, {0, 0, 0, 1, 0, 1, 1});
  EXPECT_EQ(r.logical_bit, 1);
  EXPECT_FALSE(r.detected_error);
  // One flipped bit is corrected and flagged.
  r = decode_logical_z_readout(code, {1, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(r.logical_bit, 0);
  EXPECT_TRUE(r.detected_error);
  r = decode_logical_z_readout(code, {1, 0, 0, 1, 0, 1, 1});
  EXPECT_EQ(r.logical_bit, 1);
  EXPECT_TRUE(r.detected_error);
}

TEST(StabilizerGroup, LogicalsAreNotStabilizers) {
  CssCode code = steane_code();
  EXPECT_FALSE(in_stabilizer_group(code, code.logical_x[0]));
  EXPECT_FALSE(in_stabilizer_group(code, code.logical_z[0]));
  // A Y-type element built from matching X and Z rows is in the group.
  PauliString y_type = pauli_from_supports(code.h_x.row(0), code.h_z.row(0));
  EXPECT_TRUE(in_stabilizer_group(code, y_type));
}

TEST(PhaseUnit, DependsOnLogicalWeight) {
  EXPECT_EQ(steane_code().phase_unit(), GateKind::Sdg);  // weight 7 = 3 mod 4
  EXPECT_EQ(identity_code().phase_unit(), GateKind::S);  // weight 1
}

TEST(CodeSerialization, JsonRoundTrip) {
  CssCode code = steane_code();
  CssCode back = CssCode::from_json(code.to_json());
  EXPECT_EQ(back.name, code.name);
  EXPECT_EQ(back.n, code.n);
  EXPECT_EQ(back.d, code.d);
  EXPECT_EQ(back.h_x, code.h_x);
  EXPECT_EQ(back.h_z, code.h_z);
  EXPECT_EQ(back.logical_x[0], code.logical_x[0]);
  EXPECT_EQ(back.encoding_circuit.size(), code.encoding_circuit.size());
  EXPECT_TRUE(validate_css_properties(back).all_passed());
}

TEST(IdentityCode, TrivialStructure) {
  CssCode code = identity_code();
  EXPECT_EQ(code.n, 1u);
  EXPECT_EQ(code.d, 1u);
  EXPECT_EQ(code.correctable_weight(), 0u);
  EXPECT_TRUE(code.encoding_circuit.empty());
  EXPECT_EQ(code.logical_x[0].to_string(), "X");
  EXPECT_EQ(code.logical_z[0].to_string(), "Z");
}

}  // namespace
}  // namespace qhe
