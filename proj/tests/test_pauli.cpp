// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "qhe/pauli.hpp"

namespace qhe {
namespace {

TEST(PauliString, FromStringBasics) {
  PauliString p = PauliString::from_string("XZY");
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(p.op(0), PauliOp::X);
  EXPECT_EQ(p.op(1), PauliOp::Z);
  EXPECT_EQ(p.op(2), PauliOp::Y);
  EXPECT_EQ(p.phase_exponent(), 0);
  EXPECT_EQ(p.to_string(), "XZY");
}

TEST(PauliString, PhasePrefixes) {
  EXPECT_EQ(PauliString::from_string("-X").phase_exponent(), 2);
  EXPECT_EQ(PauliString::from_string("iZ").phase_exponent(), 1);
  EXPECT_EQ(PauliString::from_string("-iY").phase_exponent(), 3);
  EXPECT_EQ(PauliString::from_string("+XX").phase_exponent(), 0);
  EXPECT_EQ(PauliString::from_string("-iY").to_string(), "-iY");
}

TEST(PauliString, SingleAndWeight) {
  PauliString p = PauliString::single(7, 3, PauliOp::Y);
  EXPECT_EQ(p.size(), 7u);
  EXPECT_EQ(p.weight(), 1u);
  EXPECT_EQ(p.op(3), PauliOp::Y);
  EXPECT_EQ(p.to_string(), "IIIYIII");
}

TEST(PauliString, Supports) {
  PauliString p = PauliString::from_string("XZYI");
  EXPECT_EQ(bitvec_to_string(p.x_support()), "1010");
  EXPECT_EQ(bitvec_to_string(p.z_support()), "0110");
}

TEST(PauliString, SingleQubitProductsWithPhase) {
  PauliString X = PauliString::from_string("X");
  PauliString Y = PauliString::from_string("Y");
  PauliString Z = PauliString::from_string("Z");
  EXPECT_EQ((X * Y).to_string(), "iZ");
  EXPECT_EQ((Y * X).to_string(), "-iZ");
  EXPECT_EQ((Y * Z).to_string(), "iX");
  EXPECT_EQ((Z * X).to_string(), "iY");
  EXPECT_EQ((X * X).to_string(), "I");
  // Phase prefixes multiply through.
  EXPECT_EQ((PauliString::from_string("-X") * Y).to_string(), "-iZ");
}

TEST(PauliString, MultiQubitProductPhaseCancels) {
  // (X ⊗ Z)(Z ⊗ X) = (XZ) ⊗ (ZX) = (-iY) ⊗ (iY) = Y ⊗ Y.
  PauliString a = PauliString::from_string("XZ");
  PauliString b = PauliString::from_string("ZX");
  EXPECT_EQ((a * b).to_string(), "YY");
}

TEST(PauliString, Commutation) {
  EXPECT_FALSE(PauliString::from_string("X").commutes_with(PauliString::from_string("Z")));
  EXPECT_TRUE(PauliString::from_string("XX").commutes_with(PauliString::from_string("ZZ")));
  EXPECT_TRUE(PauliString::from_string("XIX").commutes_with(PauliString::from_string("IZI")));
  // XYZ vs ZYX: positions 0 and 2 anticommute pairwise, position 1 matches;
  // an even number of anticommuting positions means the strings commute.
  EXPECT_TRUE(PauliString::from_string("XYZ").commutes_with(PauliString::from_string("ZYX")));
  // Weight-7 logical X anticommutes with weight-7 logical Z.
  EXPECT_FALSE(
      PauliString::from_string("XXXXXXX").commutes_with(PauliString::from_string("ZZZZZZZ")));
}

TEST(PauliString, EqualsUpToPhase) {
  PauliString a = PauliString::from_string("XZ");
  PauliString b = PauliString::from_string("-XZ");
  EXPECT_FALSE(a == b);
  EXPECT_TRUE(a.equals_up_to_phase(b));
}

TEST(PauliString, PhaseValue) {
  EXPECT_EQ(PauliString::from_string("X").phase(), std::complex<double>(1, 0));
  EXPECT_EQ(PauliString::from_string("iX").phase(), std::complex<double>(0, 1));
  EXPECT_EQ(PauliString::from_string("-X").phase(), std::complex<double>(-1, 0));
}

TEST(PauliFromSupports, LiteralConvention) {
  // x=101, z=011 -> X at 0, Z at 1, Y at 2; phase +1.
  PauliString p = pauli_from_supports(bitvec_from_string("101"), bitvec_from_string("011"));
  EXPECT_EQ(p.to_string(), "XZY");
  EXPECT_EQ(p.phase_exponent(), 0);
}

TEST(PauliChars, RoundTrip) {
  for (char c : {'I', 'X', 'Y', 'Z'}) EXPECT_EQ(pauli_char(pauli_from_char(c)), c);
  EXPECT_THROW(pauli_from_char('Q'), std::invalid_argument);
}

}  // namespace
}  // namespace qhe
