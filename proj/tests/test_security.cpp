// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "qhe/security.hpp"

namespace qhe {
namespace {

TEST(DeltaBound, ClosedFormValues) {
  EXPECT_NEAR(delta_bound(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(delta_bound(0, 2), 0.7071067811865476, 1e-15);
  EXPECT_NEAR(delta_bound(2, 256), 0.125, 1e-15);
  EXPECT_NEAR(delta_bound_log2(0, 1.0), 0.7071067811865476, 1e-15);
  EXPECT_THROW(delta_bound(0, 0), std::invalid_argument);
}

TEST(DeltaBound, LogSpaceHandlesHugeKeyCounts) {
  // (2m)^n with m=1, n=2000: the key count 2^2000 overflows double, but the
  // bound 2^-1000 is still a normal double reachable through log2 space.
  double v = delta_bound_log2(0, 2000.0);
  EXPECT_GT(v, 0.0);
  EXPECT_LT(v, 1e-300);
  EXPECT_NEAR(std::log2(v), -1000.0, 1e-9);
}

TEST(DeltaProposed, FormulaValues) {
  EXPECT_NEAR(delta_proposed(0, 1, 7), 0.08838834764831845, 1e-15);
  EXPECT_NEAR(delta_proposed(0, 1, 1), 0.7071067811865476, 1e-15);
  EXPECT_NEAR(delta_proposed(7, 1, 7), 1.0, 1e-12);
  EXPECT_THROW(delta_proposed(0, 0, 1), std::invalid_argument);
}

TEST(DeltaProposed, EachTRoundCostsSqrtTwo) {
  double base = delta_proposed(0, 2, 5);
  EXPECT_NEAR(delta_proposed(1, 2, 5) / base, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(delta_proposed(4, 2, 5) / base, 4.0, 1e-12);
}

TEST(DeltaPrevious, ExactBinomialValues) {
  EXPECT_NEAR(delta_previous(0, 1, 1, PreviousMode::Exact), 0.7071067811865476, 1e-12);
  EXPECT_NEAR(delta_previous(0, 1, 9, PreviousMode::Exact), 0.7071067811865476, 1e-12);
  EXPECT_NEAR(delta_previous(0, 2, 3, PreviousMode::Exact), std::sqrt(1.0 / 6.0), 1e-12);
}

TEST(DeltaPrevious, StirlingAsPrinted) {
  EXPECT_NEAR(delta_previous(0, 4, 4, PreviousMode::Stirling), std::sqrt(4.0 * M_PI / 256.0),
              1e-12);
  EXPECT_NEAR(delta_previous(0, 4, 4, PreviousMode::Stirling), 0.2215567313631895, 1e-12);
  // The printed form scales as sqrt(n).
  double d1 = delta_previous(0, 3, 1, PreviousMode::Stirling);
  double d4 = delta_previous(0, 3, 4, PreviousMode::Stirling);
  EXPECT_NEAR(d4 / d1, 2.0, 1e-12);
}

TEST(DeltaReportFields, ConsistentWithParts) {
  DeltaReport rep = delta_report(2, 3, 5);
  EXPECT_EQ(rep.params.r, 2u);
  EXPECT_NEAR(rep.delta_proposed, delta_proposed(2, 3, 5), 0.0);
  EXPECT_NEAR(rep.delta_previous_exact, delta_previous(2, 3, 5, PreviousMode::Exact), 0.0);
  EXPECT_NEAR(rep.delta_previous_stirling, delta_previous(2, 3, 5, PreviousMode::Stirling), 0.0);
  EXPECT_NEAR(rep.log2_key_count_proposed, 5.0 * std::log2(6.0), 1e-12);
  EXPECT_NEAR(std::exp2(rep.log2_key_count_previous), 20.0, 1e-9);  // C(6,3)
}

TEST(ThresholdN, ExactAnchors) {
  EXPECT_NEAR(threshold_n(1.0), 2.0, 1e-15);
  EXPECT_NEAR(threshold_n(2.0), 2.0, 1e-15);
  EXPECT_NEAR(threshold_n(8.0), 4.0, 1e-15);
  EXPECT_THROW(threshold_n(0.5), std::domain_error);
  EXPECT_THROW(threshold_n(0.0), std::domain_error);
}

TEST(ThresholdN, SeparatesKeyCounts) {
  // Just above the curve the proposed key count wins; just below it loses.
  for (std::size_t m : {2ul, 3ul, 5ul, 8ul}) {
    double t = threshold_n(static_cast<double>(m));
    std::size_t n_hi = static_cast<std::size_t>(std::ceil(t + 1.0));
    double proposed = static_cast<double>(n_hi) * std::log2(2.0 * m);
    double previous = std::lround(std::exp2(delta_report(0, m, n_hi).log2_key_count_previous));
    EXPECT_GT(std::exp2(proposed), previous) << "m=" << m;
  }
  // At m = 8, n = 3 < threshold 4: binomial C(16,8) = 12870 > 16^3 = 4096.
  EXPECT_LT(std::exp2(delta_report(0, 8, 3).log2_key_count_proposed),
            std::exp2(delta_report(0, 8, 3).log2_key_count_previous));
}

TEST(Region, PaperAnchorsWithinTolerance) {
  EXPECT_NEAR(region_fraction(5.0).fraction, 0.6617, 1e-3);
  EXPECT_NEAR(region_fraction(50.0).fraction, 0.8410, 1e-3);
}

TEST(Region, QuadratureConverges) {
  RegionReport coarse = region_fraction(50.0, 49.0 / 2000.0);
  RegionReport fine = region_fraction(50.0, 49.0 / 4000.0);
  EXPECT_LT(std::abs(fine.fraction - coarse.fraction), 1e-4);
  EXPECT_GT(fine.fraction, 0.0);
  EXPECT_LT(fine.fraction, 1.0);
}

TEST(Region, FractionGrowsWithN) {
  double f5 = region_fraction(5.0).fraction;
  double f50 = region_fraction(50.0).fraction;
  double f500 = region_fraction(500.0).fraction;
  EXPECT_LT(f5, f50);
  EXPECT_LT(f50, f500);
}

TEST(Region, IntegerGridMode) {
  RegionReport rep = region_fraction(5.0, 0.0, RegionMode::IntegerGrid);
  // Strict n > threshold over the 25 integer pairs with 1 <= m, n <= 5:
  // m=1,2 admit n in {3,4,5} (threshold 2); m=3 admits n in {3,4,5}
  // (threshold ~2.32); m=4 admits n in {3,4,5} (threshold 2.67); m=5
  // admits n in {4,5} (threshold ~3.01). Total 14/25.
  EXPECT_NEAR(rep.fraction, 14.0 / 25.0, 1e-12);
  EXPECT_THROW(region_fraction(0.5), std::invalid_argument);
}

TEST(EveState, TwoTermAverageForOneGroup) {
  DensityMatrix rho = kron(pure_density(ket("0")), maximally_mixed(1));
  DensityMatrix eve = eve_state(rho, 1, 1);
  DensityMatrix expected = 0.5 * (kron(pure_density(ket("0")), maximally_mixed(1)) +
                                  kron(maximally_mixed(1), pure_density(ket("0"))));
  EXPECT_NEAR((eve - expected).norm(), 0.0, 1e-14);
}

TEST(EveState, FullyMixedInputIsInvariant) {
  DensityMatrix rho = maximally_mixed(2);
  EXPECT_NEAR((eve_state(rho, 1, 1) - rho).norm(), 0.0, 1e-14);
  DensityMatrix rho4 = maximally_mixed(4);
  EXPECT_NEAR((eve_state(rho4, 1, 2) - rho4).norm(), 0.0, 1e-13);
}

TEST(EveState, PreservesTraceAndHermiticity) {
  std::mt19937_64 rng(3);
  DensityMatrix rho = pure_density(random_pure_state(4, rng));  // m=1, n=2 -> 4 qubits
  DensityMatrix eve = eve_state(rho, 1, 2);
  EXPECT_NEAR(eve.trace().real(), 1.0, 1e-12);
  EXPECT_NEAR((eve - eve.adjoint()).norm(), 0.0, 1e-12);
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(eve);
  EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
}

TEST(EveState, EnforcesSizeLimit) {
  EXPECT_THROW(eve_state(maximally_mixed(12), 3, 2), std::length_error);
}

TEST(BruteForceDistance, IdenticalStatesAtZero) {
  DensityMatrix rho = pure_density(ket("+"));
  EXPECT_NEAR(brute_force_eve_distance(rho, rho, 1, 1), 0.0, 1e-12);
}

TEST(BruteForceDistance, BasisStatesOneGroupExactValue) {
  // For m=1, n=1 the two eve states differ by (Z x I + I x Z)/4, whose
  // absolute eigenvalues sum to 1: the distance is exactly 1/2.
  double d = brute_force_eve_distance(pure_density(ket("0")), pure_density(ket("1")), 1, 1);
  EXPECT_NEAR(d, 0.5, 1e-12);
  EXPECT_LE(d, delta_bound(0, 2) + 1e-12);
}

TEST(BruteForceDistance, RandomPairsRespectTheBound) {
  // The scheme encrypts single-qubit messages only, so the sqrt(2^r/|K|)
  // bound is tested on that domain: one code qubit hidden among 2m slots.
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    std::size_t m = 1 + (i % 2);
    DensityMatrix a = pure_density(random_pure_state(1, rng));
    DensityMatrix b = pure_density(random_pure_state(1, rng));
    double bound = delta_bound(0, 2.0 * static_cast<double>(m));
    EXPECT_LE(brute_force_eve_distance(a, b, m, 1), bound + 1e-9)
        << "m=" << m << " i=" << i;
  }
}

TEST(BruteForceDistance, SingleQubitAdversarialMaxima) {
  // Worst-case orthogonal pairs: the eve-state difference is an average of
  // 2m commuting single-qubit Paulis, giving exactly 1/2 at m=1 and 3/8 at
  // m=2 -- both inside the closed-form bound.
  DensityMatrix a = pure_density(ket("0"));
  DensityMatrix b = pure_density(ket("1"));
  EXPECT_NEAR(brute_force_eve_distance(a, b, 1, 1), 0.5, 1e-12);
  EXPECT_NEAR(brute_force_eve_distance(a, b, 2, 1), 0.375, 1e-12);
  EXPECT_LE(0.5, delta_bound(0, 2.0));
  EXPECT_LE(0.375, delta_bound(0, 4.0));
}

TEST(BruteForceDistance, JointMessagesLeakBeyondSingleQubitBound) {
  // Why the scheme refuses multi-qubit plaintexts: hiding the two qubits of
  // |00> vs |11> independently leaks through classical correlations. The
  // eve-state distance is exactly 3/4, above the sqrt(1/(2m)^2) = 1/2 level
  // that a naive extension of the single-qubit bound would predict.
  DensityMatrix a = pure_density(kron(ket("0"), ket("0")));
  DensityMatrix b = pure_density(kron(ket("1"), ket("1")));
  double d = brute_force_eve_distance(a, b, 1, 2);
  EXPECT_NEAR(d, 0.75, 1e-12);
  EXPECT_GT(d, delta_bound(0, 4.0));
}

TEST(BruteForceDistance, MoreDecoysHideBetter) {
  DensityMatrix a = pure_density(ket("0"));
  DensityMatrix b = pure_density(ket("1"));
  double d_m1 = brute_force_eve_distance(a, b, 1, 1);
  double d_m2 = brute_force_eve_distance(a, b, 2, 1);
  EXPECT_LT(d_m2, d_m1);
}

}  // namespace
}  // namespace qhe
