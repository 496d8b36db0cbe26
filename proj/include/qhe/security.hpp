// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "qhe/state.hpp"

namespace qhe {

struct SecurityParams {
  std::size_t r = 0;  // evaluation rounds (T-gate teleportations)
  std::size_t m = 1;
  std::size_t n = 1;
};

// Distinguishing-advantage bound sqrt(2^r / |K|), computed in log space so
// large key spaces do not overflow.
double delta_bound_log2(double r, double log2_key_count);
double delta_bound(std::size_t r, double key_count);

// This scheme's key space has size (2m)^n.
double delta_proposed(std::size_t r, std::size_t m, std::size_t n);

enum class PreviousMode {
  Exact,     // |K| = C(2m, m): balanced placements of m qubits in 2m slots
  Stirling,  // printed approximation sqrt(pi n 2^r / 4^m)
};

// Bound for the reference scheme this one is compared against, which hides
// the data among one balanced block: |K| = C(2m, m). Exact mode evaluates the
// binomial; Stirling mode reproduces the printed approximation, which also
// carries an n-dependent prefactor.
double delta_previous(std::size_t r, std::size_t m, std::size_t n, PreviousMode mode);

struct DeltaReport {
  SecurityParams params;
  double delta_proposed = 0.0;
  double delta_previous_exact = 0.0;
  double delta_previous_stirling = 0.0;
  double log2_key_count_proposed = 0.0;
  double log2_key_count_previous = 0.0;
};

DeltaReport delta_report(std::size_t r, std::size_t m, std::size_t n);

// Key-count advantage threshold: the proposed scheme has the larger key space
// exactly when n exceeds 2m ln 2 / ln(2m).
double threshold_n(double m);

enum class RegionMode {
  ContinuousArea,  // area fraction of [1,N]^2 above the threshold curve
  IntegerGrid,     // fraction of integer pairs (m, n) in [1,N]^2 above it
};

struct RegionReport {
  double n_max = 0.0;      // N
  double resolution = 0.0; // integration step (area mode)
  double fraction = 0.0;
};

// Fraction of the parameter square [1,N] x [1,N] where the proposed key space
// beats the reference one. Area mode integrates the threshold curve with
// composite Simpson panels of width <= resolution (0 picks a default);
// the denominator is (N-1)^2.
RegionReport region_fraction(double n_max, double resolution = 0.0,
                             RegionMode mode = RegionMode::ContinuousArea);

// Eavesdropper's view: the key-averaged state (1/|K|) sum_k P_k rho P_k^+
// over all (2m)^n placements, where rho is the full 2mn-qubit pre-placement
// state (code qubits first, then the 2mn - n decoy qubits in order).
DensityMatrix eve_state(const DensityMatrix& rho, std::size_t m, std::size_t n,
                        std::size_t limit = 10);

// Exact trace distance between the eavesdropper views of two pre-placement
// code states (each given over the n code qubits; decoys are I/2 each).
double brute_force_eve_distance(const DensityMatrix& rho_code_a,
                                const DensityMatrix& rho_code_b, std::size_t m, std::size_t n,
                                std::size_t limit = 10);

}  // namespace qhe
