// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "qhe/css_code.hpp"
#include "qhe/protocol.hpp"

namespace qhe {

// Probability that more than t = (d-1)/2 of n qubits are hit by i.i.d.
// depolarizing noise of strength p: 1 - sum_{i<=t} C(n,i) p^i (1-p)^(n-i).
double logical_error_probability(std::size_t n, std::size_t d, double p);

struct NoiseConfig {
  double p = 0.0;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct NoiseReport {
  double p = 0.0;
  std::size_t trials = 0;
  // Fraction of trials whose sampled error had weight > (d-1)/2.
  double uncorrectable_rate = 0.0;
  // Fraction of trials where syndrome decoding failed to restore the code
  // space up to a stabilizer (a strictly different event: some high-weight
  // errors decode correctly by luck, some do not).
  double decoder_failure_rate = 0.0;
  double closed_form_pl = 0.0;
  double standard_error = 0.0;  // binomial stderr of uncorrectable_rate
};

// Monte Carlo over i.i.d. single-qubit depolarizing errors on one code block:
// samples an error, computes its syndrome, decodes, and scores both failure
// metrics. Deterministic for fixed seed regardless of `jobs`.
NoiseReport mc_uncorrectable_rate(const CssCode& code, double p, std::size_t trials,
                                  std::uint64_t seed, int jobs = 1);

// Full-protocol noise experiment: per trial, encrypts a fixed |+> message,
// applies depolarizing noise to every position of the transmitted data block,
// runs one syndrome-extraction round through the real client logic, decrypts,
// and scores fidelity < 1 - 1e-6 as a failure (reported in
// decoder_failure_rate). uncorrectable_rate reports the weight metric
// restricted to the hidden code positions; closed_form_pl is its prediction.
NoiseReport end_to_end_noise_experiment(const SessionConfig& session, const NoiseConfig& noise);

}  // namespace qhe
