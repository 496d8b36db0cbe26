// SPDX-License-Identifier: Apache-2.0
#include "qhe/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace qhe {

double logical_error_probability(std::size_t n, std::size_t d, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (n < 1 || d < 1 || d > n + 1) throw std::invalid_argument("invalid code parameters");
  std::size_t t = (d - 1) / 2;
  double sum = 0.0;
  double binom = 1.0;
  for (std::size_t i = 0; i <= t; ++i) {
    if (i > 0) binom = binom * static_cast<double>(n - i + 1) / static_cast<double>(i);
    sum += binom * std::pow(p, static_cast<double>(i)) *
           std::pow(1.0 - p, static_cast<double>(n - i));
  }
  return 1.0 - sum;
}

namespace {

// Runs `trials` independent trials over `jobs` threads; returns the counts of
// trials for which the two flags came back true. Trial i derives its own RNG,
// so the tally is independent of the thread split.
template <typename Fn>
std::pair<std::size_t, std::size_t> parallel_tally(std::size_t trials, int jobs, Fn per_trial) {
  if (jobs < 1) jobs = 1;
  std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(jobs), trials ? trials : 1);
  std::vector<std::size_t> first_counts(nthreads, 0), second_counts(nthreads, 0);
  std::vector<std::thread> workers;
  std::size_t chunk = (trials + nthreads - 1) / nthreads;
  for (std::size_t w = 0; w < nthreads; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(trials, lo + chunk);
    workers.emplace_back([&, w, lo, hi] {
      std::size_t a = 0, b = 0;
      for (std::size_t i = lo; i < hi; ++i) {
        auto [fa, fb] = per_trial(i);
        a += fa;
        b += fb;
      }
      first_counts[w] = a;
      second_counts[w] = b;
    });
  }
  for (auto& t : workers) t.join();
  std::size_t a = 0, b = 0;
  for (std::size_t w = 0; w < nthreads; ++w) {
    a += first_counts[w];
    b += second_counts[w];
  }
  return {a, b};
}

PauliOp sample_depolarizing(double p, std::mt19937_64& rng) {
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u >= p) return PauliOp::I;
  int k = std::uniform_int_distribution<int>(0, 2)(rng);
  return k == 0 ? PauliOp::X : (k == 1 ? PauliOp::Y : PauliOp::Z);
}

}  // namespace

NoiseReport mc_uncorrectable_rate(const CssCode& code, double p, std::size_t trials,
                                  std::uint64_t seed, int jobs) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  std::size_t t = code.correctable_weight();
  auto [heavy, failed] = parallel_tally(trials, jobs, [&](std::size_t trial) {
    std::mt19937_64 rng = derived_rng(seed, trial);
    PauliString error(code.n);
    std::size_t weight = 0;
    for (std::size_t q = 0; q < code.n; ++q) {
      PauliOp op = sample_depolarizing(p, rng);
      error.set_op(q, op);
      weight += (op != PauliOp::I);
    }
    bool uncorrectable = weight > t;
    PauliString residual = decode_syndrome(code, syndrome_of(code, error)) * error;
    bool decoder_failed = !in_stabilizer_group(code, residual);
    return std::pair<bool, bool>{uncorrectable, decoder_failed};
  });
  NoiseReport rep;
  rep.p = p;
  rep.trials = trials;
  rep.uncorrectable_rate = static_cast<double>(heavy) / static_cast<double>(trials);
  rep.decoder_failure_rate = static_cast<double>(failed) / static_cast<double>(trials);
  rep.closed_form_pl = logical_error_probability(code.n, code.d, p);
  rep.standard_error = std::sqrt(rep.uncorrectable_rate * (1.0 - rep.uncorrectable_rate) /
                                 static_cast<double>(trials));
  return rep;
}

NoiseReport end_to_end_noise_experiment(const SessionConfig& session, const NoiseConfig& noise) {
  if (!(noise.p >= 0.0 && noise.p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (noise.trials == 0) throw std::invalid_argument("trials must be positive");
  const CssCode code = session.make_code();
  const std::size_t t = code.correctable_weight();
  const Amplitudes message = ket("+");

  auto [heavy, infidelity] = parallel_tally(noise.trials, noise.jobs, [&](std::size_t trial) {
    std::mt19937_64 rng = derived_rng(noise.seed, trial);
    PermutationKey key = keygen(session.m, code.n, rng);
    CipherBlock data = encrypt(key, code, message, rng(), 0);
    CipherBlock zero = encrypt(key, code, ket("0"), rng(), 1);
    CipherBlock plus = encrypt(key, code, ket("+"), rng(), 2);

    std::size_t code_weight = 0;
    for (std::size_t i = 0; i < key.n; ++i) {
      std::size_t hidden = i * key.group_size() + key.slots[i];
      for (std::size_t s = 0; s < key.group_size(); ++s) {
        PauliOp op = data.reg->apply_depolarizing(i * key.group_size() + s, noise.p, rng);
        if (op != PauliOp::I && i * key.group_size() + s == hidden) ++code_weight;
      }
    }

    // One error-correction round, exactly as the protocol runs it.
    apply_transversal_cnot(data, plus);
    std::vector<int> x_bits = data.reg->measure_z_all(plus.all_positions(), rng);
    for (auto pos : plus.all_positions()) data.reg->discard(pos);
    apply_transversal_cnot(zero, data);
    for (auto pos : zero.all_positions()) data.reg->apply_gate(GateOp::single(GateKind::H, pos));
    std::vector<int> z_bits = data.reg->measure_z_all(zero.all_positions(), rng);
    for (auto pos : zero.all_positions()) data.reg->discard(pos);
    apply_instruction(data, code,
                      client_interpret_and_correct(key, code, x_bits,
                                                   CorrectionPurpose::SyndromeX, rng, 0)
                          .ops);
    apply_instruction(data, code,
                      client_interpret_and_correct(key, code, z_bits,
                                                   CorrectionPurpose::SyndromeZ, rng, 0)
                          .ops);

    double fid = fidelity_with_pure(decrypt(key, code, data).state, message);
    return std::pair<bool, bool>{code_weight > t, fid < 1.0 - 1e-6};
  });

  NoiseReport rep;
  rep.p = noise.p;
  rep.trials = noise.trials;
  rep.uncorrectable_rate = static_cast<double>(heavy) / static_cast<double>(noise.trials);
  rep.decoder_failure_rate = static_cast<double>(infidelity) / static_cast<double>(noise.trials);
  rep.closed_form_pl = logical_error_probability(code.n, code.d, noise.p);
  rep.standard_error = std::sqrt(rep.uncorrectable_rate * (1.0 - rep.uncorrectable_rate) /
                                 static_cast<double>(noise.trials));
  return rep;
}

}  // namespace qhe
