// SPDX-License-Identifier: Apache-2.0
#include "qhe/security.hpp"

#include <cmath>
#include <stdexcept>

namespace qhe {

double delta_bound_log2(double r, double log2_key_count) {
  return std::exp2(0.5 * (r - log2_key_count));
}

double delta_bound(std::size_t r, double key_count) {
  if (!(key_count >= 1.0)) throw std::invalid_argument("key_count must be at least 1");
  return delta_bound_log2(static_cast<double>(r), std::log2(key_count));
}

namespace {

double log2_group(std::size_t m) { return std::log2(2.0 * static_cast<double>(m)); }

// log2 of the central binomial coefficient C(2m, m).
double log2_central_binomial(std::size_t m) {
  double a = std::lgamma(2.0 * static_cast<double>(m) + 1.0);
  double b = std::lgamma(static_cast<double>(m) + 1.0);
  return (a - 2.0 * b) / std::log(2.0);
}

}  // namespace

double delta_proposed(std::size_t r, std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw std::invalid_argument("m and n must be at least 1");
  return delta_bound_log2(static_cast<double>(r), static_cast<double>(n) * log2_group(m));
}

double delta_previous(std::size_t r, std::size_t m, std::size_t n, PreviousMode mode) {
  if (m < 1 || n < 1) throw std::invalid_argument("m and n must be at least 1");
  if (mode == PreviousMode::Exact)
    return delta_bound_log2(static_cast<double>(r), log2_central_binomial(m));
  // The printed approximation: sqrt(pi n 2^r / 4^m), reproduced verbatim.
  double log2_val = std::log2(M_PI * static_cast<double>(n)) + static_cast<double>(r) -
                    2.0 * static_cast<double>(m);
  return std::exp2(0.5 * log2_val);
}

DeltaReport delta_report(std::size_t r, std::size_t m, std::size_t n) {
  DeltaReport rep;
  rep.params = {r, m, n};
  rep.delta_proposed = delta_proposed(r, m, n);
  rep.delta_previous_exact = delta_previous(r, m, n, PreviousMode::Exact);
  rep.delta_previous_stirling = delta_previous(r, m, n, PreviousMode::Stirling);
  rep.log2_key_count_proposed = static_cast<double>(n) * log2_group(m);
  rep.log2_key_count_previous = log2_central_binomial(m);
  return rep;
}

double threshold_n(double m) {
  if (!(m > 0.5)) throw std::domain_error("threshold_n requires m > 0.5");
  // 2m ln2 / ln(2m), written via log2 so powers of two stay exact.
  return 2.0 * m / std::log2(2.0 * m);
}

RegionReport region_fraction(double n_max, double resolution, RegionMode mode) {
  if (!(n_max > 1.0)) throw std::invalid_argument("region_fraction requires N > 1");
  if (resolution < 0.0) throw std::invalid_argument("resolution must be positive");
  RegionReport rep;
  rep.n_max = n_max;

  if (mode == RegionMode::IntegerGrid) {
    std::size_t side = static_cast<std::size_t>(n_max);
    std::size_t count = 0;
    for (std::size_t m = 1; m <= side; ++m) {
      double t = threshold_n(static_cast<double>(m));
      if (t >= static_cast<double>(side)) continue;
      std::size_t first = static_cast<std::size_t>(std::floor(t)) + 1;
      if (static_cast<double>(first) <= t) ++first;  // strict inequality
      if (first <= side) count += side - first + 1;
    }
    rep.resolution = 1.0;
    rep.fraction = static_cast<double>(count) / (static_cast<double>(side) * side);
    return rep;
  }

  double width = n_max - 1.0;
  if (resolution == 0.0) resolution = width / 2e5;
  std::size_t panels = static_cast<std::size_t>(std::ceil(width / resolution));
  if (panels < 2) panels = 2;
  if (panels % 2) ++panels;
  double h = width / static_cast<double>(panels);
  auto integrand = [n_max](double m) {
    double t = threshold_n(m);
    if (t < 1.0) t = 1.0;
    if (t > n_max) t = n_max;
    return n_max - t;
  };
  double sum = integrand(1.0) + integrand(n_max);
  for (std::size_t i = 1; i < panels; ++i)
    sum += integrand(1.0 + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  double area = sum * h / 3.0;
  rep.resolution = h;
  rep.fraction = area / (width * width);
  return rep;
}

namespace {

std::vector<std::size_t> placement_of(const std::vector<std::size_t>& slots, std::size_t m,
                                      std::size_t n) {
  std::size_t total = 2 * m * n;
  std::vector<std::size_t> perm(total);
  std::vector<bool> taken(total, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t target = i * 2 * m + slots[i];
    perm[i] = target;
    taken[target] = true;
  }
  std::size_t next = 0;
  for (std::size_t d = n; d < total; ++d) {
    while (taken[next]) ++next;
    perm[d] = next;
    taken[next] = true;
  }
  return perm;
}

}  // namespace

DensityMatrix eve_state(const DensityMatrix& rho, std::size_t m, std::size_t n,
                        std::size_t limit) {
  std::size_t total = 2 * m * n;
  if (total > limit) throw std::length_error("eve_state exceeds the oracle size limit");
  std::size_t dim = std::size_t{1} << total;
  if (static_cast<std::size_t>(rho.rows()) != dim ||
      static_cast<std::size_t>(rho.cols()) != dim)
    throw std::invalid_argument("state dimension does not match 2mn qubits");
  DensityMatrix acc = DensityMatrix::Zero(dim, dim);
  std::vector<std::size_t> slots(n, 0);
  std::size_t key_count = 0;
  bool done = false;
  while (!done) {
    acc += permute_qubits(rho, placement_of(slots, m, n));
    ++key_count;
    std::size_t digit = 0;
    while (digit < n) {
      if (++slots[digit] < 2 * m) break;
      slots[digit] = 0;
      ++digit;
    }
    done = (digit == n);
  }
  return acc / static_cast<double>(key_count);
}

double brute_force_eve_distance(const DensityMatrix& rho_code_a, const DensityMatrix& rho_code_b,
                                std::size_t m, std::size_t n, std::size_t limit) {
  std::size_t code_dim = std::size_t{1} << n;
  if (static_cast<std::size_t>(rho_code_a.rows()) != code_dim ||
      static_cast<std::size_t>(rho_code_b.rows()) != code_dim)
    throw std::invalid_argument("code state dimension does not match n qubits");
  DensityMatrix decoys = maximally_mixed(2 * m * n - n);
  DensityMatrix full_a = kron(rho_code_a, decoys);
  DensityMatrix full_b = kron(rho_code_b, decoys);
  return trace_distance(eve_state(full_a, m, n, limit), eve_state(full_b, m, n, limit));
}

}  // namespace qhe
