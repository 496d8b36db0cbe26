// SPDX-License-Identifier: Apache-2.0
#include "qhe/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qhe {
namespace {

constexpr double kNormTol = 1e-9;

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::size_t log2_exact(std::size_t v) {
  std::size_t q = 0;
  while ((std::size_t{1} << q) < v) ++q;
  if ((std::size_t{1} << q) != v) throw std::invalid_argument("dimension is not a power of two");
  return q;
}

double clamp_nonneg(double x) { return x < 0.0 ? 0.0 : x; }

}  // namespace

Amplitudes kron(const Amplitudes& a, const Amplitudes& b) {
  Amplitudes out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  return out;
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  DensityMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Amplitudes ket(std::string_view label) {
  const double s = 1.0 / std::sqrt(2.0);
  Amplitudes v(2);
  if (label == "0") {
    v << 1.0, 0.0;
  } else if (label == "1") {
    v << 0.0, 1.0;
  } else if (label == "+") {
    v << s, s;
  } else if (label == "-") {
    v << s, -s;
  } else if (label == "i") {
    v << s, std::complex<double>(0.0, s);
  } else if (label == "-i") {
    v << s, std::complex<double>(0.0, -s);
  } else {
    throw std::invalid_argument("unknown ket label");
  }
  return v;
}

Amplitudes random_pure_state(std::size_t num_qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Amplitudes v(std::size_t{1} << num_qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double re = gauss(rng);
    double im = gauss(rng);
    v(i) = {re, im};
  }
  v.normalize();
  return v;
}

DensityMatrix pure_density(const Amplitudes& v) { return v * v.adjoint(); }

DensityMatrix maximally_mixed(std::size_t num_qubits) {
  std::size_t dim = std::size_t{1} << num_qubits;
  return DensityMatrix::Identity(dim, dim) / static_cast<double>(dim);
}

Amplitudes apply_pauli_to_state(const Amplitudes& v, const PauliString& p) {
  std::size_t q = log2_exact(static_cast<std::size_t>(v.size()));
  if (q != p.size()) throw std::invalid_argument("Pauli length does not match state");
  Amplitudes out(v.size());
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(v.size()); ++idx) {
    std::size_t src = idx;
    std::complex<double> coef = p.phase();
    for (std::size_t k = 0; k < q; ++k) {
      std::size_t bitpos = q - 1 - k;
      int bit = (idx >> bitpos) & 1u;
      switch (p.op(k)) {
        case PauliOp::I:
          break;
        case PauliOp::X:
          src ^= (std::size_t{1} << bitpos);
          break;
        case PauliOp::Y:
          src ^= (std::size_t{1} << bitpos);
          coef *= bit ? std::complex<double>(0.0, 1.0) : std::complex<double>(0.0, -1.0);
          break;
        case PauliOp::Z:
          if (bit) coef = -coef;
          break;
      }
    }
    out(idx) = coef * v(src);
  }
  return out;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("density matrix shape mismatch");
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("density matrix shape mismatch");
  Eigen::SelfAdjointEigenSolver<DensityMatrix> ea(a);
  Eigen::VectorXd ev = ea.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(clamp_nonneg(ev(i)));
  DensityMatrix sqrt_a =
      ea.eigenvectors() * ev.asDiagonal() * ea.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<DensityMatrix> em(sqrt_a * b * sqrt_a, Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < em.eigenvalues().size(); ++i)
    sum += std::sqrt(clamp_nonneg(em.eigenvalues()(i)));
  return sum * sum;
}

double fidelity_with_pure(const DensityMatrix& a, const Amplitudes& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("dimension mismatch");
  std::complex<double> val = (b.adjoint() * a * b)(0, 0);
  return clamp_nonneg(val.real());
}

DensityMatrix permute_qubits(const DensityMatrix& rho, const std::vector<std::size_t>& perm) {
  std::size_t q = log2_exact(static_cast<std::size_t>(rho.rows()));
  if (perm.size() != q) throw std::invalid_argument("permutation length mismatch");
  std::vector<bool> seen(q, false);
  for (auto p : perm) {
    if (p >= q || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = true;
  }
  std::size_t dim = std::size_t{1} << q;
  std::vector<std::size_t> map(dim, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t j = 0;
    for (std::size_t s = 0; s < q; ++s) {
      std::size_t bit = (i >> (q - 1 - s)) & 1u;
      j |= bit << (q - 1 - perm[s]);
    }
    map[i] = j;
  }
  DensityMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) out(map[i], map[j]) = rho(i, j);
  return out;
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::Cnot:
    case GateKind::Swap:
      return 2;
    default:
      return 1;
  }
}

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "Sdg";
    case GateKind::T: return "T";
    case GateKind::Tdg: return "Tdg";
    case GateKind::Cnot: return "CNOT";
    case GateKind::Swap: return "SWAP";
  }
  throw std::logic_error("bad GateKind");
}

GateKind gate_inverse(GateKind kind) {
  switch (kind) {
    case GateKind::S: return GateKind::Sdg;
    case GateKind::Sdg: return GateKind::S;
    case GateKind::T: return GateKind::Tdg;
    case GateKind::Tdg: return GateKind::T;
    default: return kind;  // self-inverse
  }
}

Eigen::Matrix2cd gate_matrix_1q(GateKind kind) {
  using namespace std::complex_literals;
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  switch (kind) {
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Y: m << 0, -1i, 1i, 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    case GateKind::H: m << s, s, s, -s; break;
    case GateKind::S: m << 1, 0, 0, 1i; break;
    case GateKind::Sdg: m << 1, 0, 0, -1i; break;
    case GateKind::T: m << 1, 0, 0, std::polar(1.0, M_PI / 4); break;
    case GateKind::Tdg: m << 1, 0, 0, std::polar(1.0, -M_PI / 4); break;
    default: throw std::invalid_argument("not a single-qubit gate");
  }
  return m;
}

std::size_t QuantumRegister::num_dense() const {
  std::size_t n = 0;
  for (const auto& f : fragments_) n += f.members.size();
  return n;
}

std::size_t QuantumRegister::num_mms() const {
  std::size_t n = 0;
  for (const auto& s : slots_) n += (s.kind == SlotKind::Mms);
  return n;
}

const QuantumRegister::Slot& QuantumRegister::slot(std::size_t pos) const {
  if (pos >= slots_.size()) throw std::out_of_range("register position");
  return slots_[pos];
}

QuantumRegister::Slot& QuantumRegister::slot(std::size_t pos) {
  if (pos >= slots_.size()) throw std::out_of_range("register position");
  return slots_[pos];
}

std::pair<std::size_t, std::size_t> QuantumRegister::locate(std::size_t dense_id) const {
  for (std::size_t f = 0; f < fragments_.size(); ++f) {
    const auto& mem = fragments_[f].members;
    for (std::size_t i = 0; i < mem.size(); ++i)
      if (mem[i] == dense_id) return {f, i};
  }
  throw std::logic_error("dense qubit not found");
}

Amplitudes QuantumRegister::amplitudes() const {
  if (fragments_.empty()) {
    Amplitudes v(1);
    v(0) = 1.0;
    return v;
  }
  std::size_t total = num_dense();
  if (total > 24) throw std::length_error("register too large for a joint amplitude vector");
  Amplitudes joint(1);
  joint(0) = 1.0;
  std::vector<std::size_t> order;
  for (const auto& f : fragments_) {
    joint = kron(joint, f.amps);
    order.insert(order.end(), f.members.begin(), f.members.end());
  }
  // Sort qubits by dense id: qubit at joint position s moves to rank of
  // order[s] among all ids.
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> perm(order.size());
  for (std::size_t s = 0; s < order.size(); ++s)
    perm[s] = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), order[s]) - sorted.begin());
  std::size_t q = order.size();
  Amplitudes out(joint.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(joint.size()); ++i) {
    std::size_t j = 0;
    for (std::size_t s = 0; s < q; ++s) j |= ((i >> (q - 1 - s)) & 1u) << (q - 1 - perm[s]);
    out(j) = joint(i);
  }
  return out;
}

std::size_t QuantumRegister::append(QuantumRegister&& other) {
  std::size_t offset = slots_.size();
  std::size_t id_shift = next_dense_id_;
  for (auto& f : other.fragments_) {
    for (auto& id : f.members) id += id_shift;
    fragments_.push_back(std::move(f));
  }
  for (auto& s : other.slots_) {
    if (s.kind == SlotKind::Dense) s.dense_id += id_shift;
    slots_.push_back(s);
  }
  next_dense_id_ += other.next_dense_id_;
  other.fragments_.clear();
  other.slots_.clear();
  other.next_dense_id_ = 0;
  return offset;
}

std::size_t QuantumRegister::merge_fragments(std::size_t fa, std::size_t fb) {
  if (fa == fb) return fa;
  Fragment merged;
  merged.amps = kron(fragments_[fa].amps, fragments_[fb].amps);
  merged.members = fragments_[fa].members;
  merged.members.insert(merged.members.end(), fragments_[fb].members.begin(),
                        fragments_[fb].members.end());
  fragments_[fa] = std::move(merged);
  fragments_.erase(fragments_.begin() + static_cast<std::ptrdiff_t>(fb));
  return fb < fa ? fa - 1 : fa;
}

std::size_t QuantumRegister::promote_mms(std::size_t pos) {
  std::size_t id = next_dense_id_++;
  Fragment f;
  f.amps = Amplitudes(2);
  int bit = std::uniform_int_distribution<int>(0, 1)(promo_rng_);
  f.amps(0) = bit ? 0.0 : 1.0;
  f.amps(1) = bit ? 1.0 : 0.0;
  f.members = {id};
  fragments_.push_back(std::move(f));
  slots_[pos] = {SlotKind::Dense, id};
  return id;
}

void QuantumRegister::apply_1q(std::size_t dense_id, const Eigen::Matrix2cd& u) {
  auto [f, mi] = locate(dense_id);
  Fragment& frag = fragments_[f];
  std::size_t d = frag.members.size();
  std::size_t mask = std::size_t{1} << (d - 1 - mi);
  std::size_t dim = std::size_t{1} << d;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    if (idx & mask) continue;
    std::complex<double> a0 = frag.amps(idx);
    std::complex<double> a1 = frag.amps(idx | mask);
    frag.amps(idx) = u(0, 0) * a0 + u(0, 1) * a1;
    frag.amps(idx | mask) = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void QuantumRegister::apply_cnot_dense(std::size_t control_id, std::size_t target_id) {
  auto [fc, ci] = locate(control_id);
  auto [ft, ti] = locate(target_id);
  if (fc != ft) {
    fc = merge_fragments(fc, ft);
    std::tie(fc, ci) = locate(control_id);
    std::tie(ft, ti) = locate(target_id);
  }
  Fragment& frag = fragments_[fc];
  std::size_t d = frag.members.size();
  std::size_t cmask = std::size_t{1} << (d - 1 - ci);
  std::size_t tmask = std::size_t{1} << (d - 1 - ti);
  std::size_t dim = std::size_t{1} << d;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    if ((idx & cmask) && !(idx & tmask)) std::swap(frag.amps(idx), frag.amps(idx | tmask));
  }
}

void QuantumRegister::apply_gate(const GateOp& g) {
  if (g.targets.size() != static_cast<std::size_t>(gate_arity(g.kind)))
    throw std::invalid_argument("gate arity mismatch");
  for (auto t : g.targets)
    if (is_consumed(t)) throw std::logic_error("gate on a consumed slot");
  if (g.targets.size() == 2 && g.targets[0] == g.targets[1])
    throw std::invalid_argument("two-qubit gate targets must differ");

  if (gate_arity(g.kind) == 1) {
    const Slot& s = slot(g.targets[0]);
    if (s.kind == SlotKind::Mms) return;  // 1q unitaries fix I/2 exactly
    apply_1q(s.dense_id, gate_matrix_1q(g.kind));
    return;
  }

  if (g.kind == GateKind::Swap) {
    // Pure relabeling: exchange what the two positions point at.
    std::swap(slot(g.targets[0]), slot(g.targets[1]));
    return;
  }

  // CNOT
  Slot& c = slot(g.targets[0]);
  Slot& t = slot(g.targets[1]);
  if (c.kind == SlotKind::Mms && t.kind == SlotKind::Mms) return;  // exact no-op on I/2 x I/2
  if (c.kind == SlotKind::Mms) promote_mms(g.targets[0]);
  if (t.kind == SlotKind::Mms) promote_mms(g.targets[1]);
  apply_cnot_dense(slot(g.targets[0]).dense_id, slot(g.targets[1]).dense_id);
}

PauliOp QuantumRegister::apply_depolarizing(std::size_t pos, double p, std::mt19937_64& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarizing probability out of range");
  if (is_consumed(pos)) throw std::logic_error("noise on a consumed slot");
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u >= p) return PauliOp::I;
  int k = std::uniform_int_distribution<int>(0, 2)(rng);
  PauliOp op = k == 0 ? PauliOp::X : (k == 1 ? PauliOp::Y : PauliOp::Z);
  if (is_dense(pos)) {
    GateKind gk = op == PauliOp::X ? GateKind::X : (op == PauliOp::Y ? GateKind::Y : GateKind::Z);
    apply_gate(GateOp::single(gk, pos));
  }
  // An MMS slot is invariant under any Pauli; the sample is still reported.
  return op;
}

int QuantumRegister::measure_dense(std::size_t dense_id, std::mt19937_64& rng) {
  auto [f, mi] = locate(dense_id);
  Fragment& frag = fragments_[f];
  std::size_t d = frag.members.size();
  std::size_t mask = std::size_t{1} << (d - 1 - mi);
  std::size_t dim = std::size_t{1} << d;
  double p1 = 0.0;
  for (std::size_t idx = 0; idx < dim; ++idx)
    if (idx & mask) p1 += std::norm(frag.amps(idx));
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  int outcome = u < p1 ? 1 : 0;
  double keep_prob = outcome ? p1 : 1.0 - p1;
  if (keep_prob <= 0.0) throw std::logic_error("measurement collapse with zero probability");
  double scale = 1.0 / std::sqrt(keep_prob);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    bool bit = (idx & mask) != 0;
    if (bit != static_cast<bool>(outcome))
      frag.amps(idx) = 0.0;
    else
      frag.amps(idx) *= scale;
  }
  return outcome;
}

std::vector<int> QuantumRegister::measure_z_all(const std::vector<std::size_t>& positions,
                                                std::mt19937_64& rng) {
  std::vector<int> out;
  out.reserve(positions.size());
  for (auto pos : positions) {
    const Slot& s = slot(pos);
    switch (s.kind) {
      case SlotKind::Dense:
        out.push_back(measure_dense(s.dense_id, rng));
        break;
      case SlotKind::Mms: {
        int bit = std::uniform_int_distribution<int>(0, 1)(rng);
        slots_[pos].kind = SlotKind::Consumed;
        out.push_back(bit);
        break;
      }
      case SlotKind::Consumed:
        throw std::logic_error("measuring a consumed slot");
    }
  }
  return out;
}

void QuantumRegister::discard(std::size_t pos) {
  Slot& s = slot(pos);
  if (s.kind == SlotKind::Consumed) return;
  if (s.kind == SlotKind::Mms) {
    s.kind = SlotKind::Consumed;
    return;
  }
  auto [f, mi] = locate(s.dense_id);
  Fragment& frag = fragments_[f];
  std::size_t d = frag.members.size();
  std::size_t mask = std::size_t{1} << (d - 1 - mi);
  std::size_t dim = std::size_t{1} << d;
  double p1 = 0.0;
  for (std::size_t idx = 0; idx < dim; ++idx)
    if (idx & mask) p1 += std::norm(frag.amps(idx));
  int bit;
  if (p1 > 1.0 - kNormTol)
    bit = 1;
  else if (p1 < kNormTol)
    bit = 0;
  else
    throw std::logic_error("discarding a dense qubit still in superposition");
  if (d == 1) {
    fragments_.erase(fragments_.begin() + static_cast<std::ptrdiff_t>(f));
  } else {
    Amplitudes shrunk(dim >> 1);
    std::size_t low = mask - 1;  // bits below the removed one
    for (std::size_t idx = 0; idx < (dim >> 1); ++idx) {
      std::size_t expanded = ((idx & ~low) << 1) | (bit ? mask : 0) | (idx & low);
      shrunk(idx) = frag.amps(expanded);
    }
    double nrm = shrunk.norm();
    if (nrm <= 0.0) throw std::logic_error("discard produced a null state");
    frag.amps = shrunk / nrm;
    frag.members.erase(frag.members.begin() + static_cast<std::ptrdiff_t>(mi));
  }
  s.kind = SlotKind::Consumed;
}

DensityMatrix QuantumRegister::densify(const std::vector<std::size_t>& positions,
                                       std::size_t max_qubits) const {
  if (positions.size() > max_qubits)
    throw std::length_error("densify request exceeds the dense oracle limit");
  struct Factor {
    DensityMatrix dm;
    std::vector<std::size_t> result_slots;  // result qubit index per factor qubit
  };
  std::vector<Factor> factors;
  // fragment index -> (member index, result slot)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> per_frag(fragments_.size());
  for (std::size_t r = 0; r < positions.size(); ++r) {
    const Slot& s = slot(positions[r]);
    if (s.kind == SlotKind::Consumed) throw std::logic_error("densify on a consumed slot");
    if (s.kind == SlotKind::Mms) {
      factors.push_back({maximally_mixed(1), {r}});
    } else {
      auto [f, mi] = locate(s.dense_id);
      per_frag[f].push_back({mi, r});
    }
  }
  for (std::size_t f = 0; f < fragments_.size(); ++f) {
    if (per_frag[f].empty()) continue;
    auto picks = per_frag[f];
    std::sort(picks.begin(), picks.end());  // ascending member index
    const Fragment& frag = fragments_[f];
    std::size_t d = frag.members.size();
    std::size_t kq = picks.size();
    std::vector<std::size_t> keep;
    Factor fac;
    for (auto& [mi, r] : picks) {
      keep.push_back(mi);
      fac.result_slots.push_back(r);
    }
    std::vector<std::size_t> env;
    for (std::size_t i = 0; i < d; ++i)
      if (std::find(keep.begin(), keep.end(), i) == keep.end()) env.push_back(i);
    std::size_t eq = env.size();
    // scatter tables: keep-index bits and env-index bits into full indices
    std::vector<std::size_t> kscat(std::size_t{1} << kq, 0);
    for (std::size_t a = 0; a < kscat.size(); ++a)
      for (std::size_t qi = 0; qi < kq; ++qi)
        if ((a >> (kq - 1 - qi)) & 1u) kscat[a] |= std::size_t{1} << (d - 1 - keep[qi]);
    std::vector<std::size_t> escat(std::size_t{1} << eq, 0);
    for (std::size_t e = 0; e < escat.size(); ++e)
      for (std::size_t qi = 0; qi < eq; ++qi)
        if ((e >> (eq - 1 - qi)) & 1u) escat[e] |= std::size_t{1} << (d - 1 - env[qi]);
    DensityMatrix dm = DensityMatrix::Zero(std::size_t{1} << kq, std::size_t{1} << kq);
    for (std::size_t e = 0; e < escat.size(); ++e)
      for (std::size_t a = 0; a < kscat.size(); ++a) {
        std::complex<double> va = frag.amps(kscat[a] | escat[e]);
        if (va == std::complex<double>(0.0, 0.0)) continue;
        for (std::size_t b = 0; b < kscat.size(); ++b)
          dm(a, b) += va * std::conj(frag.amps(kscat[b] | escat[e]));
      }
    fac.dm = std::move(dm);
    factors.push_back(std::move(fac));
  }
  std::size_t rq = positions.size();
  std::size_t dim = std::size_t{1} << rq;
  DensityMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      std::complex<double> prod = 1.0;
      for (const auto& fac : factors) {
        std::size_t fq = fac.result_slots.size();
        std::size_t fi = 0, fj = 0;
        for (std::size_t qi = 0; qi < fq; ++qi) {
          std::size_t r = fac.result_slots[qi];
          fi |= ((i >> (rq - 1 - r)) & 1u) << (fq - 1 - qi);
          fj |= ((j >> (rq - 1 - r)) & 1u) << (fq - 1 - qi);
        }
        prod *= fac.dm(fi, fj);
        if (prod == std::complex<double>(0.0, 0.0)) break;
      }
      out(i, j) = prod;
    }
  return out;
}

double QuantumRegister::norm_error() const {
  double worst = 0.0;
  for (const auto& f : fragments_) worst = std::max(worst, std::abs(1.0 - f.amps.squaredNorm()));
  return worst;
}

nlohmann::json QuantumRegister::to_json() const {
  nlohmann::json j;
  j["positions"] = nlohmann::json::array();
  for (const auto& s : slots_) {
    nlohmann::json e;
    switch (s.kind) {
      case SlotKind::Dense:
        e["kind"] = "dense";
        e["id"] = s.dense_id;
        break;
      case SlotKind::Mms:
        e["kind"] = "mms";
        break;
      case SlotKind::Consumed:
        e["kind"] = "consumed";
        break;
    }
    j["positions"].push_back(e);
  }
  j["fragments"] = nlohmann::json::array();
  for (const auto& f : fragments_) {
    nlohmann::json e;
    e["members"] = f.members;
    auto& amps = e["amplitudes"] = nlohmann::json::array();
    for (Eigen::Index i = 0; i < f.amps.size(); ++i)
      amps.push_back({f.amps(i).real(), f.amps(i).imag()});
    j["fragments"].push_back(e);
  }
  j["next_dense_id"] = next_dense_id_;
  return j;
}

QuantumRegister QuantumRegister::from_json(const nlohmann::json& j) {
  QuantumRegister reg;
  for (const auto& e : j.at("positions")) {
    Slot s;
    std::string kind = e.at("kind").get<std::string>();
    if (kind == "dense") {
      s.kind = SlotKind::Dense;
      s.dense_id = e.at("id").get<std::size_t>();
    } else if (kind == "mms") {
      s.kind = SlotKind::Mms;
    } else if (kind == "consumed") {
      s.kind = SlotKind::Consumed;
    } else {
      throw std::invalid_argument("unknown slot kind");
    }
    reg.slots_.push_back(s);
  }
  for (const auto& e : j.at("fragments")) {
    Fragment f;
    f.members = e.at("members").get<std::vector<std::size_t>>();
    const auto& amps = e.at("amplitudes");
    if (!is_power_of_two(amps.size()) ||
        amps.size() != (std::size_t{1} << f.members.size()))
      throw std::invalid_argument("fragment amplitude count mismatch");
    f.amps = Amplitudes(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i)
      f.amps(static_cast<Eigen::Index>(i)) = {amps[i].at(0).get<double>(),
                                              amps[i].at(1).get<double>()};
    reg.fragments_.push_back(std::move(f));
  }
  reg.next_dense_id_ = j.at("next_dense_id").get<std::size_t>();
  return reg;
}

QuantumRegister init_register(const std::vector<Amplitudes>& dense_states, std::size_t mms_count,
                              const std::vector<LayoutEntry>& layout, std::uint64_t seed) {
  QuantumRegister reg;
  reg.seed_promotions(seed);
  std::size_t total_dense = 0;
  for (const auto& block : dense_states) {
    std::size_t dim = static_cast<std::size_t>(block.size());
    if (!is_power_of_two(dim) || dim < 2)
      throw std::invalid_argument("dense block dimension must be a power of two >= 2");
    if (std::abs(block.squaredNorm() - 1.0) > kNormTol)
      throw std::invalid_argument("dense block is not normalized");
    std::size_t q = log2_exact(dim);
    QuantumRegister::Fragment f;
    f.amps = block;
    for (std::size_t i = 0; i < q; ++i) f.members.push_back(total_dense + i);
    reg.fragments_.push_back(std::move(f));
    total_dense += q;
  }
  reg.next_dense_id_ = total_dense;
  if (layout.size() != total_dense + mms_count)
    throw std::invalid_argument("layout length does not match qubit count");
  std::vector<bool> used(total_dense, false);
  std::size_t mms_seen = 0;
  for (const auto& e : layout) {
    QuantumRegister::Slot s;
    if (e.kind == SlotKind::Dense) {
      if (e.index >= total_dense || used[e.index])
        throw std::invalid_argument("layout must reference each dense qubit exactly once");
      used[e.index] = true;
      s.kind = SlotKind::Dense;
      s.dense_id = e.index;
    } else if (e.kind == SlotKind::Mms) {
      ++mms_seen;
      s.kind = SlotKind::Mms;
    } else {
      throw std::invalid_argument("layout entries must be dense or mms");
    }
    reg.slots_.push_back(s);
  }
  if (mms_seen != mms_count) throw std::invalid_argument("layout MMS count mismatch");
  return reg;
}

QuantumRegister init_register(const std::vector<Amplitudes>& dense_states, std::size_t mms_count,
                              std::uint64_t seed) {
  std::size_t total_dense = 0;
  for (const auto& block : dense_states)
    total_dense += log2_exact(static_cast<std::size_t>(block.size()));
  std::vector<LayoutEntry> layout;
  for (std::size_t i = 0; i < total_dense; ++i) layout.push_back(LayoutEntry::dense(i));
  for (std::size_t i = 0; i < mms_count; ++i) layout.push_back(LayoutEntry::mms());
  return init_register(dense_states, mms_count, layout, seed);
}

}  // namespace qhe
