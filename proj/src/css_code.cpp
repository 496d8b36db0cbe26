// SPDX-License-Identifier: Apache-2.0
#include "qhe/css_code.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qhe {

GateKind CssCode::phase_unit() const {
  if (logical_x.empty()) throw std::logic_error("code has no logical X");
  // Transversal S applies a phase i^w on a weight-w X-type term; logical S
  // needs phase i on logical X. w = 1 (mod 4) gives S, w = 3 (mod 4) gives
  // i^w = -i, so the physical gate must be S-dagger.
  std::size_t w = logical_x.front().weight() % 4;
  if (w == 1) return GateKind::S;
  if (w == 3) return GateKind::Sdg;
  throw std::logic_error("logical X weight must be odd for a transversal phase gate");
}

nlohmann::json CssCode::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["n"] = n;
  j["k"] = k;
  j["d"] = d;
  auto rows_of = [](const BinaryMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(bitvec_to_string(m.row(r)));
    return rows;
  };
  j["h_x"] = rows_of(h_x);
  j["h_z"] = rows_of(h_z);
  auto paulis_of = [](const std::vector<PauliString>& ps) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : ps) arr.push_back(p.to_string());
    return arr;
  };
  j["logical_x"] = paulis_of(logical_x);
  j["logical_z"] = paulis_of(logical_z);
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : encoding_circuit) {
    nlohmann::json e;
    e["gate"] = gate_name(g.kind);
    e["targets"] = g.targets;
    gates.push_back(e);
  }
  j["encoding_circuit"] = gates;
  return j;
}

CssCode CssCode::from_json(const nlohmann::json& j) {
  CssCode code;
  code.name = j.at("name").get<std::string>();
  code.n = j.at("n").get<std::size_t>();
  code.k = j.at("k").get<std::size_t>();
  code.d = j.at("d").get<std::size_t>();
  auto mat_of = [](const nlohmann::json& rows) {
    std::vector<BitVector> parsed;
    for (const auto& r : rows) parsed.push_back(bitvec_from_string(r.get<std::string>()));
    return BinaryMatrix::from_rows(parsed);
  };
  code.h_x = mat_of(j.at("h_x"));
  code.h_z = mat_of(j.at("h_z"));
  for (const auto& p : j.at("logical_x"))
    code.logical_x.push_back(PauliString::from_string(p.get<std::string>()));
  for (const auto& p : j.at("logical_z"))
    code.logical_z.push_back(PauliString::from_string(p.get<std::string>()));
  for (const auto& e : j.at("encoding_circuit")) {
    std::string gname = e.at("gate").get<std::string>();
    GateOp g;
    if (gname == "H")
      g.kind = GateKind::H;
    else if (gname == "CNOT")
      g.kind = GateKind::Cnot;
    else
      throw std::invalid_argument("encoding circuit may contain only H and CNOT");
    g.targets = e.at("targets").get<std::vector<std::size_t>>();
    code.encoding_circuit.push_back(g);
  }
  return code;
}

CssCode steane_code() {
  CssCode code;
  code.name = "steane";
  code.n = 7;
  code.k = 1;
  code.d = 3;
  code.h_x = BinaryMatrix::from_rows({"1110100", "1101010", "1011001"});
  code.h_z = code.h_x;
  code.logical_x = {PauliString::from_string("XXXXXXX")};
  code.logical_z = {PauliString::from_string("ZZZZZZZ")};
  // Qubit 0 carries the input; 1 and 6 complete the logical X coset
  // representative {0, 1, 6}; qubits 3, 4, 5 seed the three generator rows.
  code.encoding_circuit = {
      GateOp::cnot(0, 1), GateOp::cnot(0, 6),
      GateOp::single(GateKind::H, 3), GateOp::cnot(3, 0), GateOp::cnot(3, 2), GateOp::cnot(3, 6),
      GateOp::single(GateKind::H, 4), GateOp::cnot(4, 0), GateOp::cnot(4, 1), GateOp::cnot(4, 2),
      GateOp::single(GateKind::H, 5), GateOp::cnot(5, 0), GateOp::cnot(5, 1), GateOp::cnot(5, 3),
  };
  return code;
}

CssCode identity_code() {
  CssCode code;
  code.name = "identity";
  code.n = 1;
  code.k = 1;
  code.d = 1;
  code.logical_x = {PauliString::from_string("X")};
  code.logical_z = {PauliString::from_string("Z")};
  return code;
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

std::vector<PauliString> stabilizer_generators(const CssCode& code) {
  std::vector<PauliString> gens;
  for (std::size_t r = 0; r < code.h_x.rows(); ++r)
    gens.push_back(pauli_from_supports(code.h_x.row(r), BitVector(code.n, 0)));
  for (std::size_t r = 0; r < code.h_z.rows(); ++r)
    gens.push_back(pauli_from_supports(BitVector(code.n, 0), code.h_z.row(r)));
  return gens;
}

}  // namespace

ValidationReport validate_css_properties(const CssCode& code, std::size_t sim_limit) {
  ValidationReport rep;
  auto add = [&rep](const std::string& name, bool ok, std::string detail = "") {
    rep.checks.push_back({name, ok, std::move(detail)});
  };

  bool shapes = code.n >= 1 && code.k >= 1 && code.d >= 1 &&
                code.logical_x.size() == code.k && code.logical_z.size() == code.k;
  if (code.h_x.rows() > 0 && code.h_x.cols() != code.n) shapes = false;
  if (code.h_z.rows() > 0 && code.h_z.cols() != code.n) shapes = false;
  for (const auto& p : code.logical_x) shapes = shapes && p.size() == code.n;
  for (const auto& p : code.logical_z) shapes = shapes && p.size() == code.n;
  add("shapes", shapes);
  if (!shapes) return rep;

  bool comm = code.h_x.rows() == 0 || code.h_z.rows() == 0 ||
              code.h_x.multiply(code.h_z.transposed()).is_zero();
  add("css_commutation", comm, comm ? "" : "h_x h_z^T != 0");

  bool self_dual = code.h_x.same_row_space(code.h_z);
  add("self_dual", self_dual, self_dual ? "" : "row spaces of h_x and h_z differ");

  bool doubly_even = true;
  for (std::size_t r = 0; r < code.h_x.rows(); ++r)
    doubly_even = doubly_even && bitvec_weight(code.h_x.row(r)) % 4 == 0;
  add("doubly_even", doubly_even, doubly_even ? "" : "an h_x row has weight != 0 mod 4");

  bool logical_ok = true;
  std::ostringstream why;
  auto gens = stabilizer_generators(code);
  for (std::size_t i = 0; i < code.k && logical_ok; ++i) {
    for (const auto& g : gens) {
      if (!code.logical_x[i].commutes_with(g) || !code.logical_z[i].commutes_with(g)) {
        logical_ok = false;
        why << "logical operator " << i << " fails to commute with a stabilizer";
        break;
      }
    }
    for (std::size_t jj = 0; jj < code.k && logical_ok; ++jj) {
      bool expect_comm = (i != jj);
      if (code.logical_x[i].commutes_with(code.logical_z[jj]) != expect_comm) {
        logical_ok = false;
        why << "logical X" << i << "/Z" << jj << " commutation is wrong";
      }
    }
  }
  add("logical_commutation", logical_ok, why.str());

  if (code.n > sim_limit) {
    add("encoding_circuit", true, "skipped: code too large for simulation");
    return rep;
  }
  bool enc_ok = true;
  std::string enc_why;
  try {
    std::vector<Amplitudes> blocks;
    for (std::size_t i = 0; i < code.n; ++i) blocks.push_back(ket("0"));
    QuantumRegister reg = init_register(blocks, 0);
    std::vector<std::size_t> all(code.n);
    for (std::size_t i = 0; i < code.n; ++i) all[i] = i;
    for (const auto& g : code.encoding_circuit) reg.apply_gate(g);
    Amplitudes psi = reg.amplitudes();
    auto expect_fixed = [&](const PauliString& p, const char* label) {
      Amplitudes moved = apply_pauli_to_state(psi, p);
      if ((moved - psi).norm() > 1e-9) {
        enc_ok = false;
        enc_why = std::string("encoded |0> not fixed by ") + label;
      }
    };
    for (const auto& g : gens) expect_fixed(g, "a stabilizer generator");
    for (const auto& lz : code.logical_z) expect_fixed(lz, "logical Z");
    // Logical X must map the encoded |0> to the encoded |1>: prepare |1> on
    // the input qubit and compare.
    std::vector<Amplitudes> blocks1 = blocks;
    blocks1[0] = ket("1");
    QuantumRegister reg1 = init_register(blocks1, 0);
    for (const auto& g : code.encoding_circuit) reg1.apply_gate(g);
    Amplitudes psi1 = reg1.amplitudes();
    if (enc_ok && !code.logical_x.empty()) {
      Amplitudes moved = apply_pauli_to_state(psi, code.logical_x.front());
      if ((moved - psi1).norm() > 1e-9) {
        enc_ok = false;
        enc_why = "logical X does not map encoded |0> to encoded |1>";
      }
    }
  } catch (const std::exception& e) {
    enc_ok = false;
    enc_why = e.what();
  }
  add("encoding_circuit", enc_ok, enc_why);
  return rep;
}

Syndrome syndrome_of(const CssCode& code, const PauliString& error) {
  if (error.size() != code.n) throw std::invalid_argument("error length does not match code");
  Syndrome s;
  s.x_bits = code.h_z.rows() ? code.h_z.multiply(error.x_support()) : BitVector{};
  s.z_bits = code.h_x.rows() ? code.h_x.multiply(error.z_support()) : BitVector{};
  return s;
}

namespace {

// Finds a minimal support whose check-matrix columns sum to the syndrome:
// tries weight 0, 1, then 2. Returns empty support if nothing matches.
BitVector match_columns(const BinaryMatrix& h, const BitVector& syn, std::size_t n) {
  BitVector support(n, 0);
  if (h.rows() == 0 || bitvec_weight(syn) == 0) return support;
  for (std::size_t j = 0; j < n; ++j) {
    if (h.col(j) == syn) {
      support[j] = 1;
      return support;
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (bitvec_xor(h.col(a), h.col(b)) == syn) {
        support[a] = 1;
        support[b] = 1;
        return support;
      }
    }
  return support;
}

}  // namespace

PauliString decode_syndrome(const CssCode& code, const Syndrome& s) {
  if (s.x_bits.size() != code.h_z.rows() || s.z_bits.size() != code.h_x.rows())
    throw std::invalid_argument("syndrome length does not match code");
  BitVector x_corr = match_columns(code.h_z, s.x_bits, code.n);
  BitVector z_corr = match_columns(code.h_x, s.z_bits, code.n);
  return pauli_from_supports(x_corr, z_corr);
}

LogicalReadout decode_logical_z_readout(const CssCode& code, const std::vector<int>& bits) {
  if (bits.size() != code.n) throw std::invalid_argument("readout length does not match code");
  BitVector word(code.n);
  for (std::size_t i = 0; i < code.n; ++i) word[i] = bits[i] & 1;
  LogicalReadout out;
  if (code.h_z.rows() > 0) {
    BitVector syn = code.h_z.multiply(word);
    if (bitvec_weight(syn) > 0) {
      out.detected_error = true;
      Syndrome s;
      s.x_bits = syn;
      s.z_bits = BitVector(code.h_x.rows(), 0);
      word = bitvec_xor(word, decode_syndrome(code, s).x_support());
    }
  }
  if (code.logical_z.empty()) throw std::logic_error("code has no logical Z");
  out.logical_bit = bitvec_parity(word, code.logical_z.front().z_support());
  return out;
}

bool in_stabilizer_group(const CssCode& code, const PauliString& p) {
  if (p.size() != code.n) throw std::invalid_argument("Pauli length does not match code");
  return code.h_x.in_row_space(p.x_support()) && code.h_z.in_row_space(p.z_support());
}

}  // namespace qhe
