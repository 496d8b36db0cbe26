// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: protocol demos, full evaluations, security and
// noise analyses, and two-process socket sessions.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qhe/net.hpp"
#include "qhe/noise.hpp"
#include "qhe/protocol.hpp"
#include "qhe/reports.hpp"
#include "qhe/security.hpp"

namespace {

using namespace qhe;

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Amplitudes> parse_inputs(const std::string& csv) {
  std::vector<Amplitudes> out;
  for (const auto& label : split_list(csv)) out.push_back(ket(label));
  if (out.empty()) throw std::invalid_argument("--inputs must list at least one ket label");
  return out;
}

struct OutputSink {
  std::string path;
  std::ofstream file;

  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file: " + path);
    }
    return file;
  }
};

void print_density_matrix(std::ostream& os, const DensityMatrix& rho) {
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%+.6f%+.6fi", rho(i, j).real(), rho(i, j).imag());
      os << buf << (j + 1 < rho.cols() ? " " : "");
    }
    os << '\n';
  }
}

void print_session_result(std::ostream& os, const SessionResult& result,
                          const LogicalCircuit& circuit, const std::vector<Amplitudes>& inputs,
                          const SessionConfig& cfg) {
  os << "wires " << circuit.wires << '\n';
  os << "t_rounds " << result.t_rounds.size() << '\n';
  for (std::size_t i = 0; i < result.t_rounds.size(); ++i) {
    const auto& tr = result.t_rounds[i];
    os << "t_round " << i << " data_block " << tr.data_block_id << " outcome " << tr.outcome
       << " detected_error " << (tr.detected_error ? 1 : 0) << '\n';
  }
  os << "syndrome_rounds " << result.syndrome_rounds << '\n';
  os << "output density matrix (wire 0 on the most significant bit):\n";
  print_density_matrix(os, result.output_state);
  if (cfg.noise_p == 0.0) {
    Amplitudes expected = plain_circuit_output(circuit, inputs);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", fidelity_with_pure(result.output_state, expected));
    os << "fidelity_vs_plain " << buf << '\n';
  }
  Client key_probe(cfg);  // same seed -> same key; used only for the bound
  os << "swap_count " << result.swap_count << " bound "
     << swap_count_bound(key_probe.key(), result.t_rounds.size()) << '\n';
}

int cmd_roundtrip(std::uint64_t seed, std::size_t m, const std::string& code_name) {
  SessionConfig cfg;
  cfg.m = m;
  cfg.n_code = code_name;
  cfg.seed = seed;
  CssCode code = cfg.make_code();
  std::mt19937_64 rng = derived_rng(seed, 0x2007);
  PermutationKey key = keygen(m, code.n, rng);
  Amplitudes message = random_pure_state(1, rng);
  CipherBlock block = encrypt(key, code, message, rng(), 0);
  DecryptResult res = decrypt(key, code, block);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", fidelity_with_pure(res.state, message));
  std::cout << "code " << code.name << " m " << m << " n " << code.n << '\n';
  std::cout << "fidelity " << buf << '\n';
  std::cout << "swap_count " << res.swap_count << " bound " << swap_count_bound(key, 0) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for permutation-key quantum homomorphic encryption over CSS codes"};
  app.require_subcommand(1);

  // roundtrip
  auto* roundtrip = app.add_subcommand("roundtrip", "Encrypt and decrypt a random message");
  std::uint64_t rt_seed = 0;
  std::size_t rt_m = 1;
  std::string rt_code = "steane";
  roundtrip->add_option("--seed", rt_seed, "RNG seed")->required();
  roundtrip->add_option("--m", rt_m, "Half group size (2m positions per group)");
  roundtrip->add_option("--code", rt_code, "Code name: steane or identity");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Run a full protocol session in-process");
  std::string ev_circuit, ev_inputs = "+";
  std::uint64_t ev_seed = 0;
  std::size_t ev_m = 1;
  std::string ev_code = "steane", ev_syndrome = "auto";
  double ev_noise = 0.0;
  evaluate->add_option("--circuit", ev_circuit, "Circuit file")->required();
  evaluate->add_option("--inputs", ev_inputs,
                       "Comma-separated input kets from {0,1,+,-,i,-i}, one per wire");
  evaluate->add_option("--seed", ev_seed, "RNG seed")->required();
  evaluate->add_option("--m", ev_m, "Half group size");
  evaluate->add_option("--code", ev_code, "Code name");
  evaluate->add_option("--noise", ev_noise, "Transmission depolarizing probability");
  evaluate->add_option("--syndrome", ev_syndrome, "Syndrome policy: auto|off|after_transmission");

  // security
  auto* security = app.add_subcommand("security", "Distinguishing-advantage bounds");
  std::string sec_r = "0", sec_m = "1", sec_n = "7", sec_format = "csv", sec_out;
  security->add_option("--r", sec_r, "T-gate count(s), comma-separated");
  security->add_option("--m", sec_m, "Half group size(s), comma-separated");
  security->add_option("--n", sec_n, "Code length(s), comma-separated");
  security->add_option("--format", sec_format, "csv or json");
  security->add_option("--out", sec_out, "Output file (default stdout)");

  // region
  auto* region = app.add_subcommand("region", "Fraction of (m,n) space where this scheme wins");
  double rg_n = 5.0, rg_resolution = 0.0;
  std::string rg_mode = "area", rg_format = "csv", rg_out;
  region->add_option("--N", rg_n, "Square side N (domain [1,N]^2)")->required();
  region->add_option("--resolution", rg_resolution, "Integration step (0 = auto)");
  region->add_option("--mode", rg_mode, "area or grid");
  region->add_option("--format", rg_format, "csv or json");
  region->add_option("--out", rg_out, "Output file (default stdout)");

  // noise-sweep
  auto* noise = app.add_subcommand("noise-sweep", "Monte Carlo logical error rates");
  std::string ns_plist = "0.001,0.01,0.05,0.1", ns_mode = "mc", ns_code = "steane";
  std::string ns_format = "csv", ns_out;
  std::size_t ns_trials = 100000, ns_m = 1;
  std::uint64_t ns_seed = 0;
  int ns_jobs = 1;
  noise->add_option("--p-list", ns_plist, "Comma-separated physical error rates");
  noise->add_option("--trials", ns_trials, "Trials per rate");
  noise->add_option("--seed", ns_seed, "RNG seed")->required();
  noise->add_option("--jobs", ns_jobs, "Worker threads");
  noise->add_option("--mode", ns_mode, "mc (code-only sampling) or end-to-end (full protocol)");
  noise->add_option("--code", ns_code, "Code name");
  noise->add_option("--m", ns_m, "Half group size (end-to-end mode)");
  noise->add_option("--format", ns_format, "csv or json");
  noise->add_option("--out", ns_out, "Output file (default stdout)");

  // serve
  auto* serve = app.add_subcommand("serve", "Accept one TCP session and evaluate");
  std::string sv_host = "127.0.0.1";
  std::uint16_t sv_port = 7733;
  std::uint64_t sv_seed = 0;
  std::size_t sv_m = 1;
  std::string sv_code = "steane", sv_syndrome = "auto";
  double sv_noise = 0.0;
  serve->add_option("--host", sv_host, "Bind address");
  serve->add_option("--port", sv_port, "Port (0 = ephemeral, printed on start)");
  serve->add_option("--seed", sv_seed, "RNG seed")->required();
  serve->add_option("--m", sv_m, "Half group size");
  serve->add_option("--code", sv_code, "Code name");
  serve->add_option("--noise", sv_noise, "Transmission depolarizing probability");
  serve->add_option("--syndrome", sv_syndrome, "Syndrome policy");

  // connect
  auto* connect = app.add_subcommand("connect", "Run a session against a serving peer");
  std::string cn_address = "127.0.0.1:7733", cn_circuit, cn_inputs = "+";
  std::uint64_t cn_seed = 0;
  std::size_t cn_m = 1;
  std::string cn_code = "steane";
  connect->add_option("--address", cn_address, "host:port of the server")->required();
  connect->add_option("--circuit", cn_circuit, "Circuit file")->required();
  connect->add_option("--inputs", cn_inputs, "Comma-separated input kets");
  connect->add_option("--seed", cn_seed, "RNG seed")->required();
  connect->add_option("--m", cn_m, "Half group size");
  connect->add_option("--code", cn_code, "Code name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (roundtrip->parsed()) return cmd_roundtrip(rt_seed, rt_m, rt_code);

    if (evaluate->parsed()) {
      SessionConfig cfg;
      cfg.m = ev_m;
      cfg.n_code = ev_code;
      cfg.seed = ev_seed;
      cfg.noise_p = ev_noise;
      cfg.syndrome = SessionConfig::from_json({{"syndrome", ev_syndrome}}).syndrome;
      LogicalCircuit circuit = LogicalCircuit::parse_file(ev_circuit);
      std::vector<Amplitudes> inputs = parse_inputs(ev_inputs);
      circuit.wires = std::max(circuit.wires, inputs.size());
      SessionResult result = run_inproc_session(cfg, circuit, inputs);
      print_session_result(std::cout, result, circuit, inputs, cfg);
      return 0;
    }

    if (security->parsed()) {
      std::vector<DeltaReport> rows;
      for (const auto& rs : split_list(sec_r))
        for (const auto& ms : split_list(sec_m))
          for (const auto& ns : split_list(sec_n))
            rows.push_back(delta_report(std::stoull(rs), std::stoull(ms), std::stoull(ns)));
      OutputSink sink{sec_out, {}};
      emit_security_report(sink.stream(), rows, report_format_from_name(sec_format));
      return 0;
    }

    if (region->parsed()) {
      RegionMode mode;
      if (rg_mode == "area")
        mode = RegionMode::ContinuousArea;
      else if (rg_mode == "grid")
        mode = RegionMode::IntegerGrid;
      else
        throw std::invalid_argument("--mode must be area or grid");
      RegionReport rep = region_fraction(rg_n, rg_resolution, mode);
      OutputSink sink{rg_out, {}};
      emit_region_report(sink.stream(), rep, report_format_from_name(rg_format));
      return 0;
    }

    if (noise->parsed()) {
      std::vector<NoiseReport> rows;
      for (const auto& ps : split_list(ns_plist)) {
        double p = std::stod(ps);
        if (ns_mode == "mc") {
          SessionConfig cfg;
          cfg.n_code = ns_code;
          rows.push_back(mc_uncorrectable_rate(cfg.make_code(), p, ns_trials, ns_seed, ns_jobs));
        } else if (ns_mode == "end-to-end") {
          SessionConfig cfg;
          cfg.m = ns_m;
          cfg.n_code = ns_code;
          NoiseConfig nc{p, ns_trials, ns_seed, ns_jobs};
          rows.push_back(end_to_end_noise_experiment(cfg, nc));
        } else {
          throw std::invalid_argument("--mode must be mc or end-to-end");
        }
      }
      OutputSink sink{ns_out, {}};
      emit_noise_report(sink.stream(), rows, report_format_from_name(ns_format));
      return 0;
    }

    if (serve->parsed()) {
      SessionConfig cfg;
      cfg.m = sv_m;
      cfg.n_code = sv_code;
      cfg.seed = sv_seed;
      cfg.noise_p = sv_noise;
      cfg.transport = "tcp";
      cfg.syndrome = SessionConfig::from_json({{"syndrome", sv_syndrome}}).syndrome;
      TcpListener listener(sv_host, sv_port);
      std::cout << "listening on " << sv_host << ':' << listener.port() << std::endl;
      auto channel = listener.accept_one();
      Server server(cfg);
      server.run_session(*channel);
      std::cout << "session complete" << std::endl;
      return 0;
    }

    if (connect->parsed()) {
      SessionConfig cfg;
      cfg.m = cn_m;
      cfg.n_code = cn_code;
      cfg.seed = cn_seed;
      cfg.transport = "tcp";
      auto [host, port] = parse_address(cn_address);
      LogicalCircuit circuit = LogicalCircuit::parse_file(cn_circuit);
      std::vector<Amplitudes> inputs = parse_inputs(cn_inputs);
      circuit.wires = std::max(circuit.wires, inputs.size());
      auto channel = tcp_connect(host, port);
      Client client(cfg);
      SessionResult result = client.run_session(circuit, inputs, *channel);
      print_session_result(std::cout, result, circuit, inputs, cfg);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
