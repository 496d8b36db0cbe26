// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args, bool merge_stderr = true) {
  std::string cmd = std::string(QHE_CLI_PATH) + " " + args;
  if (merge_stderr) cmd += " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  RunResult result;
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) result.output.append(buf.data(), got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

double field_after(const std::string& text, const std::string& label) {
  auto pos = text.find(label);
  if (pos == std::string::npos) throw std::runtime_error("label not found: " + label);
  return std::stod(text.substr(pos + label.size()));
}

TEST(Cli, RoundtripReportsPerfectFidelity) {
  RunResult r = run("roundtrip --seed 7 --m 1 --code steane");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("fidelity 1.000000"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("swap_count"), std::string::npos);
}

TEST(Cli, RoundtripIsByteDeterministic) {
  RunResult a = run("roundtrip --seed 12 --m 2 --code identity");
  RunResult b = run("roundtrip --seed 12 --m 2 --code identity");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.output, b.output);
  RunResult c = run("roundtrip --seed 13 --m 2 --code identity");
  EXPECT_EQ(c.exit_code, 0);
}

TEST(Cli, SecurityTableMatchesFormula) {
  RunResult r = run("security --r 0 --m 1 --n 7");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("r,m,n,delta_proposed,delta_previous_exact,delta_previous_stirling"),
            std::string::npos)
      << r.output;
  EXPECT_NE(r.output.find("0.0883883"), std::string::npos) << r.output;
}

TEST(Cli, SecuritySweepEmitsCartesianRows) {
  RunResult r = run("security --r 0,2 --m 1 --n 1,7");
  EXPECT_EQ(r.exit_code, 0);
  int lines = 0;
  for (char ch : r.output)
    if (ch == '\n') ++lines;
  EXPECT_EQ(lines, 5);  // header + 4 rows
}

TEST(Cli, SecurityJsonFormat) {
  RunResult r = run("security --r 0 --m 1 --n 7 --format json");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("\"delta_proposed\""), std::string::npos) << r.output;
}

TEST(Cli, RegionMatchesAnchorValue) {
  RunResult r = run("region --N 5");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("N,resolution,fraction"), std::string::npos) << r.output;
  std::string row = r.output.substr(r.output.find('\n') + 1);
  double fraction = std::stod(row.substr(row.rfind(',') + 1));
  EXPECT_NEAR(fraction, 0.6617, 1e-3);
}

TEST(Cli, NoiseSweepDeterministicAcrossJobs) {
  RunResult a = run("noise-sweep --p-list 0.01,0.05 --trials 3000 --seed 5 --jobs 1");
  RunResult b = run("noise-sweep --p-list 0.01,0.05 --trials 3000 --seed 5 --jobs 3");
  EXPECT_EQ(a.exit_code, 0) << a.output;
  EXPECT_EQ(a.output, b.output);
  EXPECT_NE(a.output.find("p,trials,uncorrectable_rate,decoder_failure_rate,closed_form_pl,stderr"),
            std::string::npos)
      << a.output;
}

TEST(Cli, EvaluateRunsFullSession) {
  std::string circuit = write_temp("qhe_cli_eval.circuit", "H 0\nT 0\nS 0\n");
  RunResult r = run("evaluate --circuit " + circuit + " --inputs 0 --seed 5");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NEAR(field_after(r.output, "fidelity_vs_plain "), 1.0, 1e-6);
  EXPECT_NE(r.output.find("t_rounds 1"), std::string::npos) << r.output;
}

TEST(Cli, EvaluateIsByteDeterministic) {
  std::string circuit = write_temp("qhe_cli_eval2.circuit", "H 0\nCNOT 0 1\nT 1\n");
  std::string args = "evaluate --circuit " + circuit + " --inputs 0,0 --seed 9";
  RunResult a = run(args);
  RunResult b = run(args);
  EXPECT_EQ(a.exit_code, 0) << a.output;
  EXPECT_EQ(a.output, b.output);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("roundtrip").exit_code, 2);                       // missing --seed
  EXPECT_EQ(run("no-such-command").exit_code, 2);                 // unknown subcommand
  EXPECT_EQ(run("evaluate --seed 1").exit_code, 2);               // missing --circuit
  EXPECT_EQ(run("").exit_code, 2);                                // missing subcommand
  EXPECT_EQ(run("region --N 5 --mode hexagonal").exit_code, 2);   // bad enum value
  RunResult r = run("roundtrip");
  EXPECT_NE(r.output.find("--seed"), std::string::npos) << r.output;  // synopsis names the flag
}

TEST(Cli, RuntimeErrorsExitOne) {
  EXPECT_EQ(run("evaluate --circuit /nonexistent.circuit --seed 1").exit_code, 1);
  std::string bad = write_temp("qhe_cli_bad.circuit", "WOBBLE 0\n");
  EXPECT_EQ(run("evaluate --circuit " + bad + " --seed 1").exit_code, 1);
}

TEST(Cli, HelpExitsZeroEverywhere) {
  EXPECT_EQ(run("--help").exit_code, 0);
  for (const char* sub : {"roundtrip", "evaluate", "security", "region", "noise-sweep", "serve",
                          "connect"}) {
    RunResult r = run(std::string(sub) + " --help");
    EXPECT_EQ(r.exit_code, 0) << sub;
    EXPECT_NE(r.output.find("--"), std::string::npos);
  }
}

TEST(Cli, OutFileWritesReport) {
  std::string path = "/tmp/qhe_cli_security_out.csv";
  std::remove(path.c_str());
  RunResult r = run("security --r 0 --m 2 --n 3 --out " + path);
  EXPECT_EQ(r.exit_code, 0);
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "r,m,n,delta_proposed,delta_previous_exact,delta_previous_stirling");
}

}  // namespace
