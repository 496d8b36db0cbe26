// SPDX-License-Identifier: Apache-2.0
#include "qhe/reports.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <ostream>
#include <stdexcept>

namespace qhe {

ReportFormat report_format_from_name(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format: " + name);
}

std::string format_g7(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.7g", v);
  return buf;
}

void emit_security_report(std::ostream& os, const std::vector<DeltaReport>& rows,
                          ReportFormat format) {
  if (format == ReportFormat::Csv) {
    os << "r,m,n,delta_proposed,delta_previous_exact,delta_previous_stirling\n";
    for (const auto& row : rows) {
      os << row.params.r << ',' << row.params.m << ',' << row.params.n << ','
         << format_g7(row.delta_proposed) << ',' << format_g7(row.delta_previous_exact) << ','
         << format_g7(row.delta_previous_stirling) << '\n';
    }
    return;
  }
  nlohmann::json j = nlohmann::json::array();
  for (const auto& row : rows) {
    j.push_back({{"r", row.params.r},
                 {"m", row.params.m},
                 {"n", row.params.n},
                 {"delta_proposed", row.delta_proposed},
                 {"delta_previous_exact", row.delta_previous_exact},
                 {"delta_previous_stirling", row.delta_previous_stirling},
                 {"log2_key_count_proposed", row.log2_key_count_proposed},
                 {"log2_key_count_previous", row.log2_key_count_previous}});
  }
  os << j.dump(2) << '\n';
}

void emit_region_report(std::ostream& os, const RegionReport& report, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    os << "N,resolution,fraction\n";
    os << format_g7(report.n_max) << ',' << format_g7(report.resolution) << ','
       << format_g7(report.fraction) << '\n';
    return;
  }
  nlohmann::json j = {{"N", report.n_max},
                      {"resolution", report.resolution},
                      {"fraction", report.fraction}};
  os << j.dump(2) << '\n';
}

void emit_noise_report(std::ostream& os, const std::vector<NoiseReport>& rows,
                       ReportFormat format) {
  if (format == ReportFormat::Csv) {
    os << "p,trials,uncorrectable_rate,decoder_failure_rate,closed_form_pl,stderr\n";
    for (const auto& row : rows) {
      os << format_g7(row.p) << ',' << row.trials << ',' << format_g7(row.uncorrectable_rate)
         << ',' << format_g7(row.decoder_failure_rate) << ',' << format_g7(row.closed_form_pl)
         << ',' << format_g7(row.standard_error) << '\n';
    }
    return;
  }
  nlohmann::json j = nlohmann::json::array();
  for (const auto& row : rows) {
    j.push_back({{"p", row.p},
                 {"trials", row.trials},
                 {"uncorrectable_rate", row.uncorrectable_rate},
                 {"decoder_failure_rate", row.decoder_failure_rate},
                 {"closed_form_pl", row.closed_form_pl},
                 {"stderr", row.standard_error}});
  }
  os << j.dump(2) << '\n';
}

}  // namespace qhe
