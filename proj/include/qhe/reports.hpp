// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qhe/noise.hpp"
#include "qhe/security.hpp"

namespace qhe {

enum class ReportFormat { Csv, Json };

ReportFormat report_format_from_name(const std::string& name);

// Floating-point values in CSV reports carry 7 significant digits.
std::string format_g7(double v);

void emit_security_report(std::ostream& os, const std::vector<DeltaReport>& rows,
                          ReportFormat format);
void emit_region_report(std::ostream& os, const RegionReport& report, ReportFormat format);
void emit_noise_report(std::ostream& os, const std::vector<NoiseReport>& rows,
                       ReportFormat format);

}  // namespace qhe
