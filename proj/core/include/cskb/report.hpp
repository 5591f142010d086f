#pragma once

#include <ostream>
#include <span>
#include <string>

#include "cskb/metrics.hpp"

namespace cskb {

inline constexpr std::string_view kReportCsvHeader = "target,category,n,measure,n_pos,n_neg,n_neutral,o_pos,o_neg";

// One row per (target with statements, measure). Percentages carry 4 decimals.
void write_report_csv(std::ostream& os, std::span<const TargetReport> reports);

// Fixed-point rendering used by every serialized percentage.
std::string format_fixed(double value, int decimals = 4);

// Pretty-printed JSON with sorted keys; numbers rounded to 6 decimals.
std::string summary_to_json(const AuditSummary& summary);

}  // namespace cskb
