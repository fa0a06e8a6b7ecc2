#pragma once

#include <iosfwd>
#include <string>

#include "stabreg/harness.hpp"
#include "stabreg/report.hpp"
#include "stabreg/trace.hpp"

namespace stabreg {

// JSON documents are schema-versioned and byte-deterministic for a fixed
// input (keys ordered, shortest round-trip doubles, no timestamps).
inline constexpr const char* kReportSchema = "stabreg-report/1";

std::string to_json_string(const CheckReport& report);
std::string to_json_string(const LemmaReport& report);
std::string to_json_string(const StabilityEstimate& estimate);
std::string to_json_string(const ScalingReport& report);

void write_curve_csv(std::ostream& out, const std::vector<double>& x,
                     const std::vector<double>& y);

}  // namespace stabreg
