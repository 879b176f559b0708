// Result serialization: canonical CSV, JSON with the run manifest, and a
// self-contained SVG line plot of the BER curves.
#pragma once

#include <string>
#include <vector>

#include "mimosic/harness.hpp"

namespace mimosic {

struct RunManifest {
  SweepConfig config;
  std::string tool_version;
  std::string timestamp;  // ISO-8601 UTC
  std::vector<std::string> output_paths;
  std::vector<std::string> warnings;
};

// Shortest round-trip decimal form of a double ("0", "0.00125", ...).
std::string format_double(double v);

// Schema: detector,snr_db,trials,total_bits,bit_errors,ber,ci_low,ci_high
// one row per (detector, SNR point), LF-terminated.
std::string curves_to_csv(const std::vector<BerCurve>& curves);
std::vector<BerCurve> curves_from_csv(const std::string& csv);

std::string curves_to_json(const std::vector<BerCurve>& curves,
                           const RunManifest& manifest);

std::string curves_to_svg(const std::vector<BerCurve>& curves);

void write_file(const std::string& path, const std::string& contents);

}  // namespace mimosic
