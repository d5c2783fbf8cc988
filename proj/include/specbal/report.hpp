#pragma once

// Solve-report JSON. Reports embed the full configuration, seed and library
// version so every number in a results table can be reproduced from the
// report file alone. Serialization is deterministic: identical reports
// produce identical bytes.

#include <string>

#include "specbal/full_coloring.hpp"

namespace specbal {

inline constexpr const char* kLibraryVersion = "0.1.0";

std::string report_to_json(const SolveReport& report);
void write_report(const SolveReport& report, const std::string& path);

struct ParsedReport {
    SignVector signs;
    double discrepancy = 0.0;
    std::uint64_t seed = 0;
};

ParsedReport read_report(const std::string& path);

}  // namespace specbal
