// File formats of a simulation run: snapshot JSON, the diagnostics CSV, and
// summary.json.  Field names and the CSV header are part of the interface.
#pragma once

#include <string>
#include <vector>

#include "muskat/diagnostics_record.hpp"
#include "muskat/profile.hpp"

namespace muskat {

inline constexpr const char* kDiagnosticsHeader =
    "t,max_slope,l1_mass,l2_energy,lambda_dissipation,ln_dissipation,"
    "min_height,holder_fxx,blowup_accumulator";

std::string snapshot_to_json(double t, const InterfaceProfile& p);
/// Round-trips bit-identically on the samples.
std::pair<double, InterfaceProfile> snapshot_from_json(const std::string& text);

std::string diagnostics_to_csv(const std::vector<DiagnosticsRecord>& records);
/// Parse errors carry the 1-based row number.
std::vector<DiagnosticsRecord> diagnostics_from_csv(const std::string& text);

struct RunSummary {
    int schema_version = 1;
    std::string termination;
    double t_final = 0.0;
    long records_count = 0;
    bool max_slope_monotone = false;
    double mass_drift = 0.0;
    double blowup_accumulator_final = 0.0;
};

std::string summary_to_json(const RunSummary& s);
RunSummary summary_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace muskat
