#pragma once

#include <optional>

namespace muskat {

/// Per-snapshot monitors.  Optional fields are domain-dependent: the lambda
/// dissipation bound applies on the half-plane, the log dissipation identity
/// on the whole plane.
struct DiagnosticsRecord {
    double t = 0.0;
    double max_slope = 0.0;
    double l1_mass = 0.0;
    double l2_energy = 0.0;
    std::optional<double> lambda_dissipation;
    std::optional<double> ln_dissipation;
    double min_height = 0.0;
    double holder_fxx = 0.0;
    double blowup_accumulator = 0.0;
};

}  // namespace muskat
