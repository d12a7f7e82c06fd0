// Conserved/monotone-quantity monitors and trajectory checks.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "muskat/diagnostics_record.hpp"
#include "muskat/profile.hpp"

namespace muskat {

/// Double trapezoid sum of lambda(f(x), f(y), x - y) over the grid; the
/// second variable is truncated to one period (wrapped distance) in periodic
/// mode and to the grid in asymptotic mode.  Half-plane only.
double lambda_dissipation(const InterfaceProfile& p, int threads = 1);

/// Double sum of ln(1 + ((f(x)-f(y))/(x-y))^2).  Periodic mode sums the
/// window of +-window_periods image cells and adds the analytic O(1/c^2)
/// remainder; asymptotic mode adds the exact constant-far-field tail.
/// Whole-plane (the identity it mirrors holds for the plane equation).
double ln_dissipation_plane(const InterfaceProfile& p, int threads = 1,
                            int window_periods = 16);

enum class MonotoneKey { MaxSlope, L2Energy };

struct CheckReport {
    bool applicable = true;
    bool pass = false;
    double worst = 0.0;        // largest violation (key-dependent meaning)
    int worst_index = -1;      // record index of the violating pair/row
    std::string detail;
};

/// Largest positive increment of the chosen key across adjacent records.
/// For max_slope the check applies only below the threshold slope (3/10 on
/// the half-plane, 1 on the plane) at the first record.
CheckReport check_monotone(const std::vector<DiagnosticsRecord>& records,
                           MonotoneKey key, double tol, bool half_plane);

/// (E(t2)-E(t1))/(t2-t1) <= -(1-slack) min(lam(t1), lam(t2)) + tol for each
/// adjacent pair.  Requires half-plane records carrying lambda_dissipation.
CheckReport check_energy_inequality(const std::vector<DiagnosticsRecord>& records,
                                    double tol, double slack = 0.1);

/// max_t |l1_mass(t) - l1_mass(0)| <= tol.
CheckReport check_mass(const std::vector<DiagnosticsRecord>& records, double tol);

/// Upper bound 20 ||psi||_{L2}^2 / L^6 on the singular time, valid for
/// periodic half-plane data with min psi = 0, max slope <= 3/10 and
/// L = ||psi||_{L1} in (0, 3/40).  nullopt when not applicable.
std::optional<double> singularity_time_bound(const InterfaceProfile& psi);

}  // namespace muskat
