// Right-hand side assembly for the contour equations and the adaptive
// time stepper.
//
// The PV integral is evaluated in flux form: the integrand is the x-derivative
// of arctan((f(x) +/- f(x-y)) / y), so the velocity is computed as the grid
// derivative of the quadrature of the arctan kernel.  This makes the discrete
// mass exactly conserved in periodic mode and steady states exactly steady.
// Near a touching point (f = 0) the flux quadrature loses the pointwise
// cancellation between the two kernel branches, so points with
// f <= h_floor = h_floor_factor * dx * max|f_x| are blended toward a direct
// kernel-sum evaluation that cancels exactly at f = 0; the blend's mass defect
// is spread uniformly so conservation survives to rounding.  h_floor_factor=0
// disables the blend (fully regularized near-touch treatment).
#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "muskat/diagnostics_record.hpp"
#include "muskat/profile.hpp"

namespace muskat {

struct RhsOptions {
    double h_floor_factor = 10.0;
    int threads = 1;
};

/// Half-plane contour velocity (difference + reflection branches).
std::vector<double> rhs_halfplane(const InterfaceProfile& p,
                                  const RhsOptions& opts = {});
/// Whole-plane contour velocity (difference branch only).
std::vector<double> rhs_plane(const InterfaceProfile& p,
                              const RhsOptions& opts = {});

struct StepControl {
    double rtol = 1e-6;
    double atol = 1e-9;
    double dt_init = 1e-4;
    double dt_min = 1e-9;
    double dt_max = 0.05;
    double cfl_cap = 0.9;  // dt <= cfl_cap * dx

    void validate() const {
        if (!(dt_min > 0.0 && dt_min <= dt_init && dt_init <= dt_max))
            throw std::invalid_argument("StepControl: need 0 < dt_min <= dt_init <= dt_max");
        if (!(rtol > 0.0 && atol > 0.0))
            throw std::invalid_argument("StepControl: tolerances must be > 0");
        if (!(cfl_cap > 0.0 && cfl_cap <= 1.0))
            throw std::invalid_argument("StepControl: cfl_cap must be in (0, 1]");
    }
};

struct SimState {
    double t = 0.0;
    InterfaceProfile profile;
    double dt_last = 0.0;
    long step_count = 0;
    long reject_count = 0;
};

/// Thrown when the controller cannot accept a step at dt_min.  Carries the
/// last accepted state; in singularity runs this is the expected terminal
/// event, not a failure.
class BlowupSuspected : public std::runtime_error {
  public:
    BlowupSuspected(SimState s, std::string why)
        : std::runtime_error(std::move(why)), state(std::move(s)) {}
    SimState state;
};

struct StepResult {
    SimState state;
    double error_ratio = 0.0;  // step-doubling estimate / tolerance, accepted step
};

/// One accepted RK4 step with step-doubling error control.  Half-plane mode
/// clamps undershoots at 0 when they are within atol; larger undershoots
/// reject the step.
StepResult step(const SimState& state, const StepControl& control,
                const RhsOptions& opts = {});

enum class Termination { Completed, BlowupSuspected_, WallClock };

const char* termination_name(Termination t);

struct RunParams {
    StepControl control;
    RhsOptions rhs;
    double t_end = 1.0;
    int record_every = 10;
    double gamma_prime = 0.5;
    std::vector<double> snapshot_times;
    double max_wall_seconds = 0.0;  // 0 = unlimited
};

struct RunResult {
    std::vector<DiagnosticsRecord> records;
    std::vector<std::pair<double, InterfaceProfile>> snapshots;
    Termination termination = Termination::Completed;
    SimState final_state;
};

/// Advance from t = 0 to t_end or termination, recording diagnostics every
/// record_every accepted steps (plus the initial and final states).
RunResult run(const InterfaceProfile& initial, const RunParams& params);

/// Diagnostics of a raw state (used by run(); exposed for the CLI).
DiagnosticsRecord make_record(const InterfaceProfile& p, double t,
                              double gamma_prime, int threads);

}  // namespace muskat
