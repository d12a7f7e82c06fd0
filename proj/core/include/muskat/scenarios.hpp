// Initial-data constructors: the periodic touching bump, a localized dip on a
// constant far field, and whole-plane graphs for plane-mode tests.
#pragma once

#include <string>

#include "muskat/profile.hpp"

namespace muskat {

enum class ScenarioKind {
    PeriodicTouchingBump,
    LocalizedBumpOnConstant,
    PlaneGraph,
};

enum class PlaneShape { Sine, Bump };

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::PeriodicTouchingBump;
    double epsilon = 0.05;    // amplitude (touching bump, localized dip)
    double nu = 1.0;          // period
    double half_width = 8.0;  // X
    double psi_inf = 0.0;     // far field
    double width = 1.0;       // support half-width of the localized dip
    double amplitude = 0.1;   // plane graphs
    PlaneShape shape = PlaneShape::Sine;
};

/// psi(x) = eps (1 - cos(2 pi x / nu)) / 2: touches 0 at x = 0 exactly, max
/// slope eps pi / nu.  Rejects eps outside (0, 3 nu / (10 pi)] (slope bound).
InterfaceProfile periodic_touching_bump(double epsilon, double nu, int n);

/// Constant far field psi_inf with a smooth compactly supported dip of depth
/// epsilon centered at 0 (support |x| < width <= X/2).  Touches the bottom
/// exactly when epsilon = psi_inf.  Rejects slopes above 3/10.
InterfaceProfile localized_bump_on_constant(double psi_inf, double epsilon,
                                            double width, double half_width,
                                            int n);

struct PlaneGraphResult {
    InterfaceProfile profile;
    bool slope_warning = false;  // set when max slope exceeds 1
};

/// Whole-plane graph: a sine over one period, or a compact bump over
/// [-X, X] added to psi_inf.  A slope above 1 only sets the warning flag.
PlaneGraphResult plane_graph(PlaneShape shape, double amplitude, int n,
                             double extent, double psi_inf = 0.0);

InterfaceProfile build_scenario(const ScenarioSpec& spec, int n,
                                bool* slope_warning = nullptr);

std::string scenario_kind_name(ScenarioKind k);

}  // namespace muskat
