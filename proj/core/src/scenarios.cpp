#include "muskat/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace muskat {

namespace {

// Smooth compactly supported bump: exp(1 - 1/(1 - u^2)) on |u| < 1, else 0.
// b(0) = 1 exactly.
double compact_bump(double u) {
    const double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u2));
}

// max |b'(u)|, evaluated once by a fine scan (the extremum has no closed form).
double compact_bump_max_slope() {
    static const double value = [] {
        double best = 0.0;
        const int n = 200000;
        for (int i = 1; i < n; ++i) {
            const double u = static_cast<double>(i) / n;
            const double du = 1e-6;
            const double d = (compact_bump(u + du) - compact_bump(u - du)) / (2.0 * du);
            best = std::max(best, std::abs(d));
        }
        return best;
    }();
    return value;
}

}  // namespace

InterfaceProfile periodic_touching_bump(double epsilon, double nu, int n) {
    if (!(nu > 0.0)) throw std::invalid_argument("periodic_touching_bump: nu <= 0");
    const double eps_max = 3.0 * nu / (10.0 * M_PI);
    if (!(epsilon > 0.0 && epsilon <= eps_max))
        throw std::invalid_argument(
            "periodic_touching_bump: epsilon must lie in (0, 3 nu/(10 pi)] so the max "
            "slope eps*pi/nu stays within the 3/10 bound");
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) {
        const double x = nu * i / n;
        s[i] = epsilon * (1.0 - std::cos(2.0 * M_PI * x / nu)) / 2.0;
    }
    return InterfaceProfile(DomainSpec::periodic(PlaneKind::HalfPlane, nu),
                            std::move(s));
}

InterfaceProfile localized_bump_on_constant(double psi_inf, double epsilon,
                                            double width, double half_width,
                                            int n) {
    if (!(psi_inf > 0.0))
        throw std::invalid_argument("localized_bump_on_constant: psi_inf must be > 0");
    if (!(epsilon > 0.0 && epsilon <= psi_inf))
        throw std::invalid_argument(
            "localized_bump_on_constant: need 0 < epsilon <= psi_inf");
    if (!(width > 0.0 && width <= 0.5 * half_width))
        throw std::invalid_argument(
            "localized_bump_on_constant: support must fit inside [-X/2, X/2]");
    const double slope = epsilon / width * compact_bump_max_slope();
    if (slope > 0.3 + 1e-12)
        throw std::invalid_argument(
            "localized_bump_on_constant: dip slope " + std::to_string(slope) +
            " exceeds the 3/10 bound; widen the support");
    std::vector<double> s(n);
    const double dx = 2.0 * half_width / n;
    for (int i = 0; i < n; ++i) {
        const double x = -half_width + i * dx;
        s[i] = psi_inf - epsilon * compact_bump(x / width);
    }
    return InterfaceProfile(
        DomainSpec::asymptotic(PlaneKind::HalfPlane, psi_inf, half_width),
        std::move(s));
}

PlaneGraphResult plane_graph(PlaneShape shape, double amplitude, int n,
                             double extent, double psi_inf) {
    if (!(extent > 0.0)) throw std::invalid_argument("plane_graph: extent <= 0");
    double slope = 0.0;
    if (shape == PlaneShape::Sine) {
        std::vector<double> s(n);
        for (int i = 0; i < n; ++i) {
            const double x = extent * i / n;
            s[i] = psi_inf + amplitude * std::sin(2.0 * M_PI * x / extent);
        }
        slope = std::abs(amplitude) * 2.0 * M_PI / extent;
        PlaneGraphResult r{
            InterfaceProfile(DomainSpec::periodic(PlaneKind::WholePlane, extent),
                             std::move(s)),
            slope > 1.0};
        return r;
    }
    const double half = 0.5 * extent;
    const double width = 0.4 * half;
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) {
        const double x = -half + extent * i / n;
        s[i] = psi_inf + amplitude * compact_bump(x / width);
    }
    slope = std::abs(amplitude) / width * compact_bump_max_slope();
    return PlaneGraphResult{
        InterfaceProfile(DomainSpec::asymptotic(PlaneKind::WholePlane, psi_inf, half),
                         std::move(s)),
        slope > 1.0};
}

InterfaceProfile build_scenario(const ScenarioSpec& spec, int n,
                                bool* slope_warning) {
    if (slope_warning) *slope_warning = false;
    switch (spec.kind) {
        case ScenarioKind::PeriodicTouchingBump:
            return periodic_touching_bump(spec.epsilon, spec.nu, n);
        case ScenarioKind::LocalizedBumpOnConstant:
            return localized_bump_on_constant(spec.psi_inf, spec.epsilon,
                                              spec.width, spec.half_width, n);
        case ScenarioKind::PlaneGraph: {
            const double extent = spec.shape == PlaneShape::Sine
                                      ? spec.nu
                                      : 2.0 * spec.half_width;
            PlaneGraphResult r =
                plane_graph(spec.shape, spec.amplitude, n, extent, spec.psi_inf);
            if (slope_warning) *slope_warning = r.slope_warning;
            return r.profile;
        }
    }
    throw std::logic_error("build_scenario: unknown kind");
}

std::string scenario_kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::PeriodicTouchingBump: return "periodic_touching_bump";
        case ScenarioKind::LocalizedBumpOnConstant: return "localized_bump_on_constant";
        case ScenarioKind::PlaneGraph: return "plane_graph";
    }
    return "unknown";
}

}  // namespace muskat
