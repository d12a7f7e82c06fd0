#pragma once

#include <stdexcept>

namespace muskat {

enum class PlaneKind { HalfPlane, WholePlane };
enum class BoundaryKind { Periodic, Asymptotic };

/// Geometry descriptor: which half of the plane the fluid occupies and how the
/// horizontal direction is closed off (one periodic cell, or a truncated line
/// with a constant far field).
struct DomainSpec {
    PlaneKind plane = PlaneKind::HalfPlane;
    BoundaryKind boundary = BoundaryKind::Periodic;
    double period = 1.0;      // nu, periodic mode
    double psi_inf = 0.0;     // far-field height, asymptotic mode
    double half_width = 0.0;  // X, asymptotic mode

    static DomainSpec periodic(PlaneKind plane, double nu) {
        if (!(nu > 0.0)) throw std::invalid_argument("DomainSpec: period must be > 0");
        DomainSpec d;
        d.plane = plane;
        d.boundary = BoundaryKind::Periodic;
        d.period = nu;
        return d;
    }

    static DomainSpec asymptotic(PlaneKind plane, double psi_inf, double half_width) {
        if (!(half_width > 0.0))
            throw std::invalid_argument("DomainSpec: half-width must be > 0");
        if (plane == PlaneKind::HalfPlane && !(psi_inf >= 0.0))
            throw std::invalid_argument("DomainSpec: half-plane far field must be >= 0");
        DomainSpec d;
        d.plane = plane;
        d.boundary = BoundaryKind::Asymptotic;
        d.psi_inf = psi_inf;
        d.half_width = half_width;
        return d;
    }

    bool periodic_mode() const { return boundary == BoundaryKind::Periodic; }
    bool half_plane() const { return plane == PlaneKind::HalfPlane; }
    /// Total grid extent (nu or 2X).
    double extent() const {
        return periodic_mode() ? period : 2.0 * half_width;
    }
    /// Left edge of the grid (0 or -X).
    double origin() const { return periodic_mode() ? 0.0 : -half_width; }
};

}  // namespace muskat
